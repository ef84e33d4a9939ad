"""Monthly OHLC series types, validation, and log-ratio components.

Prices are stored in double precision. Log components are always computed
from level ratios (``log(h / l)``), never from differenced logs, to avoid
cancellation on near-flat bars.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    EnvelopeViolation,
    MonthGap,
    NonMonotonicDates,
    NonPositivePrice,
    ValidationError,
)

_MONTH_RE = re.compile(r"(\d{4})-(\d{2})")


@dataclass(frozen=True, order=True)
class Month:
    """Calendar month, ordered by (year, month)."""

    year: int
    month: int

    def __post_init__(self) -> None:
        if not 1 <= self.month <= 12:
            raise ValueError(f"month must be in 1..12, got {self.month}")

    @classmethod
    def parse(cls, text: str) -> "Month":
        m = _MONTH_RE.fullmatch(text.strip())
        if m is None:
            raise ValueError(f"expected YYYY-MM, got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def next(self) -> "Month":
        if self.month == 12:
            return Month(self.year + 1, 1)
        return Month(self.year, self.month + 1)

    def __sub__(self, other: "Month") -> int:
        """Signed distance in months."""
        return (self.year - other.year) * 12 + (self.month - other.month)

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


def month_range(start: Month, count: int) -> tuple[Month, ...]:
    """`count` consecutive months starting at `start`."""
    out = []
    cur = start
    for _ in range(count):
        out.append(cur)
        cur = cur.next()
    return tuple(out)


@dataclass(frozen=True)
class PriceBar:
    """One month of open/high/low/close price levels.

    Invariants (enforced by :func:`validate_series`, not the constructor):
    all prices positive, ``low <= min(open, close)`` and
    ``high >= max(open, close)``.
    """

    period: Month
    open: float
    high: float
    low: float
    close: float


@dataclass(frozen=True)
class OhlcSeries:
    """Ordered sequence of monthly price bars for a single market."""

    bars: tuple[PriceBar, ...]
    market_id: str = "market"

    def __post_init__(self) -> None:
        object.__setattr__(self, "bars", tuple(self.bars))

    def __len__(self) -> int:
        return len(self.bars)

    def __iter__(self):
        return iter(self.bars)

    @property
    def periods(self) -> tuple[Month, ...]:
        return tuple(b.period for b in self.bars)

    def _column(self, name: str) -> np.ndarray:
        arr = np.array([getattr(b, name) for b in self.bars], dtype=float)
        arr.flags.writeable = False
        return arr

    @property
    def opens(self) -> np.ndarray:
        return self._column("open")

    @property
    def highs(self) -> np.ndarray:
        return self._column("high")

    @property
    def lows(self) -> np.ndarray:
        return self._column("low")

    @property
    def closes(self) -> np.ndarray:
        return self._column("close")


@dataclass(frozen=True)
class LogComponents:
    """Per-bar log range, open-close return, and overnight return.

    ``o[0]`` is NaN: the first bar has no previous close, and the absence
    marker must survive downstream (a fabricated zero would bias the
    jump-aware estimators).
    """

    d: np.ndarray
    c: np.ndarray
    o: np.ndarray

    def __post_init__(self) -> None:
        for arr in (self.d, self.c, self.o):
            arr.flags.writeable = False


@dataclass(frozen=True)
class AnnualizationConfig:
    """Rolling-window length and periods-per-year used by every estimator."""

    window_n: int = 10
    annualization_N: float = 12.0
    delta_t: float = 1.0 / 12.0

    def __post_init__(self) -> None:
        if self.window_n < 2:
            raise ValueError(f"window_n must be >= 2, got {self.window_n}")
        if self.delta_t <= 0:
            raise ValueError("delta_t must be positive")
        if abs(self.annualization_N * self.delta_t - 1.0) > 1e-6:
            raise ValueError(
                "annualization_N must be approximately 1/delta_t "
                f"(got N={self.annualization_N}, delta_t={self.delta_t})"
            )


def validate_series(series: OhlcSeries) -> OhlcSeries:
    """Check all structural invariants; return the series unchanged.

    Raises NonPositivePrice, EnvelopeViolation, NonMonotonicDates or
    MonthGap on the first violation found (in bar order).
    """
    if len(series.bars) == 0:
        raise ValidationError("series has no bars")
    prev_period = None
    for bar in series.bars:
        prices = (bar.open, bar.high, bar.low, bar.close)
        if not all(np.isfinite(p) and p > 0 for p in prices):
            raise NonPositivePrice(f"{bar.period}: prices must be finite and > 0, got {prices}")
        if bar.high < max(bar.open, bar.close) or bar.low > min(bar.open, bar.close):
            raise EnvelopeViolation(
                f"{bar.period}: high/low must bracket open and close "
                f"(O={bar.open}, H={bar.high}, L={bar.low}, C={bar.close})"
            )
        if bar.high < bar.low:
            raise EnvelopeViolation(f"{bar.period}: high {bar.high} below low {bar.low}")
        if prev_period is not None:
            step = bar.period - prev_period
            if step <= 0:
                raise NonMonotonicDates(f"{prev_period} followed by {bar.period}")
            if step > 1:
                raise MonthGap(f"missing month(s) between {prev_period} and {bar.period}")
        prev_period = bar.period
    return series


def log_components(series: OhlcSeries) -> LogComponents:
    """Extract d = ln(H/L), c = ln(C/O), o = ln(O/C_prev) for every bar.

    Output index i depends only on bars i and i-1; the first overnight
    return is NaN (absent), never zero-filled.
    """
    o_, h, l, c = series.opens, series.highs, series.lows, series.closes
    d = np.log(h / l)
    oc = np.log(c / o_)
    overnight = np.full(len(series), np.nan)
    if len(series) > 1:
        overnight[1:] = np.log(o_[1:] / c[:-1])
    return LogComponents(d=d, c=oc, o=overnight)
