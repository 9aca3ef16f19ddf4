"""Local maximum function and Wiener amalgam norms for samples on a uniform 1-D grid."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter1d

from .errors import BadParams, WidthUnresolvable

# a demo grid must put at least this many samples across the indicator
MIN_SAMPLES_PER_WIDTH = 100


@dataclass(frozen=True, eq=False)
class SampledFunction:
    origin: float
    step: float
    values: np.ndarray

    def __post_init__(self):
        if not self.step > 0:
            raise BadParams("grid step must be positive")
        if np.asarray(self.values).ndim != 1 or len(self.values) < 1:
            raise BadParams("need at least one sample")

    @property
    def count(self) -> int:
        return len(self.values)

    @property
    def grid(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.count)


def sample(f, origin: float, step: float, count: int) -> SampledFunction:
    x = origin + step * np.arange(count)
    return SampledFunction(origin, step, np.asarray(f(x)))


def indicator(a: float, b: float, origin: float, step: float, count: int) -> SampledFunction:
    """Samples of 1_[a, b) at the cell left endpoints, counted with integer arithmetic on the cell index."""
    lo = math.ceil((a - origin) / step - 1e-9)
    hi = math.ceil((b - origin) / step - 1e-9)
    k = np.arange(count)
    return SampledFunction(origin, step, ((k >= lo) & (k < hi)).astype(float))


def _half_width(radius: float, step: float) -> int:
    return int(math.floor(radius / step + 1e-9))


def local_max(f: SampledFunction, radius: float) -> SampledFunction:
    """Sliding maximum of |f| over [x - radius, x + radius] intersected with the grid."""
    if radius < 0:
        raise BadParams("radius must be nonnegative")
    k = _half_width(radius, f.step)
    a = np.abs(np.asarray(f.values))
    if k == 0:
        return SampledFunction(f.origin, f.step, a)
    out = maximum_filter1d(a, size=2 * k + 1, mode="constant", cval=0.0)
    return SampledFunction(f.origin, f.step, out)


def lp_norm(f: SampledFunction, p) -> float:
    a = np.abs(np.asarray(f.values))
    if p == np.inf or p == "inf":
        return float(a.max())
    if p not in (1, 2):
        raise BadParams("p must be 1, 2 or inf")
    return float((f.step * np.sum(a ** p)) ** (1.0 / p))


def amalgam_norm(f: SampledFunction, radius: float, p) -> float:
    """||f||_{W(L^inf, L^p)} = || local max of |f| ||_p with Riemann weight h."""
    return lp_norm(local_max(f, radius), p)


@dataclass(frozen=True)
class DemoRow:
    width: float
    step: float
    l1: float
    l2: float
    ratio: float
    predicted: float

    def to_json(self) -> dict:
        return {"width": self.width, "step": self.step, "l1": self.l1, "l2": self.l2,
                "ratio": self.ratio, "predicted": self.predicted,
                "relative_error": abs(self.ratio - self.predicted) / self.predicted}


def estimate_violation_demo(widths, samples_per_width: int = MIN_SAMPLES_PER_WIDTH) -> list[DemoRow]:
    """Ratios ||f||_2 / ||f||_1 for indicators of shrinking width w, sampled with h = w / samples_per_width.

    The ratio is w^(-1/2), so no constant bounds ||f||_2 by ||f||_1.
    """
    ws = [float(w) for w in widths]
    if not ws:
        raise BadParams("no widths given")
    if samples_per_width < MIN_SAMPLES_PER_WIDTH:
        raise WidthUnresolvable(f"need at least {MIN_SAMPLES_PER_WIDTH} samples per width")
    rows = []
    for w in ws:
        if not w > 0 or not math.isfinite(w):
            raise WidthUnresolvable(f"width {w!r} cannot be resolved", width=w)
        h = w / samples_per_width
        # support [0, w) with one empty cell on each side
        f = indicator(0.0, w, -h, h, samples_per_width + 2)
        if int(np.count_nonzero(f.values)) < MIN_SAMPLES_PER_WIDTH:
            raise WidthUnresolvable(f"width {w!r} covers too few grid cells", width=w)
        l1, l2 = lp_norm(f, 1), lp_norm(f, 2)
        rows.append(DemoRow(w, h, l1, l2, l2 / l1, w ** -0.5))
    return rows
