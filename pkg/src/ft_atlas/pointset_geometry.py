"""Heisenberg group geometry and separated sets.

Points of the Heisenberg group are written in exponential coordinates
(x1, x2, x3) = exp(x1 X1 + x2 X2 + x3 X3). The quasi-norm is

    ||x|| = ((x1^2 + x2^2)^2 + x3^4)^(1/4)

and d(p, q) = ||p^-1 q||. A set is s-separated when the closed balls of radius
s/2 around its points are pairwise disjoint; for Euclidean space that is
pairwise distance > s.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import BadParams, EmptyCenters

EUCLIDEAN = "euclidean"
HEISENBERG = "heisenberg"

# relative margin under which float ball tests are redone in exact arithmetic
_EXACT_MARGIN = 1e-9


@dataclass(frozen=True)
class HeisPoint:
    x1: object
    x2: object
    x3: object

    def coords(self) -> tuple:
        return (self.x1, self.x2, self.x3)

    def as_float(self) -> np.ndarray:
        return np.array([float(v) for v in self.coords()])


IDENTITY = HeisPoint(0, 0, 0)


def heis_multiply(p: HeisPoint, q: HeisPoint) -> HeisPoint:
    return HeisPoint(p.x1 + q.x1, p.x2 + q.x2, p.x3 + q.x3 + (p.x1 * q.x2 - p.x2 * q.x1) / 2)


def heis_inverse(p: HeisPoint) -> HeisPoint:
    return HeisPoint(-p.x1, -p.x2, -p.x3)


def quasi_norm4(p: HeisPoint):
    """Fourth power of the quasi-norm; exact for rational coordinates."""
    return (p.x1 ** 2 + p.x2 ** 2) ** 2 + p.x3 ** 4


def quasi_norm(p: HeisPoint) -> float:
    return float(quasi_norm4(p)) ** 0.25


def quasi_distance4(p: HeisPoint, q: HeisPoint):
    return quasi_norm4(heis_multiply(heis_inverse(p), q))


def quasi_distance(p: HeisPoint, q: HeisPoint) -> float:
    return float(quasi_distance4(p, q)) ** 0.25


def U(n: int) -> HeisPoint:
    return HeisPoint(n * n, 0, 0)


def V(n: int, ell: int) -> HeisPoint:
    return HeisPoint(n * n, Fraction(ell, n * n), Fraction(ell, 2))


# ---------------------------------------------------------------------------
# point sets


@dataclass(frozen=True, eq=False)
class PointSet:
    space: str
    points: tuple
    dim: int = 3

    def __post_init__(self):
        if self.space not in (EUCLIDEAN, HEISENBERG):
            raise BadParams(f"unknown space {self.space!r}")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def array(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, self.dim))
        return np.array([[float(v) for v in _coords(p)] for p in self.points], dtype=float)

    def subset(self, idx) -> "PointSet":
        return PointSet(self.space, tuple(self.points[i] for i in idx), self.dim)

    def to_json(self) -> dict:
        return {"space": self.space, "dim": self.dim, "points": [[_json_scalar(v) for v in _coords(p)]
                                                                 for p in self.points]}


def _coords(p) -> tuple:
    return p.coords() if isinstance(p, HeisPoint) else tuple(p)


def _json_scalar(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def _exact(v) -> Fraction:
    if isinstance(v, Rational):
        return Fraction(v)
    return Fraction(float(v))


def heisenberg_set(points) -> PointSet:
    return PointSet(HEISENBERG, tuple(p if isinstance(p, HeisPoint) else HeisPoint(*p) for p in points), 3)


def euclidean_set(points, dim: int | None = None) -> PointSet:
    pts = tuple(tuple(p) if np.ndim(p) else (p,) for p in points)
    if dim is None:
        dim = len(pts[0]) if pts else 1
    if any(len(p) != dim for p in pts):
        raise BadParams("points of different dimensions")
    return PointSet(EUCLIDEAN, pts, dim)


def counterexample_set(n_max: int) -> PointSet:
    """{exp(-V_{M,l}) : 1 <= l <= M <= n_max} with exact rational coordinates."""
    if n_max < 1:
        raise BadParams("N_max must be >= 1")
    return heisenberg_set(heis_inverse(V(m, ell)) for m in range(1, n_max + 1) for ell in range(1, m + 1))


def inverse_set(s: PointSet) -> PointSet:
    if s.space != HEISENBERG:
        return PointSet(s.space, tuple(tuple(-v for v in p) for p in s.points), s.dim)
    return heisenberg_set(heis_inverse(p) for p in s.points)


# ---------------------------------------------------------------------------
# distances


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("FT_ATLAS_THREADS", "1")))
    except ValueError:
        return 1


def _dist_block(space: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances d(a_i, b_j) as an len(a) x len(b) array (floats)."""
    if space == EUCLIDEAN:
        diff = b[None, :, :] - a[:, None, :]
        return np.sqrt((diff ** 2).sum(axis=-1))
    return _heis_norm(*_heis_rel(a, b))


def _heis_rel(a: np.ndarray, b: np.ndarray):
    """Coordinates of a_i^-1 b_j."""
    d1 = b[None, :, 0] - a[:, None, 0]
    d2 = b[None, :, 1] - a[:, None, 1]
    d3 = b[None, :, 2] - a[:, None, 2] + (a[:, None, 1] * b[None, :, 0] - a[:, None, 0] * b[None, :, 1]) / 2
    return d1, d2, d3


def _heis_norm(d1, d2, d3):
    return (((d1 ** 2 + d2 ** 2) ** 2) + d3 ** 4) ** 0.25


def pairwise_distances(a: PointSet, b: PointSet | None = None, chunk: int = 512) -> np.ndarray:
    """Distance matrix, computed in row chunks; FT_ATLAS_THREADS caps the worker threads."""
    b = a if b is None else b
    xa, xb = a.array, b.array
    starts = list(range(0, len(xa), chunk))
    if len(starts) <= 1 or _threads() == 1:
        return _dist_block(a.space, xa, xb) if len(xa) else np.zeros((0, len(xb)))
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        blocks = list(pool.map(lambda s: _dist_block(a.space, xa[s:s + chunk], xb), starts))
    return np.vstack(blocks)


def _exact_dist_le(space: str, p, q, r) -> bool:
    """d(p, q) <= r decided in rational arithmetic."""
    r = _exact(r)
    if space == EUCLIDEAN:
        return sum((_exact(x) - _exact(y)) ** 2 for x, y in zip(_coords(p), _coords(q))) <= r * r
    pe = HeisPoint(*(_exact(v) for v in _coords(p)))
    qe = HeisPoint(*(_exact(v) for v in _coords(q)))
    return quasi_distance4(pe, qe) <= r ** 4


def ball_counts(s: PointSet, centers: PointSet, r) -> np.ndarray:
    """#{p in s : d(c, p) <= r} for each center, closed balls, exact near the boundary."""
    d = pairwise_distances(centers, s)
    rf = float(r)
    inside = d <= rf
    near = np.argwhere(np.abs(d - rf) <= _EXACT_MARGIN * max(rf, 1.0))
    for ci, pi in near:
        inside[ci, pi] = _exact_dist_le(s.space, centers.points[ci], s.points[pi], r)
    return inside.sum(axis=1)


# ---------------------------------------------------------------------------
# separation


@dataclass(frozen=True)
class GridSpec:
    """Regular grid of centers: ``steps`` points per axis between ``lower`` and ``upper``."""
    lower: tuple
    upper: tuple
    steps: int

    def centers(self, space: str) -> PointSet:
        if self.steps < 1 or len(self.lower) != len(self.upper):
            raise EmptyCenters("grid spec has no points")
        axes = [np.linspace(lo, hi, self.steps) for lo, hi in zip(self.lower, self.upper)]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))
        if space == HEISENBERG:
            return heisenberg_set([tuple(float(v) for v in row) for row in mesh])
        return euclidean_set([tuple(float(v) for v in row) for row in mesh], len(axes))


@dataclass(frozen=True, eq=False)
class SeparationReport:
    radius: object
    max_ball_occupancy: int
    witness_center: tuple | None
    witness_index: int | None
    separated: dict = field(default_factory=dict)

    def is_separated_at(self, s) -> bool:
        return self.separated[s]

    def to_json(self) -> dict:
        return {
            "radius": _json_scalar(self.radius),
            "max_ball_occupancy": self.max_ball_occupancy,
            "witness_center": [_json_scalar(v) for v in self.witness_center] if self.witness_center else None,
            "witness_index": self.witness_index,
            "separated": {str(k): v for k, v in self.separated.items()},
        }


def separation_scan(s: PointSet, r, centers, query_s=()) -> SeparationReport:
    """Largest closed-ball occupancy over the given centers (lowest index wins ties).

    ``centers`` is a PointSet or a GridSpec; ``query_s`` lists separation radii to test.
    """
    if float(r) <= 0:
        raise BadParams("radius must be positive")
    if isinstance(centers, GridSpec):
        centers = centers.centers(s.space)
    if len(centers) == 0:
        raise EmptyCenters("no centers to scan")
    if centers.space != s.space:
        raise BadParams("centers and points live in different spaces")
    counts = ball_counts(s, centers, r)
    best = int(np.argmax(counts))
    sep = {q: is_separated(s, q) for q in query_s}
    return SeparationReport(r, int(counts[best]), tuple(_coords(centers.points[best])), best, sep)


def _balls_meet_heis(g: np.ndarray, r: float, grid: int = 41, zooms: int = 3) -> np.ndarray:
    """Do the closed r-balls at the identity and at g (rows of g) intersect?

    They meet iff g = u w with ||u||, ||w|| <= r. Rotating and reflecting g to
    (rho, 0, z), z >= 0, and writing u = (a, b, c), this becomes
    max over the lens u = a^2 + b^2 <= r^2, v = (rho - a)^2 + b^2 <= r^2, b <= 0 of
    h(u) + h(v) - |z + b rho / 2| >= 0, with h(t) = (r^4 - t^2)^(1/4).
    """
    rho = np.hypot(g[:, 0], g[:, 1])
    z = np.abs(g[:, 2])
    out = np.zeros(len(g), dtype=bool)
    if len(g) == 0:
        return out
    r4 = r ** 4

    def h(t):
        return np.maximum(r4 - t * t, 0.0) ** 0.25

    def value(t, sfrac):
        # t, sfrac in [0, 1]; broadcast against pairs on axis 0
        a = (rho[:, None, None] - r) + t * (2 * r - rho[:, None, None])
        bmax = np.sqrt(np.maximum(np.minimum(r * r - a * a, r * r - (rho[:, None, None] - a) ** 2), 0.0))
        b = -sfrac * bmax
        u = a * a + b * b
        v = (rho[:, None, None] - a) ** 2 + b * b
        return h(u) + h(v) - np.abs(z[:, None, None] + b * rho[:, None, None] / 2)

    lo_t = np.zeros(len(g))
    lo_s = np.zeros(len(g))
    width = np.ones(len(g))
    best = np.full(len(g), -np.inf)
    for _ in range(zooms + 1):
        steps = np.linspace(0.0, 1.0, grid)
        t = np.clip(lo_t[:, None, None] + width[:, None, None] * steps[None, :, None], 0, 1)
        sf = np.clip(lo_s[:, None, None] + width[:, None, None] * steps[None, None, :], 0, 1)
        vals = value(t, sf)
        flat = vals.reshape(len(g), -1)
        idx = np.argmax(flat, axis=1)
        best = np.maximum(best, flat[np.arange(len(g)), idx])
        ti, si = np.unravel_index(idx, (grid, grid))
        ct = t[np.arange(len(g)), ti, 0]
        cs = sf[np.arange(len(g)), 0, si]
        width = width * 4.0 / (grid - 1)
        lo_t = ct - width / 2
        lo_s = cs - width / 2
    out = best >= -1e-12 * r
    return out


def conflict_matrix(s: PointSet, sep) -> np.ndarray:
    """conflict[i, j]: the closed sep/2-balls around points i and j intersect (i != j)."""
    n = len(s)
    sep = float(sep)
    r = sep / 2
    x = s.array
    if s.space == EUCLIDEAN:
        c = pairwise_distances(s) <= sep
    else:
        d = pairwise_distances(s)
        d1, d2, d3 = _heis_rel(x, x)
        rho = np.hypot(d1, d2)
        c = d <= r  # the identity lies in every ball, so ||g|| <= r forces a meeting
        iu, ju = np.triu_indices(n, 1)
        # h <= r and |b| <= r bound the meeting criterion, so large |z| already separates
        amb = (~c[iu, ju]) & (rho[iu, ju] <= 2 * r) & (np.abs(d3[iu, ju]) <= 2 * r + r * rho[iu, ju] / 2)
        ai, aj = iu[amb], ju[amb]
        if len(ai):
            g = np.column_stack([d1[ai, aj], d2[ai, aj], d3[ai, aj]])
            met = np.zeros(len(ai), dtype=bool)
            for start in range(0, len(ai), 256):
                met[start:start + 256] = _balls_meet_heis(g[start:start + 256], r)
            c[ai, aj] = met
            c[aj, ai] = met
        c = c | c.T
    np.fill_diagonal(c, False)
    return c


def is_separated(s: PointSet, sep) -> bool:
    return not conflict_matrix(s, sep).any()


@dataclass(frozen=True, eq=False)
class Partition:
    parts: list[PointSet]
    indices: list[list[int]]
    packing_constant: int
    separation: object

    def to_json(self) -> dict:
        return {"separation": _json_scalar(self.separation), "packing_constant": self.packing_constant,
                "part_count": len(self.parts), "indices": self.indices}


def packing_constant(s: PointSet, sep, conflicts: np.ndarray | None = None) -> int:
    """m = max_p #{q : d(p, q) < 2 sep, or the sep/2-balls of p and q meet} - 1."""
    if len(s) == 0:
        return 0
    conflicts = conflict_matrix(s, sep) if conflicts is None else conflicts
    near = (pairwise_distances(s) < 2 * float(sep)) | conflicts
    np.fill_diagonal(near, True)
    return int(near.sum(axis=1).max()) - 1


def greedy_partition(s: PointSet, sep) -> Partition:
    """Split s into maximal sep-separated subsets, each built by a greedy scan in input order."""
    if float(sep) <= 0:
        raise BadParams("separation must be positive")
    conflicts = conflict_matrix(s, sep)
    m = packing_constant(s, sep, conflicts)
    remaining = list(range(len(s)))
    parts = []
    while remaining:
        chosen, rest = [], []
        blocked = np.zeros(len(s), dtype=bool)
        for i in remaining:
            if blocked[i]:
                rest.append(i)
            else:
                chosen.append(i)
                blocked |= conflicts[i]
        parts.append(chosen)
        remaining = rest
    if len(parts) > m + 1:
        raise AssertionError(f"{len(parts)} parts exceed the packing bound m + 1 = {m + 1}")
    return Partition([s.subset(p) for p in parts], parts, m, sep)


def collapse_family(points, space: str = EUCLIDEAN) -> tuple[PointSet, int]:
    """Remove repetitions from a family; returns the set (first-occurrence order) and the max multiplicity."""
    counts: dict[tuple, int] = {}
    for p in points:
        key = _coords(p) if isinstance(p, HeisPoint) else (tuple(p) if np.ndim(p) else (p,))
        counts[key] = counts.get(key, 0) + 1
    mult = max(counts.values(), default=0)
    if space == HEISENBERG:
        return heisenberg_set(list(counts)), mult
    return euclidean_set(list(counts)), mult


def min_pairwise_distance(s: PointSet) -> float:
    d = pairwise_distances(s)
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def quasi_triangle_ratio(triples: np.ndarray) -> float:
    """max d(p, r) / (d(p, q) + d(q, r)) over rows (p, q, r) of shape (k, 3, 3)."""
    t = np.asarray(triples, dtype=float)

    def dist(a, b):
        d1 = b[:, 0] - a[:, 0]
        d2 = b[:, 1] - a[:, 1]
        d3 = b[:, 2] - a[:, 2] + (a[:, 1] * b[:, 0] - a[:, 0] * b[:, 1]) / 2
        return _heis_norm(d1, d2, d3)

    p, q, r = t[:, 0], t[:, 1], t[:, 2]
    denom = dist(p, q) + dist(q, r)
    ok = denom > 0
    return float((dist(p, r)[ok] / denom[ok]).max())


def heisenberg_demo(n: int) -> dict:
    """The two clauses for N: Gamma (N_max = N) is 1-separated in distance, yet a 1/N ball holds N points of Gamma^-1."""
    gamma = counterexample_set(n)
    inv = inverse_set(gamma)
    center = heisenberg_set([U(n)])
    scan = separation_scan(inv, Fraction(1, n), center)
    exact_ok = all(quasi_distance4(U(n), V(n, ell)) == Fraction(ell, n * n) ** 4 for ell in range(1, n + 1))
    return {
        "N": n,
        "points": len(gamma),
        "min_pairwise_distance_gamma": min_pairwise_distance(gamma) if len(gamma) > 1 else None,
        "inverse_ball": scan.to_json(),
        "distances_exact": exact_ok,
    }
