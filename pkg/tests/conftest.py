"""Independent oracles shared by the test modules.

Nothing here calls into ft_atlas except to wrap a structure tensor, so the
expected values come from plain numpy/scipy computations.
"""

import itertools
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from ft_atlas.lie_core import validate_algebra


def structure_from_matrices(mats):
    """Structure tensor of span(mats) under the matrix commutator, by least squares on float copies."""
    flat = np.array([np.asarray(m, dtype=float).reshape(-1) for m in mats]).T
    n = len(mats)
    c = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            a, b = np.asarray(mats[i], float), np.asarray(mats[j], float)
            coords, *_ = np.linalg.lstsq(flat, (a @ b - b @ a).reshape(-1), rcond=None)
            c[i, j] = coords
    return c


def borel_structure(n):
    """Upper triangular n x n matrices, basis E_ij (i <= j), integer structure constants."""
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    pos = {p: k for k, p in enumerate(idx)}
    d = len(idx)
    c = np.zeros((d, d, d), dtype=np.int64)
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            # [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
            if j == k:
                c[a, b, pos[(i, l)]] += 1
            if l == i:
                c[a, b, pos[(k, j)]] -= 1
    return c


def semidirect_structure(rng, a, m):
    """R^a acting on R^m through commuting polynomials in one random matrix.

    The matrix is upper triangular with random integer entries, optionally with
    2 x 2 rotation-scaling blocks on the diagonal, so the action is triangularizable
    over C and the result is solvable.
    """
    base = np.triu(rng.integers(-3, 4, size=(m, m))).astype(float)
    k = 0
    while k + 1 < m and rng.random() < 0.5:
        s, t = rng.integers(-2, 3), rng.integers(1, 3)
        base[k:k + 2, k:k + 2] = [[s, -t], [t, s]]
        k += 2
    acts = []
    for _ in range(a):
        coeffs = rng.integers(-2, 3, size=3)
        acts.append(coeffs[0] * np.eye(m) + coeffs[1] * base + coeffs[2] * base @ base)
    n = a + m
    c = np.zeros((n, n, n))
    for i, t in enumerate(acts):
        for j in range(m):
            c[i, a + j, a:] = t[:, j]
            c[a + j, i, a:] = -t[:, j]
    return c


def random_unimodular(rng, n):
    """Integer matrix of determinant 1 (product of unit triangular factors)."""
    lo = np.tril(rng.integers(-2, 3, size=(n, n)), -1) + np.eye(n, dtype=np.int64)
    up = np.triu(rng.integers(-2, 3, size=(n, n)), 1) + np.eye(n, dtype=np.int64)
    return lo @ up


def rebase_structure(c, p):
    """Structure constants in the basis given by the columns of p, computed in floats."""
    pinv = np.linalg.inv(p)
    return np.einsum("ai,bj,abk,lk->ijl", p, p, c, pinv)


def random_solvable_algebra(seed):
    """Exact algebra from integer constants: a random semidirect product or a Borel algebra, rebased."""
    rng = np.random.default_rng(seed)
    if seed % 5 == 4:
        c = borel_structure(int(rng.integers(2, 4)))
    else:
        c = semidirect_structure(rng, int(rng.integers(1, 3)), int(rng.integers(2, 5)))
    n = c.shape[0]
    p = random_unimodular(rng, n)
    # determinant 1 and integer entries keep the rebased constants integral
    rebased = np.rint(rebase_structure(c.astype(float), p.astype(float))).astype(np.int64)
    return validate_algebra(rebased), rng


def ad_float(c, x):
    """ad(x) from a raw structure tensor: column j = [x, X_j]."""
    return np.einsum("i,ijk->kj", np.asarray(x, dtype=float), np.asarray(c, dtype=float))


def match_multisets(a, b):
    """Max deviation after the optimal pairing of two equal-size complex multisets."""
    a, b = np.asarray(a, complex), np.asarray(b, complex)
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


def dft_bounds(phi):
    """Frame bounds of all cyclic translates of phi: n min / max |phi_hat|^2 with the unitary DFT."""
    n = len(phi)
    mag = n * np.abs(np.fft.fft(phi, norm="ortho")) ** 2
    return float(mag.min()), float(mag.max())


def fractions(seq):
    return [Fraction(v) for v in seq]


def power_sums_exact(m, kmax):
    """Exact integers tr(m^k) for k = 1..kmax."""
    a = np.asarray(m, dtype=object)
    out, p = [], a
    for _ in range(kmax):
        out.append(int(np.trace(p)))
        p = p.dot(a)
    return out


def heis_relative(p, q):
    """Coordinates of p^-1 q for rows p, q (broadcasting), group law of exp(x1 X1 + x2 X2 + x3 X3)."""
    p, q = np.asarray(p, float), np.asarray(q, float)
    return np.stack([q[..., 0] - p[..., 0], q[..., 1] - p[..., 1],
                     q[..., 2] - p[..., 2] - (p[..., 0] * q[..., 1] - p[..., 1] * q[..., 0]) / 2], axis=-1)


def heis_norm4(v):
    v = np.asarray(v, float)
    return (v[..., 0] ** 2 + v[..., 1] ** 2) ** 2 + v[..., 2] ** 4


def heis_distances(x):
    x = np.asarray(x, float)
    return heis_norm4(heis_relative(x[:, None, :], x[None, :, :])) ** 0.25


_BALL_SAMPLES = []


def ball_samples(count=3000, seed=12345):
    """Points filling the closed unit quasi-ball, plus their radial projections onto its boundary.

    ||t v|| = |t| ||v|| for real t, so the r-ball is r times the unit ball.
    """
    if not _BALL_SAMPLES:
        rng = np.random.default_rng(seed)
        v = rng.uniform(-1, 1, size=(count * 4, 3))
        v = v[heis_norm4(v) <= 1][:count]
        edge = v / heis_norm4(v)[:, None] ** 0.25
        _BALL_SAMPLES.append(np.vstack([v, edge]))
    return _BALL_SAMPLES[0]


def heis_overlap_depth(g, r):
    """min over u of max(||u||^4, ||u^-1 g||^4) / r^4; a value below 1 means the closed r-balls at e and g overlap.

    Dense sampling of the r-ball followed by a Nelder-Mead polish from the best samples.
    """
    from scipy.optimize import minimize

    g = np.asarray(g, float)
    u = r * ball_samples()
    vals = np.maximum(heis_norm4(u), heis_norm4(heis_relative(u, g))) / r ** 4
    best = float(vals.min())
    if best < 1 or best > 2:
        # a sample inside both balls settles overlap; far above 1 the polish cannot reach 1
        return best
    for start in u[np.argsort(vals)[:2]]:
        res = minimize(lambda w: max(heis_norm4(w), heis_norm4(heis_relative(w, g))), start,
                       method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-16, "maxiter": 1500})
        best = min(best, float(res.fun) / r ** 4)
    return best


def heis_may_overlap(g, r):
    """Necessary condition for the closed r-balls at e and g to meet.

    g = u w with ||u||, ||w|| <= r forces |horizontal(g)| <= 2r and
    |x3(g)| <= |x3(u)| + |x3(w)| + |u_h||w_h| / 2 <= 2r + r^2 / 2.
    """
    g = np.asarray(g, float)
    rho = np.hypot(g[..., 0], g[..., 1])
    return (rho <= 2 * r) & (np.abs(g[..., 2]) <= 2 * r + r * r / 2)


def heis_overlap_depths(gs, r, batch=128, zooms=2, seed=777):
    """Vectorized heis_overlap_depth: global ball sampling, then local resampling around each best point.

    Every returned value is attained at an actual point u, so a value below 1 certifies overlap.
    """
    gs = np.asarray(gs, float).reshape(-1, 3)
    rng = np.random.default_rng(seed)
    base = r * ball_samples()
    local = rng.uniform(-1, 1, size=(1500, 3))
    out = np.empty(len(gs))

    def depth(u, g):
        return np.maximum(heis_norm4(u), heis_norm4(heis_relative(u, g[:, None, :]))) / r ** 4

    for start in range(0, len(gs), batch):
        g = gs[start:start + batch]
        vals = depth(base[None, :, :], g)
        k = np.argmin(vals, axis=1)
        best_u = base[k]
        best = vals[np.arange(len(g)), k]
        width = 0.1 * r
        for _ in range(zooms):
            u = best_u[:, None, :] + width * local[None, :, :]
            vals = depth(u, g)
            k = np.argmin(vals, axis=1)
            cand = vals[np.arange(len(g)), k]
            better = cand < best
            best = np.where(better, cand, best)
            best_u = np.where(better[:, None], u[np.arange(len(g)), k], best_u)
            width *= 0.1
        out[start:start + len(g)] = best
    return out


def perm_compose(p, q):
    return tuple(p[i] for i in q)


def perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def s3_translates(phi, shifts=None):
    """lambda(x) phi on S3 built straight from permutations: (lambda(x) phi)(y) = phi(x^-1 y)."""
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    shifts = range(6) if shifts is None else shifts
    cols = []
    for x in shifts:
        xi = perm_inverse(perms[x])
        cols.append([phi[idx[perm_compose(xi, y)]] for y in perms])
    return np.array(cols, dtype=complex).T
