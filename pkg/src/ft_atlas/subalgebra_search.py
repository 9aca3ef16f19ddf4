"""Locate ax+b or Grélaud subalgebras from eigen-data of ad, and verify template embeddings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoWitnessFound, NoncommutingPair, NotClosed, TemplateMismatch
from .lie_core import LieAlgebra, _random_rational_vector, ad_matrix_float, bracket

AX_B = "AX_B"
GRELAUD = "GRELAUD"
HEISENBERG = "HEISENBERG"
KINDS = (AX_B, GRELAUD, HEISENBERG)


@dataclass(frozen=True, eq=False)
class SubalgebraWitness:
    kind: str
    generators: tuple[np.ndarray, ...]
    residual: float
    beta: float | None = None
    seed: int | None = None
    trial_index: int | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "beta": self.beta,
            "generators": [[float(v) for v in g] for g in self.generators],
            "residual": self.residual,
            "seed": self.seed,
            "trial_index": self.trial_index,
        }


@dataclass(frozen=True)
class TemplateReport:
    kind: str
    residual: float
    closure_residual: float
    beta: float | None = None


def _fb(g: LieAlgebra, x, y) -> np.ndarray:
    return bracket(g, np.asarray(x, dtype=float), np.asarray(y, dtype=float))


def _scale(g: LieAlgebra, gens) -> float:
    cmax = float(np.abs(g.float_structure).max()) if g.dim else 0.0
    gmax = max(float(np.abs(v).max()) for v in gens)
    return max(1.0, cmax * gmax * gmax)


def verify_subalgebra_template(g: LieAlgebra, generators, kind: str, beta: float | None = None,
                               tol: float | None = None) -> TemplateReport:
    """Check that ``generators`` span a subalgebra realizing the named template.

    AX_B: [g1, g2] = g2. GRELAUD(beta): [g1, g2] = g2 + beta g3,
    [g1, g3] = -beta g2 + g3, [g2, g3] = 0. HEISENBERG: [g1, g2] = g3 with g3
    central in the span. Closure of the span is checked first (NOT_CLOSED).
    """
    if kind not in KINDS:
        raise TemplateMismatch(f"unknown template {kind!r}")
    gens = [np.asarray(v, dtype=float) for v in generators]
    want = 2 if kind == AX_B else 3
    if len(gens) != want:
        raise TemplateMismatch(f"{kind} needs {want} generators, got {len(gens)}")
    tol = g.tol if tol is None else tol
    scale = _scale(g, gens)
    basis = np.column_stack(gens)
    if np.linalg.matrix_rank(basis, tol=tol * max(1.0, np.abs(basis).max())) < want:
        raise TemplateMismatch("generators are linearly dependent")

    closure = 0.0
    for a in range(want):
        for b in range(a + 1, want):
            br = _fb(g, gens[a], gens[b])
            coeffs, *_ = np.linalg.lstsq(basis, br, rcond=None)
            closure = max(closure, float(np.abs(basis @ coeffs - br).max()))
    if closure > tol * scale:
        raise NotClosed(f"span of the {want} generators is not closed under the bracket",
                        residual=closure)

    if kind == AX_B:
        terms = [_fb(g, gens[0], gens[1]) - gens[1]]
    elif kind == GRELAUD:
        y1, y2 = gens[1], gens[2]
        b12 = _fb(g, gens[0], y1)
        if beta is None:
            beta = float(np.dot(b12 - y1, y2) / np.dot(y2, y2))
        terms = [b12 - y1 - beta * y2,
                 _fb(g, gens[0], y2) + beta * y1 - y2,
                 _fb(g, y1, y2)]
        if abs(beta) <= tol:
            raise TemplateMismatch("Grélaud parameter must be nonzero", beta=beta)
    else:
        z = gens[2]
        terms = [_fb(g, gens[0], gens[1]) - z, _fb(g, gens[0], z), _fb(g, gens[1], z)]
    resid = max(float(np.abs(t).max()) for t in terms)
    if resid > tol * scale:
        raise TemplateMismatch(f"bracket relations of {kind} fail", residual=resid)
    return TemplateReport(kind, resid, closure, beta)


def _candidates(g: LieAlgebra, rng: np.random.Generator, trials: int):
    for i in range(g.dim):
        yield np.eye(g.dim)[i]
    for _ in range(trials):
        yield np.array([float(c) for c in _random_rational_vector(rng, g.dim)])


def _real_null_vector(m: np.ndarray) -> np.ndarray:
    _, _, vh = np.linalg.svd(m)
    v = vh[-1]
    return v / v[np.argmax(np.abs(v))]


def _case_one(g: LieAlgebra, x: np.ndarray, eigs: np.ndarray, tol: float):
    real = [w for w in eigs if abs(w.imag) <= tol * max(1.0, abs(w.real)) and abs(w) > tol]
    if not real:
        return None
    lam = max(real, key=lambda w: (abs(w.real), w.real)).real
    y = _real_null_vector(ad_matrix_float(g, x) - lam * np.eye(g.dim))
    return (x / lam, y)


def _case_two(g: LieAlgebra, x: np.ndarray, eigs: np.ndarray, tol: float):
    out = []
    for w in eigs:
        a, b = w.real, w.imag
        if abs(a) > tol and abs(b) > tol * max(1.0, abs(a)) and a * b > 0:
            out.append(w)
    if not out:
        return None
    w = max(out, key=lambda z: (abs(z.real), abs(z.imag)))
    ad = ad_matrix_float(g, x).astype(complex)
    _, _, vh = np.linalg.svd(ad - w * np.eye(g.dim))
    v = vh[-1].conj()
    v = v / v[np.argmax(np.abs(v))]
    alpha, beta = w.real, w.imag
    y1, y2 = v.real.copy(), -v.imag.copy()
    return (x / alpha, y1, y2), beta / alpha


def find_ax_b_or_grelaud(g: LieAlgebra, seed: int = 0, trials: int = 64,
                         tol: float | None = None) -> SubalgebraWitness:
    """Search ad-spectra for a subalgebra isomorphic to ax+b or to a Grélaud algebra.

    Candidates X are the basis elements, then ``trials`` seeded random rational
    combinations. A nonzero real eigenvalue of ad(X) anywhere in the sweep wins
    (ax+b); otherwise the first eigenvalue alpha + i beta with alpha, beta != 0
    gives a Grélaud(beta/alpha) candidate, accepted only if [Y1, Y2] = 0.
    """
    tol = g.tol if tol is None else tol
    rng = np.random.default_rng(seed)
    grelaud_candidates = []
    for idx, x in enumerate(_candidates(g, rng, trials)):
        ad = ad_matrix_float(g, x)
        eigs = np.linalg.eigvals(ad)
        scale = max(1.0, float(np.abs(ad).max()))
        one = _case_one(g, x, eigs, tol * scale * 1e3)
        if one is not None:
            try:
                rep = verify_subalgebra_template(g, one, AX_B, tol=tol)
            except (NotClosed, TemplateMismatch):
                pass
            else:
                return SubalgebraWitness(AX_B, tuple(one), rep.residual, None, seed, idx)
        two = _case_two(g, x, eigs, tol * scale * 1e3)
        if two is not None:
            grelaud_candidates.append((idx, two))
    noncommuting = None
    for idx, (gens, beta) in grelaud_candidates:
        comm = float(np.abs(_fb(g, gens[1], gens[2])).max())
        if comm > tol * _scale(g, gens):
            noncommuting = noncommuting or (idx, comm)
            continue
        try:
            rep = verify_subalgebra_template(g, gens, GRELAUD, beta=beta, tol=tol)
        except (NotClosed, TemplateMismatch):
            continue
        return SubalgebraWitness(GRELAUD, tuple(gens), rep.residual, float(beta), seed, idx)
    if noncommuting is not None:
        raise NoncommutingPair("complex eigenvector pair found but [Y1, Y2] != 0",
                               trial_index=noncommuting[0], residual=noncommuting[1])
    raise NoWitnessFound(f"no ax+b or Grélaud subalgebra found in {g.dim + trials} candidates",
                         seed=seed, trials=trials)
