"""Frames of translates on finite groups.

Vectors live in l2(G) = C^|G| with <f, g> = sum f(x) conj(g(x)). The left regular
representation acts by (lambda(x) f)(y) = f(x^-1 y), so lambda(x) e_z = e_{xz}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (EmptyShiftSet, InvalidGroup, NotAFrame, NotAFrameOnH, NotAProjection, NotASubgroup,
                     NotCommuting)

DEFAULT_TOL = 1e-9
ASSOCIATIVITY_FULL_CHECK = 128


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    identity: int
    inverse: np.ndarray
    name: str = ""
    labels: tuple | None = None

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table.tolist()}


def group_from_table(table, name: str = "", labels=None, seed: int = 0) -> FiniteGroup:
    """Validate a Cayley table (0-based indices) and derive identity and inverses."""
    try:
        t = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError):
        raise InvalidGroup("table entries must be integers") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
        raise InvalidGroup(f"table must be square and nonempty, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise InvalidGroup("table entries out of range")
    ref = np.arange(n)
    if not (np.sort(t, axis=1) == ref).all() or not (np.sort(t, axis=0) == ref[:, None]).all():
        raise InvalidGroup("every row and column must be a permutation")
    ids = [e for e in range(n) if (t[e] == ref).all() and (t[:, e] == ref).all()]
    if not ids:
        raise InvalidGroup("no two-sided identity")
    e = ids[0]
    _check_associative(t, seed)
    inv = np.argmax(t == e, axis=1)
    if not (t[ref, inv] == e).all() or not (t[inv, ref] == e).all():
        raise InvalidGroup("inverses are not two-sided")
    return FiniteGroup(t, e, inv, name, tuple(labels) if labels is not None else None)


def _check_associative(t: np.ndarray, seed: int) -> None:
    n = t.shape[0]
    if n <= ASSOCIATIVITY_FULL_CHECK:
        # (ab)c vs a(bc) over all n^3 triples
        left = t[t[:, :, None], np.arange(n)[None, None, :]]
        right = t[np.arange(n)[:, None, None], t[None, :, :]]
        bad = np.argwhere(left != right)
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, (3, 20000))
        mask = t[t[a, b], c] != t[a, t[b, c]]
        bad = np.column_stack([a, b, c])[mask]
    if len(bad):
        raise InvalidGroup("table is not associative", triple=[int(v) for v in bad[0]])


def _from_elements(elements: list, op, name: str) -> FiniteGroup:
    index = {el: i for i, el in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[op(a, b)]
    return group_from_table(table, name, labels=elements)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidGroup("cyclic group order must be >= 1")
    r = np.arange(n)
    return group_from_table((r[:, None] + r[None, :]) % n, f"Z/{n}", labels=tuple(range(n)))


def dihedral(k: int) -> FiniteGroup:
    """Symmetries of the k-gon, elements (r, s) = rot^r ref^s; the rotations have s = 0."""
    if k < 1:
        raise InvalidGroup("dihedral parameter must be >= 1")
    elements = [(r, s) for s in (0, 1) for r in range(k)]

    def op(a, b):
        r1, s1 = a
        r2, s2 = b
        return ((r1 + (-r2 if s1 else r2)) % k, s1 ^ s2)

    return _from_elements(elements, op, f"D{k}")


def symmetric(k: int) -> FiniteGroup:
    """Permutations of {0..k-1} in lexicographic order; (p q)(i) = p(q(i))."""
    if not 1 <= k <= 5:
        raise InvalidGroup("symmetric groups are bundled for k <= 5")
    elements = list(itertools.permutations(range(k)))
    return _from_elements(elements, lambda p, q: tuple(p[i] for i in q), f"S{k}")


def heisenberg_mod(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices mod p: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')."""
    if p not in (2, 3):
        raise InvalidGroup("Heisenberg groups are bundled for p in {2, 3}")
    elements = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

    def op(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return _from_elements(elements, op, f"H(Z/{p})")


FAMILIES = {"cyclic": ("n", cyclic), "dihedral": ("k", dihedral), "symmetric": ("k", symmetric),
            "heisenberg_mod": ("p", heisenberg_mod)}


def group_from_json(data: dict) -> FiniteGroup:
    if "family" in data:
        fam = data["family"]
        if fam not in FAMILIES:
            raise InvalidGroup(f"unknown family {fam!r}")
        key, ctor = FAMILIES[fam]
        if key not in data:
            raise InvalidGroup(f"family {fam!r} needs parameter {key!r}")
        return ctor(int(data[key]))
    if "table" not in data:
        raise InvalidGroup("group JSON needs 'table' or 'family'")
    g = group_from_table(data["table"])
    if "order" in data and int(data["order"]) != g.order:
        raise InvalidGroup("declared order does not match the table")
    return g


def subgroup_generated(g: FiniteGroup, generators) -> list[int]:
    """Sorted element indices of the subgroup generated by ``generators``."""
    seen = {g.identity}
    frontier = [g.identity]
    gens = [int(x) for x in generators]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = g.mul(a, s)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen)


# ---------------------------------------------------------------------------
# vectors and the regular representation


def delta(g: FiniteGroup, x: int | None = None) -> np.ndarray:
    v = np.zeros(g.order, dtype=complex)
    v[g.identity if x is None else x] = 1
    return v


def as_vector(g: FiniteGroup, f) -> np.ndarray:
    v = np.asarray(f, dtype=complex)
    if v.shape != (g.order,):
        raise InvalidGroup(f"vector of length {v.shape} on a group of order {g.order}")
    return v


def inner(f: np.ndarray, h: np.ndarray) -> complex:
    return complex(np.vdot(h, f))


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    matrices: np.ndarray  # (order, d, d)
    group: FiniteGroup

    @property
    def dimension(self) -> int:
        return self.matrices.shape[1]

    def __call__(self, x: int) -> np.ndarray:
        return self.matrices[x]

    def residuals(self) -> tuple[float, float]:
        """(unitarity, homomorphism) residuals over all elements and pairs."""
        m = self.matrices
        eye = np.eye(self.dimension)
        unit = float(np.abs(np.einsum("xji,xjk->xik", m.conj(), m) - eye).max())
        t = self.group.table
        hom = float(np.abs(np.einsum("xij,yjk->xyik", m, m) - m[t]).max())
        return unit, hom


def regular_rep(g: FiniteGroup) -> UnitaryRep:
    n = g.order
    m = np.zeros((n, n, n))
    rows = g.table  # rows[x, z] = xz
    xs, zs = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    m[xs, rows, zs] = 1
    return UnitaryRep(m, g)


def translate(g: FiniteGroup, x: int, f: np.ndarray) -> np.ndarray:
    """(lambda(x) f)(y) = f(x^-1 y)."""
    return np.asarray(f)[g.table[g.inverse[x]]]


def convolve(g: FiniteGroup, f, phi) -> np.ndarray:
    """(f * phi)(x) = sum_y f(y) phi(y^-1 x)."""
    f, phi = as_vector(g, f), as_vector(g, phi)
    # phi(y^-1 x) indexed by (y, x)
    return f @ phi[g.table[g.inverse]]


def involute(g: FiniteGroup, phi) -> np.ndarray:
    """phi*(x) = conj(phi(x^-1))."""
    return as_vector(g, phi)[g.inverse].conj()


# ---------------------------------------------------------------------------
# frame diagnostics


@dataclass(frozen=True, eq=False)
class FrameReport:
    lower_bound: float
    upper_bound: float
    is_frame: bool
    is_parseval: bool
    is_riesz: bool
    is_onb: bool
    spectrum: np.ndarray
    convolution_residual: float | None = None
    subspace_dim: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "is_frame": self.is_frame,
            "is_parseval": self.is_parseval,
            "is_riesz": self.is_riesz,
            "is_onb": self.is_onb,
            "spectrum": [float(v) for v in self.spectrum],
        }
        if self.convolution_residual is not None:
            out["convolution_residual"] = self.convolution_residual
        if self.subspace_dim is not None:
            out["subspace_dim"] = self.subspace_dim
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _clean(v: float, scale: float) -> float:
    return 0.0 if abs(v) <= 1e-13 * max(scale, 1.0) else float(v)


def system_report(vectors: np.ndarray, basis: np.ndarray | None = None, tol: float = DEFAULT_TOL) -> FrameReport:
    """Frame/Riesz diagnostics for the columns of ``vectors``.

    With ``basis`` (orthonormal columns) the frame is analysed inside that subspace.
    """
    phi = np.asarray(vectors, dtype=complex)
    if basis is not None:
        phi = basis.conj().T @ phi
    s = phi @ phi.conj().T
    spec = np.linalg.eigvalsh((s + s.conj().T) / 2)
    top = float(spec[-1]) if spec.size else 0.0
    spec = np.array([_clean(v, top) for v in spec])
    a, b = float(spec[0]), float(spec[-1])
    is_frame = b > 0 and a > tol * b
    parseval = bool(np.abs(spec - 1).max() <= tol)
    gram = phi.conj().T @ phi
    gspec = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
    gtop = max(float(gspec[-1]), 0.0)
    riesz = bool(gspec[0] > tol * gtop) if gtop > 0 else False
    onb = riesz and bool(np.abs(gram - np.eye(gram.shape[0])).max() <= tol)
    return FrameReport(a, b, is_frame, parseval, riesz, onb, spec)


def _shift_list(g: FiniteGroup, shifts) -> list[int]:
    idx = list(range(g.order)) if shifts is None else [int(x) for x in shifts]
    if not idx:
        raise EmptyShiftSet("the shift set is empty")
    if min(idx) < 0 or max(idx) >= g.order:
        raise InvalidGroup("shift index out of range")
    return idx


def translate_matrix(g: FiniteGroup, phi: np.ndarray, shifts) -> np.ndarray:
    """Columns lambda(x) phi for x in ``shifts``."""
    return np.column_stack([translate(g, x, phi) for x in shifts])


def frame_report(g: FiniteGroup, phi, shifts=None, tol: float = DEFAULT_TOL) -> FrameReport:
    """Frame bounds of (lambda(x) phi)_{x in shifts}; shifts default to all of G.

    For the full group the frame operator is also checked against f -> f * phi^* * phi.
    """
    phi = as_vector(g, phi)
    idx = _shift_list(g, shifts)
    cols = translate_matrix(g, phi, idx)
    rep = system_report(cols, tol=tol)
    if sorted(idx) == list(range(g.order)) and len(idx) == g.order:
        resid = frame_operator_residual(g, phi)
        rep = FrameReport(rep.lower_bound, rep.upper_bound, rep.is_frame, rep.is_parseval, rep.is_riesz,
                          rep.is_onb, rep.spectrum, convolution_residual=resid)
    return rep


def frame_operator_residual(g: FiniteGroup, phi, samples: int = 0) -> float:
    """max |S f - f * phi^* * phi| over the standard basis (all of l2(G))."""
    phi = as_vector(g, phi)
    cols = translate_matrix(g, phi, range(g.order))
    s = cols @ cols.conj().T
    kernel = convolve(g, involute(g, phi), phi)
    # f * k for every f = e_z at once: (e_z * k)(x) = k(z^-1 x)
    conv = kernel[g.table[g.inverse]].T  # column z holds e_z * kernel
    return float(np.abs(s - conv).max())


def _inv_sqrt(s: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((s + s.conj().T) / 2)
    return (v / np.sqrt(w)) @ v.conj().T


def canonical_tight_generator(g: FiniteGroup, phi, tol: float = DEFAULT_TOL) -> np.ndarray:
    """eta = S^-1/2 phi; its full-group translates are Parseval and eta^* * eta = delta_e."""
    phi = as_vector(g, phi)
    rep = frame_report(g, phi, tol=tol)
    if not rep.is_frame:
        raise NotAFrame("translates of phi do not form a frame", lower_bound=rep.lower_bound)
    cols = translate_matrix(g, phi, range(g.order))
    return _inv_sqrt(cols @ cols.conj().T) @ phi


@dataclass(frozen=True)
class RieszCheck:
    is_frame: bool
    full_shift_set: bool
    gram_invertible: bool
    holds: bool
    report: FrameReport

    def to_json(self) -> dict:
        return {"is_frame": self.is_frame, "full_shift_set": self.full_shift_set,
                "gram_invertible": self.gram_invertible, "holds": self.holds, "report": self.report.to_json()}


def riesz_theorem_check(g: FiniteGroup, phi, shifts=None, tol: float = DEFAULT_TOL) -> RieszCheck:
    """Finite-group dichotomy: a frame of translates needs every shift and is then a Riesz basis."""
    phi = as_vector(g, phi)
    idx = _shift_list(g, shifts)
    rep = system_report(translate_matrix(g, phi, idx), tol=tol)
    full = sorted(set(idx)) == list(range(g.order))
    holds = (not rep.is_frame) or (full and rep.is_riesz)
    return RieszCheck(rep.is_frame, full, rep.is_riesz, holds, rep)


# ---------------------------------------------------------------------------
# wavelet transforms and universal sampling


def wavelet_transform(pi: UnitaryRep, eta, u) -> np.ndarray:
    """V_eta u (x) = <u, pi(x) eta>."""
    eta = np.asarray(eta, dtype=complex)
    u = np.asarray(u, dtype=complex)
    orbit = pi.matrices @ eta  # (order, d)
    return orbit.conj() @ u


def is_admissible(pi: UnitaryRep, eta, tol: float = DEFAULT_TOL) -> bool:
    """V_eta is an isometry: V^* V = I, i.e. norms are preserved on every vector of the space."""
    eta = np.asarray(eta, dtype=complex)
    orbit = pi.matrices @ eta
    vv = orbit.T @ orbit.conj()  # sum_x (pi(x)eta)(pi(x)eta)^*
    return bool(np.abs(vv - np.eye(pi.dimension)).max() <= tol)


def isotypic_projection(g: FiniteGroup, character, degree: int) -> np.ndarray:
    """P = (d/|G|) sum_g conj(chi(g)) lambda(g), the central projection for an irreducible character."""
    chi = np.asarray(character, dtype=complex)
    lam = regular_rep(g).matrices
    return degree / g.order * np.einsum("g,gij->ij", chi.conj(), lam)


def s3_characters(g: FiniteGroup) -> dict[str, tuple[np.ndarray, int]]:
    """Trivial, sign and standard characters of a symmetric group S3 given with permutation labels."""
    if g.order != 6 or g.labels is None:
        raise InvalidGroup("expects the bundled S3")
    fixed = np.array([sum(1 for i, v in enumerate(p) if i == v) for p in g.labels])
    sign = np.array([_perm_sign(p) for p in g.labels])
    return {"trivial": (np.ones(6), 1), "sign": (sign.astype(float), 1), "standard": (fixed - 1.0, 2)}


def _perm_sign(p) -> int:
    p = list(p)
    sgn = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sgn = -sgn
    return sgn


@dataclass(frozen=True, eq=False)
class SamplingTransfer:
    eta: np.ndarray
    psi: np.ndarray
    report: FrameReport
    original: FrameReport
    subspace_dim: int

    def to_json(self) -> dict:
        return {"subspace_dim": self.subspace_dim, "report": self.report.to_json(),
                "original": self.original.to_json()}


def universal_sampling_transfer(g: FiniteGroup, phi, shifts, projection, tol: float = DEFAULT_TOL) -> SamplingTransfer:
    """Move a frame of translates onto ran P for a projection P commuting with lambda.

    psi = P delta_e is admissible for the subrepresentation on ran P, and
    eta = V_psi^* phi = P phi; the report is for (lambda(x) eta)_{x in shifts} inside ran P.
    """
    phi = as_vector(g, phi)
    p = np.asarray(projection, dtype=complex)
    n = g.order
    if p.shape != (n, n):
        raise NotAProjection("projection has the wrong size")
    scale = max(1.0, float(np.abs(p).max()))
    if np.abs(p @ p - p).max() > tol * scale or np.abs(p - p.conj().T).max() > tol * scale:
        raise NotAProjection("P is not an orthogonal projection")
    lam = regular_rep(g).matrices
    if np.abs(np.einsum("ij,xjk->xik", p, lam) - np.einsum("xij,jk->xik", lam, p)).max() > tol * scale:
        raise NotCommuting("P does not commute with the regular representation")
    idx = _shift_list(g, shifts)
    original = system_report(translate_matrix(g, phi, idx), tol=tol)
    if not original.is_frame:
        raise NotAFrame("translates of phi do not form a frame of l2(G)")
    w, v = np.linalg.eigh((p + p.conj().T) / 2)
    basis = v[:, w > 0.5]
    psi = p @ delta(g)
    # V_psi^* phi = sum_x phi(x) lambda(x) psi = phi * psi, and psi = P delta_e makes that P phi
    eta = convolve(g, phi, psi)
    rep = system_report(translate_matrix(g, eta, idx), basis=basis, tol=tol)
    return SamplingTransfer(eta, psi, rep, original, basis.shape[1])


# ---------------------------------------------------------------------------
# restriction to a subgroup


@dataclass(frozen=True, eq=False)
class RestrictionDecomposition:
    W: np.ndarray
    subgroup: list[int]
    cosets: list[int]
    residual: float

    @property
    def index(self) -> int:
        return len(self.cosets)

    def to_json(self) -> dict:
        return {"subgroup": self.subgroup, "coset_representatives": self.cosets, "index": self.index,
                "residual": self.residual}


def check_subgroup(g: FiniteGroup, h) -> list[int]:
    elems = sorted({int(x) for x in h})
    if not elems or min(elems) < 0 or max(elems) >= g.order:
        raise NotASubgroup("subgroup elements out of range")
    s = set(elems)
    if g.identity not in s:
        raise NotASubgroup("subgroup must contain the identity")
    sub = np.array(elems)
    if not set(g.table[np.ix_(sub, sub)].reshape(-1)) <= s or not set(g.inverse[sub]) <= s:
        raise NotASubgroup("subset is not closed under products and inverses")
    return elems


def subgroup_table(g: FiniteGroup, h: list[int]) -> FiniteGroup:
    pos = {x: i for i, x in enumerate(h)}
    t = np.array([[pos[g.mul(a, b)] for b in h] for a in h])
    labels = tuple(g.labels[x] for x in h) if g.labels is not None else tuple(h)
    return group_from_table(t, f"{g.name}|H", labels=labels)


def restriction_decomposition(g: FiniteGroup, h, tol: float = 1e-10) -> RestrictionDecomposition:
    """Unitary W: l2(G) -> l2(H) (x) l2(C) with W lambda_G(h) W^* = lambda_H(h) (x) I.

    C holds the smallest element index of each right coset Hc; W sends e_{hc} to e_h (x) e_c.
    """
    h = check_subgroup(g, h)
    reps, seen = [], set()
    for c in range(g.order):
        if c not in seen:
            reps.append(c)
            seen.update(g.mul(x, c) for x in h)
    k = len(reps)
    w = np.zeros((g.order, g.order))
    for hi, x in enumerate(h):
        for ci, c in enumerate(reps):
            w[hi * k + ci, g.mul(x, c)] = 1
    hg = subgroup_table(g, h)
    lam_g = regular_rep(g).matrices
    lam_h = regular_rep(hg).matrices
    eye = np.eye(k)
    resid = 0.0
    for hi, x in enumerate(h):
        lhs = w @ lam_g[x] @ w.T
        resid = max(resid, float(np.abs(lhs - np.kron(lam_h[hi], eye)).max()))
    return RestrictionDecomposition(w, h, reps, resid)


def transport_frame(g: FiniteGroup, h, phi_h, shifts=None, slot: int = 0,
                    tol: float = DEFAULT_TOL) -> FrameReport:
    """Embed phi_H (x) e_slot through W^* and report the H-translates on their invariant subspace.

    ``shifts`` are positions in the sorted subgroup list (default: all of H). Only
    the subspace l2(H) (x) e_slot is reached; the full space would need infinite
    multiplicity, which has no finite counterpart.
    """
    dec = restriction_decomposition(g, h)
    hg = subgroup_table(g, dec.subgroup)
    phi_h = as_vector(hg, phi_h)
    idx = _shift_list(hg, shifts)
    base = system_report(translate_matrix(hg, phi_h, idx), tol=tol)
    if not base.is_frame:
        raise NotAFrameOnH("translates of phi_H do not form a frame of l2(H)", lower_bound=base.lower_bound)
    k = dec.index
    if not 0 <= slot < k:
        raise NotASubgroup(f"coset slot {slot} out of range for index {k}")
    e = np.zeros(k)
    e[slot] = 1
    phi = dec.W.T @ np.kron(phi_h, e)
    basis = dec.W.T @ np.kron(np.eye(hg.order), e.reshape(-1, 1))
    cols = translate_matrix(g, phi, [dec.subgroup[i] for i in idx])
    rep = system_report(cols, basis=basis, tol=tol)
    note = (f"frame of a {hg.order}-dimensional lambda_G|H-invariant subspace of l2(G) "
            f"(dim {g.order}); full-space transfer needs infinite multiplicity")
    return FrameReport(rep.lower_bound, rep.upper_bound, rep.is_frame, rep.is_parseval, rep.is_riesz,
                       rep.is_onb, rep.spectrum, subspace_dim=hg.order, notes=[note])
