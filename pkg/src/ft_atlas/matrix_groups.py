"""Explicit matrix Lie algebras: so(p,q) with its ax+b pairs, sl(2,R), T(n,R), shearlet dilations.

All constructors work in exact integer/rational arithmetic. Matrix indices in
docstrings are 1-based to match the usual matrix notation; arrays are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _exact
from .errors import BadParams, DependentSpan, NotClosed, SizeMismatch, UnknownName
from .lie_core import LieAlgebra, algebra_from_brackets, validate_algebra


@dataclass(frozen=True, eq=False)
class IndefiniteForm:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise BadParams(f"invalid signature ({self.p}, {self.q})")

    @property
    def size(self) -> int:
        return self.p + self.q

    @property
    def J(self) -> np.ndarray:
        return np.diag([1] * self.p + [-1] * self.q).astype(np.int64)


@dataclass(frozen=True, eq=False)
class MatrixLieElement:
    matrix: np.ndarray
    form: IndefiniteForm | None = None
    name: str = ""

    def __post_init__(self):
        if self.form is not None:
            ok, resid = so_pq_membership(self.matrix, self.form)
            if not ok:
                raise BadParams(f"{self.name or 'matrix'} is not in so({self.form.p},{self.form.q})",
                                residual=str(resid))


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    residual: object
    block_member: bool

    def __iter__(self):
        # unpacks as (member, residual)
        return iter((self.member, self.residual))


def _exact_matrix(m) -> np.ndarray:
    arr = np.asarray(m)
    if arr.dtype != object and np.issubdtype(arr.dtype, np.integer):
        return arr.astype(object)
    return _exact.exact_array(arr)


def _max_abs(arr: np.ndarray):
    vals = [abs(v) for v in arr.reshape(-1)]
    return max(vals) if vals else 0


def so_pq_membership(x, form: IndefiniteForm) -> MembershipReport:
    """X^T J + J X = 0, cross-checked against the block form [[Z, S], [S^T, Y]]."""
    x = _exact_matrix(x)
    n = form.size
    if x.shape != (n, n):
        raise SizeMismatch(f"matrix of shape {x.shape} for so({form.p},{form.q})", expected=n)
    j = form.J.astype(object)
    resid = _max_abs(x.T.dot(j) + j.dot(x))
    p = form.p
    z, s, st, y = x[:p, :p], x[:p, p:], x[p:, :p], x[p:, p:]
    block = (_max_abs(z + z.T) == 0 and _max_abs(y + y.T) == 0 and _max_abs(st - s.T) == 0)
    member = resid == 0
    if member != block:
        raise AssertionError("J-antisymmetry and block characterization disagree")
    return MembershipReport(member, resid, block)


def _unit(n: int, entries: dict[tuple[int, int], int]) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.int64)
    for (r, c), v in entries.items():
        m[r - 1, c - 1] = v
    return m


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a.dot(b) - b.dot(a)


def so_p1_pair(p: int) -> tuple[MatrixLieElement, MatrixLieElement]:
    """(A, X) in so(p,1) with [A, X] = X.

    A has ones at (1,p+1), (p+1,1); X has (1,p) = 1, (p,1) = -1, (p,p+1) = 1, (p+1,p) = 1.
    """
    if p < 2:
        raise BadParams("so(p,1) pair needs p >= 2", p=p)
    n = p + 1
    form = IndefiniteForm(p, 1)
    a = _unit(n, {(1, p + 1): 1, (p + 1, 1): 1})
    x = _unit(n, {(1, p): 1, (p, 1): -1, (p, p + 1): 1, (p + 1, p): 1})
    return MatrixLieElement(a, form, "A"), MatrixLieElement(x, form, "X")


def so_pq_pair(p: int, q: int) -> tuple[MatrixLieElement, MatrixLieElement]:
    """(B, Y) in so(p,q) with [B, Y] = Y.

    B is 1 on {(1,p+1), (p+1,1)}; Y is 1 on {(1,p), (p,p+1), (p+1,p)} and -1 at (p,1).
    """
    if p < 2 or q < 1 or p + q <= 2:
        raise BadParams("so(p,q) pair needs p >= 2, q >= 1, p + q > 2", p=p, q=q)
    n = p + q
    form = IndefiniteForm(p, q)
    b = _unit(n, {(1, p + 1): 1, (p + 1, 1): 1})
    y = _unit(n, {(1, p): 1, (p, p + 1): 1, (p + 1, p): 1, (p, 1): -1})
    return MatrixLieElement(b, form, "B"), MatrixLieElement(y, form, "Y")


def so_pq_basis(form: IndefiniteForm) -> list[MatrixLieElement]:
    """Basis E_ij - J_i J_j E_ji (i < j) of so(p,q); the (i,j) entry is the coordinate."""
    n = form.size
    signs = np.diag(form.J)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=np.int64)
            m[i, j] = 1
            m[j, i] = -signs[i] * signs[j]
            out.append(MatrixLieElement(m, None, f"M{i + 1}_{j + 1}"))
    return out


def span_to_lie_algebra(elements, names=None, scalars: str = "exact") -> LieAlgebra:
    """Structure constants of the matrix span, from commutators expanded in the given basis.

    Raises DependentSpan if the matrices are linearly dependent and NotClosed if a
    commutator leaves their span.
    """
    mats = [e.matrix if isinstance(e, MatrixLieElement) else np.asarray(e) for e in elements]
    if not mats:
        raise DependentSpan("empty span")
    if names is None:
        names = [getattr(e, "name", "") or f"E{i + 1}" for i, e in enumerate(elements)]
        if len(set(names)) != len(names):
            names = [f"E{i + 1}" for i in range(len(mats))]
    k = len(mats)
    shape = mats[0].shape
    if any(m.shape != shape for m in mats):
        raise SizeMismatch("matrices of different sizes")
    flat = np.array([_exact_matrix(m).reshape(-1) for m in mats], dtype=object)  # k x N

    ech = _exact.Echelon(flat.shape[1])
    for row in flat:
        if not ech.add(row):
            raise DependentSpan("matrices are linearly dependent")
    # coordinates from the k pivot positions of the echelon form
    cols = sorted(ech.pivots)
    sub = flat[:, cols].T  # k x k, invertible
    sub_inv = _exact.exact_inverse(sub)

    iu, ju = np.triu_indices(k, 1)
    stack = np.array([_exact_matrix(m) for m in mats], dtype=object)
    stack_int = _exact.as_int64(stack)
    if stack_int is not None and int(np.abs(stack_int).max()) ** 2 * shape[0] < 2**40:
        comm = (np.matmul(stack_int[iu], stack_int[ju]) - np.matmul(stack_int[ju], stack_int[iu]))
    else:
        comm = np.array([commutator(stack[a], stack[b]) for a, b in zip(iu, ju)], dtype=object)
    comm = comm.reshape(len(iu), -1)
    coords = _exact.exact_matmul(comm[:, cols], sub_inv.T, as_object=False)  # pairs x k
    recon = _exact.exact_matmul(coords, flat, as_object=False)
    bad = np.argwhere(recon != comm)
    if len(bad):
        raise NotClosed("a commutator leaves the span", pair_index=int(bad[0][0]))
    coords_int = _exact.as_int64(coords)
    c = np.zeros((k, k, k), dtype=np.int64 if coords_int is not None else object)
    vals = coords_int if coords_int is not None else coords
    c[iu, ju, :] = vals
    c[ju, iu, :] = -vals
    if scalars == "float":
        c = _exact.to_float(c)
    return validate_algebra(c, names, scalars)


def span_coordinates(elements, m) -> np.ndarray:
    """Exact coordinates of matrix ``m`` in the span of ``elements``; NotClosed if outside."""
    mats = [e.matrix if isinstance(e, MatrixLieElement) else np.asarray(e) for e in elements]
    flat = np.array([_exact_matrix(a).reshape(-1) for a in mats], dtype=object)
    target = _exact_matrix(m.matrix if isinstance(m, MatrixLieElement) else m).reshape(-1)
    ech = _exact.Echelon(flat.shape[1])
    for row in flat:
        if not ech.add(row):
            raise DependentSpan("matrices are linearly dependent")
    cols = sorted(ech.pivots)
    sub_inv = _exact.exact_inverse(flat[:, cols].T)
    coords = _exact.exact_matmul(sub_inv, target[cols].reshape(-1, 1)).reshape(-1)
    if (_exact.exact_matmul(coords.reshape(1, -1), flat).reshape(-1) != target).any():
        raise NotClosed("matrix is not in the span")
    return coords


def sl2_matrices() -> list[MatrixLieElement]:
    h = np.array([[1, 0], [0, -1]], dtype=np.int64)
    e = np.array([[0, 1], [0, 0]], dtype=np.int64)
    f = np.array([[0, 0], [1, 0]], dtype=np.int64)
    return [MatrixLieElement(h, None, "H"), MatrixLieElement(e, None, "E"), MatrixLieElement(f, None, "F")]


def strictly_upper_basis(n: int) -> list[MatrixLieElement]:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=np.int64)
            m[i, j] = 1
            out.append(MatrixLieElement(m, None, f"E{i + 1}{j + 1}" if n < 10 else f"E{i + 1}_{j + 1}"))
    return out


def shearlet_matrices() -> list[MatrixLieElement]:
    d = np.array([[1, 0], [0, Fraction(1, 2)]], dtype=object)
    e = np.array([[0, 1], [0, 0]], dtype=object)
    return [MatrixLieElement(d, None, "D"), MatrixLieElement(e, None, "E12")]


def heisenberg_algebra(scalars: str = "exact") -> LieAlgebra:
    return algebra_from_brackets(["X1", "X2", "X3"], {("X1", "X2"): {"X3": 1}}, scalars)


def ax_b_algebra(scalars: str = "exact") -> LieAlgebra:
    return algebra_from_brackets(["A", "X"], {("A", "X"): {"X": 1}}, scalars)


def grelaud_algebra(beta, scalars: str = "exact") -> LieAlgebra:
    b = _exact.to_exact(beta) if scalars == "exact" else float(beta)
    if b == 0:
        raise BadParams("Grélaud parameter must be nonzero")
    return algebra_from_brackets(["A", "Y1", "Y2"],
                                 {("A", "Y1"): {"Y1": 1, "Y2": b}, ("A", "Y2"): {"Y1": -b, "Y2": 1}},
                                 scalars)


def rotation_algebra(scalars: str = "exact") -> LieAlgebra:
    return algebra_from_brackets(["A", "Y1", "Y2"], {("A", "Y1"): {"Y2": 1}, ("A", "Y2"): {"Y1": -1}},
                                 scalars)


def abelian_algebra(n: int, scalars: str = "exact") -> LieAlgebra:
    if n < 1:
        raise BadParams("dimension must be >= 1")
    return algebra_from_brackets([f"X{i + 1}" for i in range(n)], {}, scalars)


def so_pq_algebra(p: int, q: int) -> LieAlgebra:
    if p < 1 or q < 0 or p + q <= 2:
        raise BadParams("so(p,q) needs p + q > 2", p=p, q=q)
    return span_to_lie_algebra(so_pq_basis(IndefiniteForm(p, q)))


def builtin_algebra(name: str, **params) -> LieAlgebra:
    """Named algebras: ax_b, grelaud(beta), heisenberg, sl2, so_pq(p,q), T_n(n), shearlet_H, rotation, abelian(n)."""
    if name == "ax_b":
        return ax_b_algebra()
    if name == "grelaud":
        if "beta" not in params:
            raise BadParams("grelaud needs beta")
        return grelaud_algebra(params["beta"])
    if name == "heisenberg":
        return heisenberg_algebra()
    if name == "sl2":
        return span_to_lie_algebra(sl2_matrices())
    if name == "so_pq":
        return so_pq_algebra(int(params.get("p", 0)), int(params.get("q", 0)))
    if name == "T_n":
        n = int(params.get("n", 0))
        if n < 2:
            raise BadParams("T_n needs n >= 2", n=n)
        return span_to_lie_algebra(strictly_upper_basis(n))
    if name == "shearlet_H":
        # [D, E12] = E12 / 2, so 2D and E12 satisfy the ax+b relation
        return span_to_lie_algebra(shearlet_matrices())
    if name == "rotation":
        return rotation_algebra()
    if name == "abelian":
        return abelian_algebra(int(params.get("n", 1)))
    raise UnknownName(f"no builtin algebra named {name!r}")


BUILTIN_NAMES = ("ax_b", "grelaud", "heisenberg", "sl2", "so_pq", "T_n", "shearlet_H", "rotation", "abelian")


def matrix_to_json(m: np.ndarray) -> list[list]:
    return [[_exact.format_exact(v) for v in row] for row in np.asarray(m, dtype=object)]
