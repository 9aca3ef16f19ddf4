"""Decide the frames-of-translates property for described groups by a fixed rule cascade.

Rules, first match wins:

1. discrete                                   -> FT
2. compact and nondiscrete                    -> NOT_FT
3. [IN]-group and nondiscrete                 -> NOT_FT
4. abelian and nondiscrete                    -> NOT_FT
5. connected, simply connected, exponential
   solvable, not nilpotent                    -> FT (witness subalgebra)
6. connected, simply connected, nilpotent,
   nonabelian                                 -> OPEN
7. non-solvable with an ax+b / Grélaud
   subalgebra                                 -> FT, closedness assumed
8. anything else                              -> UNKNOWN
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import lie_core, subalgebra_search
from .errors import BadParams, InconsistentFlags, NoncommutingPair, NoWitnessFound
from .lie_core import LieAlgebra
from .subalgebra_search import SubalgebraWitness

FT = "FT"
NOT_FT = "NOT_FT"
OPEN = "OPEN"
UNKNOWN = "UNKNOWN"

FLAG_NAMES = ("discrete", "compact", "finite", "abelian", "simply_connected", "connected", "IN_group")

CITATIONS = {
    "discrete-onb": "On a discrete group the left translates of the point mass at the identity "
                    "form an orthonormal basis of l2(G); every discrete group is FT.",
    "compact-finite": "A compact group is FT if and only if it is finite.",
    "in-group": "A nondiscrete [IN]-group (one with a compact conjugation-invariant identity "
                "neighborhood) is not FT.",
    "in-iwasawa": "Iwasawa: a connected locally compact [IN]-group has a compact closure of its "
                  "commutator subgroup; the flag is taken as given, not derived from the algebra.",
    "abelian-nondiscrete": "Abelian groups are [IN]-groups, so a nondiscrete abelian group "
                           "(for example R^d) is not FT.",
    "eigen-subalgebra": "An algebra not of type R contains a subalgebra isomorphic to the ax+b "
                        "algebra or to a Grélaud algebra, found from an eigenvector of some ad(X).",
    "exp-closed-subgroup": "In an exponential solvable group that subalgebra integrates to a closed, "
                           "simply connected, type I, nonunimodular subgroup.",
    "typeI-nonunimodular": "Closed type I nonunimodular groups are FT (via admissible vectors of "
                           "the regular representation).",
    "subgroup-lift": "If a closed subgroup H is FT and lambda_H has infinite multiplicity, "
                     "then G is FT.",
    "exp-solvable-nonnilpotent": "Exponential solvable Lie groups that are not nilpotent are FT.",
    "nilpotent-open": "For connected, simply connected, nonabelian nilpotent Lie groups the FT "
                      "question is open.",
    "no-rule": "No available result decides this group.",
}

CLOSEDNESS_ASSUMPTION = "witness subgroup closed in G"
RIESZ_NOTE = ("Conjecture, not used as a rule: a group has a Riesz basis of translates "
              "if and only if it is discrete.")


@dataclass(frozen=True, eq=False)
class GroupDescriptor:
    name: str
    discrete: bool = False
    compact: bool = False
    finite: bool = False
    abelian: bool = False
    simply_connected: bool = False
    connected: bool = False
    IN_group: bool | None = None
    algebra: LieAlgebra | None = None

    @classmethod
    def connected_lie(cls, name: str, algebra: LieAlgebra, simply_connected: bool = True,
                      **flags) -> "GroupDescriptor":
        """Connected Lie group with the given algebra; abelian is read off the algebra."""
        flags.setdefault("abelian", algebra.is_abelian())
        return cls(name=name, connected=True, simply_connected=simply_connected, algebra=algebra, **flags)

    @classmethod
    def finite_group(cls, name: str, order: int, abelian: bool = False) -> "GroupDescriptor":
        return cls(name=name, discrete=True, compact=True, finite=True, abelian=abelian,
                   connected=order == 1, simply_connected=order == 1)

    @classmethod
    def from_json(cls, data: dict) -> "GroupDescriptor":
        flags = data.get("flags", {})
        unknown = set(flags) - set(FLAG_NAMES)
        if unknown:
            raise InconsistentFlags(f"unknown flags {sorted(unknown)}")
        algebra = lie_core.algebra_from_json(data["algebra"]) if data.get("algebra") else None
        return cls(name=str(data.get("name", "")), algebra=algebra, **flags)

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in FLAG_NAMES}

    def to_json(self) -> dict:
        out = {"name": self.name, "flags": self.flags()}
        if self.algebra is not None:
            out["algebra"] = lie_core.algebra_to_json(self.algebra)
        return out


@dataclass(frozen=True, eq=False)
class FTVerdict:
    status: str
    chain: list[tuple[str, str]]
    witness: SubalgebraWitness | None = None
    assumptions: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    name: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "chain": [{"rule": r, "citation": c} for r, c in self.chain],
            "witness": self.witness.to_json() if self.witness is not None else None,
            "assumptions": list(self.assumptions),
            "notes": list(self.notes),
        }


def _cite(*rules: str) -> list[tuple[str, str]]:
    return [(r, CITATIONS[r]) for r in rules]


def check_descriptor(d: GroupDescriptor) -> None:
    if d.finite and not (d.compact and d.discrete):
        raise InconsistentFlags("a finite group must be flagged compact and discrete", group=d.name)
    if d.compact and d.discrete and not d.finite:
        raise InconsistentFlags("a compact discrete group is finite", group=d.name)
    if d.simply_connected and not d.connected:
        raise InconsistentFlags("simply connected requires connected", group=d.name)
    if d.algebra is not None:
        if not d.connected or d.discrete:
            raise InconsistentFlags("an algebra describes a connected nondiscrete Lie group", group=d.name)
        if d.abelian != d.algebra.is_abelian():
            raise InconsistentFlags("abelian flag disagrees with the algebra", group=d.name)


def _search(g: LieAlgebra, seed: int, trials: int, witness, notes: list[str]):
    if witness is not None:
        return _verified(g, witness)
    try:
        return subalgebra_search.find_ax_b_or_grelaud(g, seed=seed, trials=trials)
    except (NoWitnessFound, NoncommutingPair) as exc:
        notes.append(f"subalgebra search: {exc.code}: {exc}")
        return None


def _verified(g: LieAlgebra, w) -> SubalgebraWitness:
    """Accept a caller-supplied witness (SubalgebraWitness or (kind, generators[, beta])) after checking it."""
    if isinstance(w, SubalgebraWitness):
        kind, gens, beta = w.kind, w.generators, w.beta
    else:
        kind, gens, *rest = w
        beta = rest[0] if rest else None
    gens = tuple(np.asarray([float(v) for v in gv]) for gv in gens)
    rep = subalgebra_search.verify_subalgebra_template(g, gens, kind, beta=beta)
    return SubalgebraWitness(kind, gens, rep.residual, rep.beta, None, None)


def classify(d: GroupDescriptor, seed: int = 0, trials: int = 64, witness=None) -> FTVerdict:
    """Run the rule cascade. ``witness`` optionally supplies a known subalgebra, checked before use."""
    check_descriptor(d)
    notes: list[str] = []
    if d.discrete:
        return FTVerdict(FT, _cite("discrete-onb"), notes=[RIESZ_NOTE], name=d.name)
    if d.compact:
        return FTVerdict(NOT_FT, _cite("compact-finite"), name=d.name)
    if d.IN_group:
        return FTVerdict(NOT_FT, _cite("in-group", "in-iwasawa"), name=d.name)
    if d.abelian:
        return FTVerdict(NOT_FT, _cite("abelian-nondiscrete", "in-group"), name=d.name)

    g = d.algebra
    if g is None:
        return FTVerdict(UNKNOWN, _cite("no-rule"), notes=["no Lie algebra supplied"], name=d.name)

    solvable = lie_core.is_solvable(g)
    nilpotent = lie_core.is_nilpotent(g)
    if solvable and not nilpotent and d.connected and d.simply_connected:
        exponential, offending = lie_core.is_exponential(g, seed=seed)
        if exponential:
            w = _search(g, seed, trials, witness, notes)
            if w is not None:
                chain = _cite("eigen-subalgebra", "exp-closed-subgroup", "typeI-nonunimodular",
                              "subgroup-lift", "exp-solvable-nonnilpotent")
                return FTVerdict(FT, chain, w, notes=notes, name=d.name)
        else:
            notes.append("not exponential: a root has nonzero purely imaginary values "
                         f"({offending.to_json()})")
    if nilpotent and not d.abelian and d.connected and d.simply_connected:
        return FTVerdict(OPEN, _cite("nilpotent-open"), notes=notes, name=d.name)
    if not solvable:
        w = _search(g, seed, trials, witness, notes)
        if w is not None:
            chain = _cite("eigen-subalgebra", "typeI-nonunimodular", "subgroup-lift")
            return FTVerdict(FT, chain, w, assumptions=[CLOSEDNESS_ASSUMPTION], notes=notes, name=d.name)
    return FTVerdict(UNKNOWN, _cite("no-rule"), notes=notes, name=d.name)


MATRIX_EXAMPLES = ("sl2", "so_p1", "so_pq", "shearlet_H", "T_n")


def classify_matrix_example(name: str, seed: int = 0, **params) -> FTVerdict:
    """Classify sl2, so_p1(p), so_pq(p, q), shearlet_H or T_n(n) built from explicit matrices."""
    from . import matrix_groups as mg

    notes = []
    witness = None
    if name == "sl2":
        g = mg.builtin_algebra("sl2")
        witness = (subalgebra_search.AX_B, [[0.5, 0, 0], [0, 1, 0]])
        d = GroupDescriptor.connected_lie("SL(2,R)", g, simply_connected=False)
        notes.append("witness (H/2, E) spans the upper triangular ax+b subgroup")
    elif name in ("so_p1", "so_pq"):
        p = _int_param(params, "p")
        q = 1 if name == "so_p1" else _int_param(params, "q")
        if p < 2 or q < 1 or p + q <= 2:
            raise BadParams("so(p,q) example needs p >= 2, q >= 1, p + q > 2", p=p, q=q)
        form = mg.IndefiniteForm(p, q)
        basis = mg.so_pq_basis(form)
        g = mg.span_to_lie_algebra(basis)
        a, x = mg.so_p1_pair(p) if q == 1 else mg.so_pq_pair(p, q)
        witness = (subalgebra_search.AX_B, [mg.span_coordinates(basis, a), mg.span_coordinates(basis, x)])
        d = GroupDescriptor.connected_lie(f"SO_0({p},{q})", g, simply_connected=False)
        notes.append(f"explicit witness ({a.name}, {x.name}) with [{a.name}, {x.name}] = {x.name}")
    elif name == "shearlet_H":
        g = mg.builtin_algebra("shearlet_H")
        d = GroupDescriptor.connected_lie("shearlet dilation group, identity component", g)
        notes.append("the dilation group has two components; the verdict is for the identity component")
        notes.append("[D, E12] = E12/2, so (2D, E12) satisfies the ax+b relation")
    elif name == "T_n":
        n = _int_param(params, "n")
        if n < 3:
            raise BadParams("T_n example needs n >= 3", n=n)
        g = mg.builtin_algebra("T_n", n=n)
        d = GroupDescriptor.connected_lie(f"T({n},R)", g)
    else:
        raise BadParams(f"unknown matrix example {name!r}; expected one of {MATRIX_EXAMPLES}")
    v = classify(d, seed=seed, witness=witness)
    return FTVerdict(v.status, v.chain, v.witness, v.assumptions, v.notes + notes, v.name)


def _int_param(params: dict, key: str) -> int:
    if key not in params:
        raise BadParams(f"missing parameter {key!r}")
    try:
        return int(params[key])
    except (TypeError, ValueError):
        raise BadParams(f"parameter {key!r} must be an integer") from None
