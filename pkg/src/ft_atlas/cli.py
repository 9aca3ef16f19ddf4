"""Command-line front end: ``ft-atlas <command> [options]``.

Exit codes: 0 success, 1 domain error (validation, frames, classification),
2 usage or input-parse error (including exceeded caps).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import amalgam_analysis, finite_frames, ft_classifier, lie_core, matrix_groups, pointset_geometry
from . import subalgebra_search
from .errors import AtlasError, CapExceeded, ParseError

MAX_GROUP_ORDER = 128
MAX_N = 200
FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int
    tol: float
    fmt: str
    out: str | None
    max_group_order: int = MAX_GROUP_ORDER
    max_n: int = MAX_N


# ---------------------------------------------------------------------------
# input helpers


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", path=path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        line = text.splitlines()[exc.lineno - 1] if text.splitlines() else ""
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}", path=path, line=exc.lineno,
                         column=exc.colno, text=line.strip()) from None


def _int_list(text: str | None) -> list[int] | None:
    if text is None:
        return None
    if not text.strip():
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"expected comma-separated numbers, got {text!r}") from None


def _vector(data) -> np.ndarray:
    """A list of reals, or of [re, im] pairs."""
    if not isinstance(data, list):
        raise ParseError("vector must be a JSON list")
    out = []
    for v in data:
        if isinstance(v, list) and len(v) == 2 and all(_is_number(t) for t in v):
            out.append(complex(float(v[0]), float(v[1])))
        elif _is_number(v):
            out.append(complex(v))
        else:
            raise ParseError(f"bad vector entry {v!r}")
    return np.array(out)


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _points(data) -> list[tuple]:
    """Point lists: numbers, or lists of numbers and fraction strings like "1/3"."""
    if not isinstance(data, list):
        raise ParseError("'points' must be a list")
    out = []
    for p in data:
        coords = p if isinstance(p, list) else [p]
        try:
            out.append(tuple(Fraction(c) if isinstance(c, str) else float(c) for c in coords
                             if _is_number(c) or isinstance(c, str)))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad point {p!r}") from None
        if len(out[-1]) != len(coords) or not coords:
            raise ParseError(f"bad point {p!r}")
    return out


def _family_order(data: dict) -> int:
    fam = data.get("family")
    if fam is None:
        table = data.get("table")
        return len(table) if isinstance(table, list) else int(data.get("order", 0))
    try:
        if fam == "cyclic":
            return int(data["n"])
        if fam == "dihedral":
            return 2 * int(data["k"])
        if fam == "symmetric":
            k = int(data["k"])
            return int(np.prod(np.arange(1, k + 1))) if k <= 8 else MAX_GROUP_ORDER + 1
        if fam == "heisenberg_mod":
            return int(data["p"]) ** 3
    except (KeyError, TypeError, ValueError):
        raise ParseError(f"family {fam!r} is missing its parameter") from None
    return 0


def _complex_json(v: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args, cfg: RunConfig) -> dict:
    data = _read_json(args.file)
    if isinstance(data, dict) and "flags" in data:
        desc = ft_classifier.GroupDescriptor.from_json(data)
        g = desc.algebra
    else:
        g = lie_core.algebra_from_json(data, tol=cfg.tol)
        desc = ft_classifier.GroupDescriptor.connected_lie(str(data.get("name", "")), g)
    report: dict = {"name": desc.name}
    if g is not None:
        lcs, ds = lie_core.lower_central_series(g), lie_core.derived_series(g)
        solvable = ds.terminal_dim == 0
        report.update({
            "dim": g.dim,
            "basis": list(g.basis_names),
            "lower_central_dims": lcs.dims,
            "derived_dims": ds.dims,
            "nilpotent": lcs.terminal_dim == 0,
            "solvable": solvable,
            "engel": lie_core.engel_spot_check(g, seed=cfg.seed),
        })
        if solvable:
            rd = lie_core.complexified_roots(g, seed=cfg.seed)
            exp, offending = lie_core.is_exponential(g, rd)
            report.update({
                "roots": [r.to_json() for r in rd.roots],
                "root_residual": rd.residual,
                "exponential": exp,
                "offending_root": offending.to_json() if offending is not None else None,
                "type_R": lie_core.is_type_R(g, rd),
            })
        try:
            report["witness"] = subalgebra_search.find_ax_b_or_grelaud(g, seed=cfg.seed).to_json()
        except AtlasError as exc:
            report["witness"] = {"error": exc.code, "message": str(exc)}
    report["verdict"] = ft_classifier.classify(desc, seed=cfg.seed).to_json()
    return report


def cmd_frame(args, cfg: RunConfig) -> dict:
    gdata = _read_json(args.group)
    if not isinstance(gdata, dict):
        raise ParseError("group file must hold a JSON object")
    order = _family_order(gdata)
    if order > cfg.max_group_order:
        raise CapExceeded(f"group order {order} exceeds the cap {cfg.max_group_order}")
    g = finite_frames.group_from_json(gdata)
    phi = finite_frames.as_vector(g, _vector(_read_json(args.vector)))
    shifts = _int_list(args.shifts)
    rep = finite_frames.frame_report(g, phi, shifts, tol=cfg.tol)
    out = {"group_order": g.order, "shifts": shifts if shifts is not None else list(range(g.order)),
           "report": rep.to_json()}
    if args.tight:
        out["tight_generator"] = _complex_json(finite_frames.canonical_tight_generator(g, phi, tol=cfg.tol))
    return out


def cmd_heisenberg_demo(args, cfg: RunConfig) -> dict:
    if args.N > cfg.max_n:
        raise CapExceeded(f"N = {args.N} exceeds the cap {cfg.max_n}")
    return pointset_geometry.heisenberg_demo(args.N)


def cmd_partition(args, cfg: RunConfig) -> dict:
    data = _read_json(args.file)
    if not isinstance(data, dict) or "points" not in data:
        raise ParseError("point file needs a 'points' list")
    space = data.get("space", pointset_geometry.EUCLIDEAN)
    coords = _points(data["points"])
    if space == pointset_geometry.HEISENBERG:
        if any(len(p) != 3 for p in coords):
            raise ParseError("Heisenberg points need three coordinates")
        pts = pointset_geometry.heisenberg_set(coords)
    elif space == pointset_geometry.EUCLIDEAN:
        pts = pointset_geometry.euclidean_set(coords)
    else:
        raise ParseError(f"unknown space {space!r}")
    part = pointset_geometry.greedy_partition(pts, args.s)
    out = part.to_json()
    out["space"] = pts.space
    out["points"] = len(pts)
    out["parts_separated"] = [pointset_geometry.is_separated(p, args.s) for p in part.parts]
    return out


def cmd_amalgam_demo(args, cfg: RunConfig) -> dict:
    rows = amalgam_analysis.estimate_violation_demo(_float_list(args.widths))
    return {"rows": [r.to_json() for r in rows]}


def _sopq_row(p: int, q: int, seed: int) -> dict:
    form = matrix_groups.IndefiniteForm(p, q)
    pairs = {"B,Y": matrix_groups.so_pq_pair(p, q)}
    if q == 1:
        pairs["A,X"] = matrix_groups.so_p1_pair(p)
    checks = {}
    for label, (a, x) in pairs.items():
        comm = matrix_groups.commutator(a.matrix, x.matrix)
        checks[label] = {
            "bracket_exact": bool((comm == x.matrix).all()),
            "members": bool(matrix_groups.so_pq_membership(a.matrix, form).member
                            and matrix_groups.so_pq_membership(x.matrix, form).member),
        }
    verdict = ft_classifier.classify_matrix_example("so_pq", seed=seed, p=p, q=q)
    return {"p": p, "q": q, "checks": checks, "status": verdict.status,
            "witness_residual": verdict.witness.residual if verdict.witness else None}


def cmd_sopq(args, cfg: RunConfig) -> dict:
    if args.sweep:
        rows = [_sopq_row(p, q, cfg.seed) for p in range(2, 9) for q in range(1, 9) if p + q > 2]
        return {"rows": rows}
    if args.p is None or args.q is None:
        raise ParseError("sopq needs --p and --q, or --sweep")
    row = _sopq_row(args.p, args.q, cfg.seed)
    b, y = matrix_groups.so_pq_pair(args.p, args.q)
    row["matrices"] = {"B": matrix_groups.matrix_to_json(b.matrix), "Y": matrix_groups.matrix_to_json(y.matrix)}
    if args.q == 1:
        a, x = matrix_groups.so_p1_pair(args.p)
        row["matrices"].update({"A": matrix_groups.matrix_to_json(a.matrix),
                                "X": matrix_groups.matrix_to_json(x.matrix)})
    return row


def cmd_classify_example(args, cfg: RunConfig) -> dict:
    params = {k: getattr(args, k) for k in ("p", "q", "n") if getattr(args, k) is not None}
    return ft_classifier.classify_matrix_example(args.name, seed=cfg.seed, **params).to_json()


# ---------------------------------------------------------------------------
# output


def _table(command: str, report: dict) -> tuple[list[str], list[list]]:
    if command == "amalgam-demo":
        cols = ["width", "step", "l1", "l2", "ratio", "predicted", "relative_error"]
        return cols, [[r[c] for c in cols] for r in report["rows"]]
    if command == "sopq" and "rows" in report:
        cols = ["p", "q", "status", "witness_residual", "bracket_exact", "members"]
        rows = []
        for r in report["rows"]:
            ok = all(c["bracket_exact"] for c in r["checks"].values())
            mem = all(c["members"] for c in r["checks"].values())
            rows.append([r["p"], r["q"], r["status"], r["witness_residual"], ok, mem])
        return cols, rows
    if command == "partition":
        rows = [[i, part] for part, idx in enumerate(report["indices"]) for i in idx]
        return ["index", "part"], sorted(rows)
    return ["key", "value"], [[k, json.dumps(v, sort_keys=True)] for k, v in sorted(report.items())]


def render(command: str, report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    cols, rows = _table(command, report)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        w.writerows(rows)
        return buf.getvalue()
    return "".join("  ".join(str(v) for v in row) + "\n" for row in [cols] + rows)


COMMANDS = {
    "analyze": cmd_analyze,
    "frame": cmd_frame,
    "heisenberg-demo": cmd_heisenberg_demo,
    "partition": cmd_partition,
    "amalgam-demo": cmd_amalgam_demo,
    "sopq": cmd_sopq,
    "classify-example": cmd_classify_example,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="tolerance (default 1e-9)")
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="ft-atlas", parents=[common],
                                     description="Frames of translates: Lie algebra classification, "
                                                 "finite-group frames and Heisenberg geometry.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="structure report and FT verdict for an algebra")
    p.add_argument("file", help="algebra JSON, or a group descriptor with 'flags' and 'algebra'")

    p = sub.add_parser("frame", parents=[common], help="frame report for translates on a finite group")
    p.add_argument("group", help="group JSON: {'order', 'table'} or {'family', ...}")
    p.add_argument("vector", help="JSON list of reals or [re, im] pairs")
    p.add_argument("--shifts", help="comma-separated element indices (default: the whole group)")
    p.add_argument("--tight", action="store_true", help="also output the canonical tight generator")

    p = sub.add_parser("heisenberg-demo", parents=[common], help="separated set whose inverse is not")
    p.add_argument("--N", type=int, default=10)

    p = sub.add_parser("partition", parents=[common], help="greedy split into separated subsets")
    p.add_argument("file", help="point JSON: {'space': 'euclidean'|'heisenberg', 'points': [...]}")
    p.add_argument("--s", type=float, required=True, help="separation radius")

    p = sub.add_parser("amalgam-demo", parents=[common], help="||f||_2/||f||_1 for shrinking indicators")
    p.add_argument("--widths", default="1,0.1,0.01,0.0001")

    p = sub.add_parser("sopq", parents=[common], help="so(p,q) ax+b generators and verdict")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--sweep", action="store_true", help="all 2 <= p <= 8, 1 <= q <= 8, p + q > 2")

    p = sub.add_parser("classify-example", parents=[common], help="verdict for a bundled matrix group")
    p.add_argument("name", choices=ft_classifier.MATRIX_EXAMPLES)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, getattr(args, "seed", 0), getattr(args, "tol", lie_core.DEFAULT_TOL),
                    getattr(args, "format", "json"), getattr(args, "out", None))
    try:
        report = COMMANDS[args.command](args, cfg)
    except (ParseError, CapExceeded) as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True) + "\n")
        return 2
    except AtlasError as exc:
        sys.stderr.write(json.dumps(exc.to_json(), sort_keys=True) + "\n")
        return 1
    text = render(args.command, report, cfg.fmt)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
