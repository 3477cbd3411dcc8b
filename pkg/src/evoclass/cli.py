"""``evoclass`` command line.

Input files are JSON::

    {"domain": "Z", "matrix": [["2", "3"], ["3", "5"]]}

Reports go to stdout as JSON (DOT for ``graph``), diagnostics to stderr.
Exit status: 0 success (including "no" and "unsupported" answers), 2 bad
input, 3 precondition violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import classify as cl
from . import moduli
from .errors import EvoError, NotPerfect, NotQuasiperfect, ParseError, Unsupported
from .evalg import EvolutionAlgebra, det, is_perfect, is_quasiperfect
from .graph import graph_of, to_dot
from .ring import Capability, Domain, elements_in_box, enumerate_units, parse_domain

MAX_BOUND = 6


class InputError(Exception):
    pass


class PreconditionError(Exception):
    pass


def load_spec(path: str) -> EvolutionAlgebra:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    return spec_to_algebra(data, path)


def spec_to_algebra(data, source="<input>") -> EvolutionAlgebra:
    if not isinstance(data, dict) or "domain" not in data or "matrix" not in data:
        raise InputError(f"{source}: expected an object with 'domain' and 'matrix'")
    matrix = data["matrix"]
    if (
        not isinstance(matrix, list)
        or len(matrix) != 2
        or any(not isinstance(r, list) or len(r) != 2 for r in matrix)
    ):
        raise InputError(f"{source}: matrix must be 2x2")
    try:
        domain = parse_domain(str(data["domain"]))
        rows = []
        for row in matrix:
            entries = []
            for x in row:
                if isinstance(x, bool) or not isinstance(x, (str, int)):
                    raise InputError(f"{source}: matrix entries must be strings")
                entries.append(domain(str(x)))
            rows.append(tuple(entries))
    except ParseError as exc:
        raise InputError(f"{source}: {exc}") from None
    return EvolutionAlgebra(domain, tuple(rows))


def matrix_strings(rows):
    return [[str(x) for x in row] for row in rows]


def class_report(c: cl.CanonicalClass) -> dict:
    out = {
        "family": c.family,
        "params": {k: str(v) for k, v in c.named_params().items()},
        "moduli_tag": c.moduli_tag,
    }
    if c.note:
        out["note"] = c.note
    return out


def witness_report(w) -> dict:
    return {
        "perm": [p + 1 for p in w.perm],
        "k1": str(w.units[0]),
        "k2": str(w.units[1]),
    }


def _perfect(a: EvolutionAlgebra) -> EvolutionAlgebra:
    if not is_perfect(a):
        raise PreconditionError(f"not perfect: det = {det(a)} is not a unit")
    return a


def cmd_check(args):
    a = load_spec(args.file)
    return {"perfect": is_perfect(a), "quasiperfect": is_quasiperfect(a), "det": str(det(a))}


def cmd_classify(args):
    a = _perfect(load_spec(args.file))
    return class_report(cl.classify(a))


def cmd_iso(args):
    a, b = load_spec(args.file_a), load_spec(args.file_b)
    if a.domain != b.domain:
        raise PreconditionError(
            f"domains differ: {a.domain.descriptor} vs {b.domain.descriptor}"
        )
    ans = cl.iso(_perfect(a), _perfect(b))
    out = {"isomorphic": ans.verdict.value}
    if ans.witness is not None:
        out["witness"] = witness_report(ans.witness)
    if ans.reason:
        out["reason"] = ans.reason
    return out


def cmd_graph(args):
    a = load_spec(args.file)
    if not is_quasiperfect(a):
        raise PreconditionError("not quasiperfect: det = 0")
    g = graph_of(a)
    if args.json:
        return {
            "vertices": [1, 2],
            "edges": [{"from": u, "to": v, "color": c.value} for u, v, c in g.sorted_edges()],
        }
    return to_dot(g)


def cmd_orbit(args):
    a = _perfect(load_spec(args.file))
    c = cl.classify(a)
    try:
        members = moduli.orbit(c)
    except Unsupported as exc:
        return {"status": "unsupported", "family": c.family, "reason": str(exc)}
    rows = sorted(
        (m.matrix() for m in members),
        key=lambda m: tuple(x.sort_key() for row in m for x in row),
    )
    return {
        "status": "ok",
        "family": c.family,
        "orbit": [matrix_strings(m) for m in rows],
    }


def census(domain: Domain, bound: int) -> dict:
    """Scan every matrix with entries from ``[-bound, bound]`` (images in the domain)."""
    elems = elements_in_box(domain, bound)
    finite = domain.has(Capability.FINITE_UNITS)
    units = list(enumerate_units(domain)) if finite else None
    scanned = 0
    perfect = []
    for p in elems:
        for q in elems:
            for r in elems:
                for s in elems:
                    scanned += 1
                    a = EvolutionAlgebra(domain, ((p, q), (r, s)))
                    if is_perfect(a):
                        perfect.append(a)
    classes = [cl.classify(a) for a in perfect]
    counts = Counter(c.family for c in classes)

    # equal canonical classes are isomorphic; merge the rest pairwise
    reps: dict[cl.CanonicalClass, EvolutionAlgebra] = {}
    for a, c in zip(perfect, classes):
        reps.setdefault(c, a)
    iso_classes = 0
    merged: dict[str, list[EvolutionAlgebra]] = {}
    for c, a in reps.items():
        if units is not None or cl.is_complete_invariant(c):
            iso_classes += 1
            continue
        bucket = merged.setdefault(c.family, [])
        if not any(cl.iso(b, a) for b in bucket):
            bucket.append(a)
            iso_classes += 1

    return {
        "domain": domain.descriptor,
        "bound": bound,
        "scanned": scanned,
        "total_perfect": len(perfect),
        "class_counts": {f: counts[f] for f in cl.FAMILIES if counts[f]},
        "iso_class_count": iso_classes,
    }


def cmd_enumerate(args):
    try:
        domain = parse_domain(args.domain)
    except ParseError as exc:
        raise InputError(str(exc)) from None
    if not 0 <= args.bound <= MAX_BOUND:
        raise InputError(f"--bound must be between 0 and {MAX_BOUND}")
    return census(domain, args.bound)


def cmd_dim1(args):
    try:
        domain = parse_domain(args.domain)
        d, e = domain(args.d), domain(args.e)
    except ParseError as exc:
        raise InputError(str(exc)) from None
    ans = cl.iso_dim1(d, e)
    out = {
        "isomorphic": ans.verdict.value,
        "classes": [cl.classify_dim1(d).family, cl.classify_dim1(e).family],
    }
    if ans.witness is not None:
        out["witness"] = str(ans.witness)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoclass",
        description="Perfect two-dimensional evolution algebras over integral domains.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output (graph: instead of DOT)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="perfection and quasiperfection")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="family and normal form")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("iso", parents=[common], help="decide isomorphism of two algebras")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("graph", parents=[common], help="colored graph as DOT")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="DOT output (default)")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("orbit", parents=[common], help="orbit of the normal form parameters")
    p.add_argument("file")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("enumerate", parents=[common], help="census of small structure matrices")
    p.add_argument("--domain", default="Z")
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("dim1", parents=[common], help="isomorphism of one-dimensional algebras")
    p.add_argument("--domain", default="Z")
    p.add_argument("d")
    p.add_argument("e")
    p.set_defaults(func=cmd_dim1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"evoclass: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, NotPerfect, NotQuasiperfect) as exc:
        print(f"evoclass: {exc}", file=sys.stderr)
        return 3
    except EvoError as exc:
        print(f"evoclass: {exc}", file=sys.stderr)
        return 3
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        sys.stdout.write(json.dumps(result, ensure_ascii=False, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
