"""Command-line interface.

Reads statement files (see :mod:`cmcubics.grammar`), runs one kernel
operation or named verification, and prints one record per result:
``key: value`` lines in text mode, or one JSON object per line with --json.

Exit codes: 0 success / all checks pass, 1 a check failed (or a membership
test was negative), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog
from .deform import DeformationSetup, lift_check, tangent_space
from .grammar import Document, ParseError, parse_document, parse_polynomial
from .groebner import Ideal
from .idealops import (ModulePresentation, NonHomogeneousError, fitting_ideal, hilbert,
                       irrelevant_ideal, quotient, saturate)
from .polyring import GF, LEX, QQ, DEGREVLEX, Field, PolyMatrix, format_polynomial


class UsageError(Exception):
    pass


def parse_field(text: str) -> Field:
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        try:
            return GF(int(text[3:]))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    raise argparse.ArgumentTypeError(f"field must be 'q' or 'fp:<prime>', got {text!r}")


def _load(path: str, fld: Field | None) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    doc = parse_document(text, fld)
    if doc.ring is None:
        raise UsageError(f"{path}: no ring statement")
    return doc


def _need_ideal(doc: Document, path: str) -> Ideal:
    if not doc.ideal:
        raise UsageError(f"{path}: no ideal statement")
    return Ideal(doc.ring, doc.ideal)


def _polys(text: str, doc: Document):
    out = []
    for piece in text.split(","):
        if piece.strip():
            out.append(parse_polynomial(piece, doc.ring))
    return out


def _fmt_ideal(I: Ideal) -> str:
    return "(" + ", ".join(format_polynomial(g) for g in I.generators) + ")"


def _fmt_matrix(M: PolyMatrix) -> str:
    return "[" + "; ".join(", ".join(format_polynomial(e) for e in M.row(i)) for i in range(M.rows)) + "]"


class Emitter:
    def __init__(self, as_json: bool, out=None):
        self.as_json = as_json
        self.out = out or sys.stdout

    def record(self, fields: dict):
        if self.as_json:
            self.out.write(json.dumps(fields, sort_keys=False) + "\n")
        else:
            for k, v in fields.items():
                if isinstance(v, list):
                    self.out.write(f"{k}:\n")
                    for item in v:
                        if isinstance(item, (list, tuple)) and len(item) == 2:
                            self.out.write(f"  {item[0]}: {item[1]}\n")
                        else:
                            self.out.write(f"  {item}\n")
                else:
                    self.out.write(f"{k}: {v}\n")
            self.out.write("\n")
        self.out.flush()


# ---------------------------------------------------------------------------
# subcommands


def cmd_gb(args, em: Emitter) -> int:
    doc = _load(args.file, args.field)
    I = _need_ideal(doc, args.file)
    order = LEX if args.order == "lex" else DEGREVLEX
    stats: dict = {}
    G = I.groebner_basis(order, stats=stats)
    em.record({"command": "gb", "field": catalog.field_name(doc.ring.field), "order": args.order,
               "basis": [format_polynomial(g, order) for g in G],
               "pairs": stats.get("pairs", 0), "zero_reductions": stats.get("zero_reductions", 0)})
    return 0


def cmd_member(args, em: Emitter) -> int:
    doc = _load(args.file, args.field)
    I = _need_ideal(doc, args.file)
    f = parse_polynomial(args.poly, doc.ring)
    nf = I.reduce(f)
    em.record({"command": "member", "polynomial": format_polynomial(f), "member": not nf,
               "normal_form": format_polynomial(nf)})
    return 0 if not nf else 1


def cmd_hilbert(args, em: Emitter) -> int:
    doc = _load(args.file, args.field)
    hd = hilbert(_need_ideal(doc, args.file), args.depth)
    em.record({"command": "hilbert", "polynomial": hd.polynomial_str(),
               "series_numerator": hd.series_numerator, "nvars": hd.nvars,
               "function_table": [[d, v] for d, v in hd.function_table] if args.json
               else [f"{d} -> {v}" for d, v in hd.function_table],
               "regularity_index": hd.regularity_index})
    return 0


def cmd_fitting(args, em: Emitter) -> int:
    doc = _load(args.file, args.field)
    if not doc.matrices:
        raise UsageError(f"{args.file}: no matrix statement")
    n = args.index if args.index is not None else doc.fitting
    fitt = fitting_ideal(ModulePresentation(doc.ring, doc.matrices[0]), n)
    rec = {"command": "fitting", "index": n, "generators": _fmt_ideal(fitt),
           "groebner_basis": [format_polynomial(g) for g in fitt.groebner_basis()]}
    if fitt.is_homogeneous() and not fitt.is_zero():
        rec["hilbert_polynomial"] = hilbert(fitt).polynomial_str()
    em.record(rec)
    return 0


def cmd_tangent(args, em: Emitter) -> int:
    doc = _load(args.file, args.field)
    rep = tangent_space(_need_ideal(doc, args.file))
    rec = {"command": "tangent", "dimension": rep.dimension}
    if args.basis:
        rec["basis"] = [str(v) for v in rep.basis]
    em.record(rec)
    return 0


def cmd_liftcheck(args, em: Emitter) -> int:
    doc = _load(args.file, args.field)
    ring = doc.ring
    if doc.vector is not None:
        if not doc.matrices:
            raise UsageError(f"{args.file}: a vector needs a relation matrix")
        G, R = PolyMatrix(ring, [doc.vector]), doc.matrices[0]
    elif len(doc.matrices) >= 2:
        G, R = doc.matrices[0], doc.matrices[1]
    else:
        raise UsageError(f"{args.file}: need 'vector' plus 'matrix', or two matrices")
    setup = DeformationSetup(ring, G, R, Ideal(ring, doc.obstruction), tuple(doc.deformation), doc.truncate)
    try:
        rep = lift_check(setup)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    em.record({"command": "liftcheck", "product": _fmt_matrix(rep.product),
               "residue": _fmt_matrix(rep.residue),
               "obstruction": _fmt_ideal(setup.obstruction),
               "zero_mod_obstruction": rep.zero_mod_obstruction})
    return 0 if rep.zero_mod_obstruction else 1


def cmd_saturate(args, em: Emitter) -> int:
    doc = _load(args.file, args.field)
    I = _need_ideal(doc, args.file)
    J = Ideal(doc.ring, _polys(args.by, doc)) if args.by else irrelevant_ideal(doc.ring)
    sat = saturate(I, J)
    em.record({"command": "saturate", "by": _fmt_ideal(J), "result": [format_polynomial(g) for g in sat.groebner_basis()],
               "saturated_input": I.contains_ideal(sat)})
    return 0


def cmd_quotient(args, em: Emitter) -> int:
    doc = _load(args.file, args.field)
    I = _need_ideal(doc, args.file)
    J = Ideal(doc.ring, _polys(args.by, doc))
    Q = quotient(I, J)
    em.record({"command": "quotient", "by": _fmt_ideal(J), "result": [format_polynomial(g) for g in Q.groebner_basis()],
               "strictly_larger": not I.contains_ideal(Q)})
    return 0


def cmd_verify(args, em: Emitter) -> int:
    try:
        todo = catalog.plan(args.check, args.field)
    except KeyError:
        sys.stderr.write(f"unknown check {args.check!r}; available checks:\n")
        for cid, c in catalog.CHECKS.items():
            sys.stderr.write(f"  {cid:28s} {c.description}\n")
        return 2
    failed = 0
    for cid, fld in todo:
        rep = catalog.run_check(cid, fld, args.seed)
        failed += not rep.passed
        if args.json:
            em.record(rep.as_dict())
        else:
            em.record({"check": rep.check_id, "field": rep.field, "status": rep.status,
                       "elapsed": f"{rep.elapsed:.3f}s", "details": rep.details})
    if not args.json:
        em.record({"summary": f"{len(todo) - failed}/{len(todo)} passed"})
    return 1 if failed else 0


def cmd_list(args, em: Emitter) -> int:
    for cid, c in catalog.CHECKS.items():
        em.record({"check": cid, "description": c.description,
                   "characteristic_sensitive": c.characteristic_sensitive})
    return 0


def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    def d(v):
        return argparse.SUPPRESS if suppress else v

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=parse_field, default=d(None),
                        help="coefficient field: q or fp:<prime> (default: as declared in the file, q for verify)")
    common.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks (default 0)")
    common.add_argument("--json", action="store_true", default=d(False), help="emit one JSON object per record")
    return common


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cmcubics", description=__doc__.splitlines()[0],
                                 parents=[_common_flags(False)])
    # flags may also follow the subcommand; SUPPRESS keeps them from resetting the top-level values
    common = _common_flags(True)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gb", parents=[common], help="reduced Groebner basis of the ideal in a file")
    p.add_argument("file")
    p.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    p.set_defaults(fn=cmd_gb)

    p = sub.add_parser("member", parents=[common], help="ideal membership of a polynomial")
    p.add_argument("file")
    p.add_argument("poly")
    p.set_defaults(fn=cmd_member)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert series, function and polynomial")
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=8, help="minimum table depth (default 8); extended to cover the stable range")
    p.set_defaults(fn=cmd_hilbert)

    p = sub.add_parser("fitting", parents=[common], help="Fitting ideal of the first matrix (columns are relations)")
    p.add_argument("file")
    p.add_argument("--index", type=int, default=None, help="Fitting index n (default: file's 'fitting', else 0)")
    p.set_defaults(fn=cmd_fitting)

    p = sub.add_parser("tangent", parents=[common], help="degree-0 graded Hom(I, S/I) dimension")
    p.add_argument("file")
    p.add_argument("--basis", action="store_true", help="also print a basis")
    p.set_defaults(fn=cmd_tangent)

    p = sub.add_parser("liftcheck", parents=[common], help="multiply perturbed generators by relations")
    p.add_argument("file")
    p.set_defaults(fn=cmd_liftcheck)

    p = sub.add_parser("saturate", parents=[common], help="saturation (default: by the irrelevant ideal)")
    p.add_argument("file")
    p.add_argument("--by", default=None, help="comma separated generators of J")
    p.set_defaults(fn=cmd_saturate)

    p = sub.add_parser("quotient", parents=[common], help="colon ideal (I : J)")
    p.add_argument("file")
    p.add_argument("--by", required=True, help="comma separated generators of J")
    p.set_defaults(fn=cmd_quotient)

    p = sub.add_parser("verify", parents=[common], help="run a named check, or 'all'")
    p.add_argument("check")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("list", parents=[common], help="list the verification catalog")
    p.set_defaults(fn=cmd_list)
    return ap


def run(argv: list[str] | None = None, out=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    em = Emitter(args.json, out)
    try:
        return args.fn(args, em)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 2
    except (UsageError, NonHomogeneousError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    try:
        code = run()
    except BrokenPipeError:
        # downstream closed the pipe (e.g. `| head`); silence the interpreter's flush at exit
        sys.stdout = open(os.devnull, "w")
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
