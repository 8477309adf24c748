"""Command line interface.

Exit codes: 0 success, 1 a negative answer ("none found", "inconclusive"),
2 invalid input or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import report
from .conditions import verdict
from .forms import TernaryForm, chevalley_solve
from .labels import DEFAULT_BOUND, LabelError, gram_rank3, gram_rank4, twisted_obstruction
from .lattice import LatticeError, from_json
from .markman import DEFAULT_RADII, theoremA_verdict

log = logging.getLogger("hassett")


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, default=str)


def _radii(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad radius list {text!r}")
    if not vals or any(v < 1 for v in vals) or list(vals) != sorted(vals):
        raise argparse.ArgumentTypeError("radius list must be increasing positive integers")
    return vals


def cmd_cond(args) -> int:
    if args.d < 1:
        raise UsageError(f"d must be positive, got {args.d}")
    v = verdict(args.d, args.a_max).to_json()
    if args.format == "csv":
        row = {"d": v["d"], "star": v["star"], "hilb": v["hilb"]["status"] == "satisfied",
               "moduli": v["moduli"], "twisted": v["twisted"], "dagger": v["dagger"]}
        _emit(report.rows_to_csv([row], list(row)), args.out)
    else:
        _emit(_dump(v), args.out)
    return 0


def cmd_labels(args) -> int:
    rows = [r.as_dict() for r in report.labels_table(args.d1, args.d2, args.d3, args.bound, args.a_max)]
    if args.format == "csv":
        cols = report.LABEL_COLUMNS_3 if args.d3 is None else report.LABEL_COLUMNS_4
        _emit(report.rows_to_csv(rows, cols), args.out)
    else:
        ds = [args.d1, args.d2] + ([args.d3] if args.d3 is not None else [])
        _emit(_dump({"schema": 1, "ds": ds, "bound": args.bound, "labels": rows}), args.out)
    return 0


def cmd_gram(args) -> int:
    if args.d3 is None:
        lam = args.lam if args.lam is not None else -1 if args.d1 % 6 == args.d2 % 6 == 2 else 0
        lat = gram_rank3(args.d1, args.d2, lam)
        extra = {"lambda": lam}
    else:
        lat = gram_rank4(args.d1, args.d2, args.d3)
        extra = {}
    _emit(_dump({"schema": 1, **lat.to_json(), **extra}), args.out)
    return 0


def cmd_obstruct(args) -> int:
    cert = twisted_obstruction(args.d1, args.d2)
    if cert is None:
        _emit(_dump({"schema": 1, "d1": args.d1, "d2": args.d2, "certificate": None,
                     "note": "none found; not a claim that some label satisfies the condition"}),
              args.out)
        return 1
    _emit(_dump(cert.to_json()), args.out)
    return 0


def cmd_chevalley(args) -> int:
    coeffs = list(args.coeffs)
    if len(coeffs) not in (3, 6):
        raise UsageError("give 3 (diagonal) or 6 coefficients: yy zz ww [yz yw zw]")
    form = TernaryForm(*coeffs)
    sol = chevalley_solve(form, args.p)
    _emit(_dump({"schema": 1, "form": form.to_json(), "p": args.p, "solution": list(sol),
                 "value": form(*sol)}), args.out)
    return 0


def cmd_embed(args) -> int:
    try:
        with open(args.gram) as f:
            ns = from_json(f.read())
    except OSError as e:
        raise UsageError(str(e))
    v = theoremA_verdict(ns, args.n, args.radius)
    _emit(_dump(v.to_json()), args.out)
    return 0 if v.certified else 1


def cmd_scan(args) -> int:
    if not args.out:
        raise UsageError("scan needs --out FILE")
    if args.d_min > args.d_max:
        raise UsageError("--d-min must not exceed --d-max")
    n = 0
    for row in report.run_scan(args.d_min, args.d_max, args.bound, args.out, args.jobs):
        n += 1
        log.info("cell (%s, %s): all_fail=%s cert=%s", row["d1"], row["d2"],
                 row["all_fail_twisted"], row["certificate_p"])
    print(f"wrote {n} new cells to {args.out}", file=sys.stderr)
    return 0


def cmd_examples(args) -> int:
    rows = report.example_rows()
    if args.format == "json":
        text = _dump({"schema": 1, "rows": rows})
    elif args.format == "csv":
        flat = [{"name": r["name"], "status": r["status"], "detail": json.dumps(r["detail"], default=str)}
                for r in rows]
        text = report.rows_to_csv(flat, ["name", "status", "detail"])
    else:
        text = report.render_text(rows)
    _emit(text, args.out)
    problems = report.compare_golden(rows, report.load_golden(args.golden))
    for p in problems:
        print(f"golden mismatch: {p}", file=sys.stderr)
    return 0 if not problems else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hassett", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True):
        if fmt:
            sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--out", metavar="FILE")

    sp = sub.add_parser("cond", help="evaluate all conditions for one d")
    sp.add_argument("d", type=int)
    sp.add_argument("--a-max", type=int, default=100)
    common(sp)
    sp.set_defaults(func=cmd_cond)

    sp = sub.add_parser("labels", help="enumerate labels of C_d1 & C_d2 [& C_d3]")
    sp.add_argument("d1", type=int)
    sp.add_argument("d2", type=int)
    sp.add_argument("d3", type=int, nargs="?")
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    sp.add_argument("--a-max", type=int, default=100)
    common(sp)
    sp.set_defaults(func=cmd_labels)

    sp = sub.add_parser("gram", help="canonical witness Gram matrix")
    sp.add_argument("d1", type=int)
    sp.add_argument("d2", type=int)
    sp.add_argument("d3", type=int, nargs="?")
    sp.add_argument("--lambda", dest="lam", type=int)
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_gram)

    sp = sub.add_parser("obstruct", help="modular certificate that no label is twisted-moduli")
    sp.add_argument("d1", type=int)
    sp.add_argument("d2", type=int)
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_obstruct)

    sp = sub.add_parser("chevalley", help="nontrivial zero of a ternary form mod p")
    sp.add_argument("coeffs", type=int, nargs="+", metavar="C", help="yy zz ww [yz yw zw]")
    sp.add_argument("--p", type=int, required=True)
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_chevalley)

    sp = sub.add_parser("embed", help="isotropic class and U(k^2) certificate for NS + <2n-2>")
    sp.add_argument("gram", metavar="FILE", help='JSON {"rank": r, "gram": [[...], ...]}')
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--radius", type=_radii, default=DEFAULT_RADII)
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("scan", help="resumable grid over (d1, d2)")
    sp.add_argument("--d-min", type=int, default=8)
    sp.add_argument("--d-max", type=int, default=60)
    sp.add_argument("--bound", type=int, default=10)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("examples", help="reproduce the worked examples")
    sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
    sp.add_argument("--golden", metavar="FILE")
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_examples)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream reader closed early (e.g. `| head`); not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except (UsageError, LabelError, LatticeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
