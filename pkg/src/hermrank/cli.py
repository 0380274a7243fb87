"""Command-line interface: ``hermrank <command> ...``.

Exit codes: 0 success or verdict holds, 1 indeterminate, 2 hypothesis
violated, 3 parse or usage error, 4 internal check failed.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from hermrank import kernels
from hermrank.coeffmatrix import build_matrix, rank_of, rank_factorize, signature_decompose
from hermrank.gallery import run_gallery
from hermrank.normalform import NormalFormError, classify_linear_form, find_zero, reduce_full_rank
from hermrank.parsing import ParseError, field_name, parse_field, parse_poly, parse_recipe
from hermrank.poly import Point, bidegree, is_real_valued, translate
from hermrank.randgen import SHAPES, random_instance
from hermrank.report import emit_report
from hermrank.scalar import parse_scalar
from hermrank.verify import HOLDS, VIOLATED, verify_theorem

EXIT_OK, EXIT_INDETERMINATE, EXIT_VIOLATED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _read_expr(text: str) -> str:
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc}") from exc
    return text


def _point(text: str | None, n: int) -> Point | None:
    if text is None:
        return None
    try:
        coords = [parse_scalar(c) for c in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --point {text!r}: {exc}") from exc
    if len(coords) != n:
        raise UsageError(f"--point needs {n} comma-separated coordinates")
    return Point.diagonal(coords)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-n", type=int, default=None,
                        help="dimension, variables z1..z<n-1> and w (default 2; random-suite cycles 1..3)")
    common.add_argument("--field", default="qi", help="'qi' or 'qi-sqrt<s>'")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="also write the output to this file")

    p = _Parser(prog="hermrank", description="Exact hermitian rank computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("rank", parents=[common], help="rank of a polynomial")
    s.add_argument("expr")
    s = sub.add_parser("decompose", parents=[common], help="rank factorization and signature")
    s.add_argument("expr")
    s = sub.add_parser("normalize", parents=[common], help="normal form of a bidegree-(1,1) polynomial")
    s.add_argument("expr")
    s.add_argument("--point", help="base point p as comma-separated scalars")
    s = sub.add_parser("verify", parents=[common], help="check the rank inequality for Q P^d")
    s.add_argument("expr", help="P")
    s.add_argument("--q", default="1", help="Q (polynomial, recip(...), exp(...))")
    s.add_argument("-d", type=int, default=1)
    s.add_argument("--point", help="base point p as comma-separated scalars")
    s = sub.add_parser("gallery", parents=[common], help="run the sharpness examples")
    s = sub.add_parser("random-suite", parents=[common], help="verify many random instances")
    s.add_argument("-d", type=int, default=None, help="fixed d (default: cycle 0..4)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--shape", choices=SHAPES, default="with-polynomial-Q")
    s.add_argument("--jobs", type=int, default=1)
    return p


def _emit(args, payload) -> None:
    data = emit_report(payload, args.format)
    sys.stdout.buffer.write(data)
    sys.stdout.flush()
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)


def _cmd_rank(args) -> int:
    s = parse_field(args.field)
    R = parse_poly(_read_expr(args.expr), args.n, s)
    bd = bidegree(R)
    side = len(build_matrix(R, max(bd)).order) if bd else 0
    _emit(args, {"input": R.to_text(), "n": args.n, "field": field_name(s),
                 "bidegree": list(bd) if bd else None, "matrix_side": side, "rank": rank_of(R),
                 "backend": kernels.BACKEND})
    return EXIT_OK


def _cmd_decompose(args) -> int:
    s = parse_field(args.field)
    R = parse_poly(_read_expr(args.expr), args.n, s)
    fac = rank_factorize(R)
    out = {"input": R.to_text(), "rank": fac.r,
           "factorization": [{"phi": f.to_text(), "psi": g.to_text()}
                             for f, g in zip(fac.phi, fac.psi)]}
    if is_real_valued(R):
        dec = signature_decompose(R)
        out["signature"] = list(dec.signature)
        out["positive"] = [{"weight": w, "f": f.to_text()} for w, f in dec.positive]
        out["negative"] = [{"weight": w, "f": f.to_text()} for w, f in dec.negative]
    _emit(args, out)
    return EXIT_OK


def _cmd_normalize(args) -> int:
    s = parse_field(args.field)
    P = parse_poly(_read_expr(args.expr), args.n, s)
    pt = _point(args.point, args.n)
    if pt is None and P.constant_term():
        pt = find_zero(P)
        if pt is None:
            _emit(args, {"input": P.to_text(), "error": "no zero of P found"})
            return EXIT_VIOLATED
    if pt is not None:
        P = translate(P, pt.p, pt.q)
    if P.constant_term():
        raise UsageError("the base point is not on the zero set of P")
    rep = classify_linear_form(P)
    out = {"input": P.to_text(), "base_point": pt, "classification": rep, "rank": rank_of(P)}
    if out["rank"] >= 2:
        _, _, full = reduce_full_rank(P, P.constant(P.n, 1), 1)
        out["full_rank_normal_form"] = full
    _emit(args, out)
    return EXIT_OK


def _verdict_code(rep) -> int:
    if not rep.checks_passed:
        return EXIT_INTERNAL
    if rep.verdict == HOLDS:
        return EXIT_OK
    if rep.verdict == VIOLATED:
        return EXIT_VIOLATED
    return EXIT_INDETERMINATE


def _cmd_verify(args) -> int:
    s = parse_field(args.field)
    P = parse_poly(_read_expr(args.expr), args.n, s)
    Q = parse_recipe(_read_expr(args.q), args.n, s)
    if args.d < 0:
        raise UsageError("-d must be nonnegative")
    rep = verify_theorem(P, Q, args.d, _point(args.point, args.n))
    _emit(args, rep)
    return _verdict_code(rep)


def _cmd_gallery(args) -> int:
    cases = run_gallery()
    _emit(args, cases)
    return EXIT_OK if all(c.passed for c in cases) else EXIT_INTERNAL


def _suite_one(job):
    seed, n, d, shape = job
    inst = random_instance(seed, n, d, shape)
    rep = verify_theorem(inst.P, inst.Q, d, inst.point)
    return {"seed": seed, "n": n, "d": d, "shape": shape, "P": inst.P.to_text(),
            "verdict": rep.verdict, "reason": rep.reason, "rank_P": rep.rank_P,
            "expected_bound": rep.expected, "lower_bound": rep.lower_bound,
            "exact_rank_QPd": rep.exact_rank_QPd, "checks_passed": rep.checks_passed}


def suite_jobs(seed: int, trials: int, shape: str, n: int | None = None, d: int | None = None):
    jobs = []
    for k in range(trials):
        nn = n if n is not None else 1 + k % 3
        dd = d if d is not None else (k // 3) % 5
        jobs.append((seed + k, nn, dd, shape))
    return jobs


def _cmd_random_suite(args) -> int:
    if args.trials < 0 or args.jobs < 1:
        raise UsageError("--trials must be >= 0 and --jobs >= 1")
    jobs = suite_jobs(args.seed, args.trials, args.shape, args.n, args.d)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_suite_one, jobs))
    else:
        results = [_suite_one(j) for j in jobs]
    summary = {"trials": len(results), "holds": sum(r["verdict"] == HOLDS for r in results),
               "violated": sum(r["verdict"] == VIOLATED for r in results),
               "checks_failed": sum(not r["checks_passed"] for r in results)}
    _emit(args, results + [{"summary": summary}])
    if summary["checks_failed"]:
        return EXIT_INTERNAL
    if summary["holds"] == summary["trials"]:
        return EXIT_OK
    return EXIT_VIOLATED if summary["violated"] else EXIT_INDETERMINATE


COMMANDS = {"rank": _cmd_rank, "decompose": _cmd_decompose, "normalize": _cmd_normalize,
            "verify": _cmd_verify, "gallery": _cmd_gallery, "random-suite": _cmd_random_suite}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.n is None and args.command != "random-suite":
        args.n = 2
    if args.n is not None and args.n < 1:
        sys.stderr.write("hermrank: error: -n must be at least 1\n")
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (ParseError, UsageError) as exc:
        sys.stderr.write(f"hermrank: error: {exc}\n")
        return EXIT_USAGE
    except NormalFormError as exc:
        sys.stderr.write(f"hermrank: {exc}\n")
        return EXIT_VIOLATED
    except AssertionError as exc:
        sys.stderr.write(f"hermrank: internal check failed: {exc}\n")
        return EXIT_INTERNAL
