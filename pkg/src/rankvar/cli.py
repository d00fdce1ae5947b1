"""Command-line entry point: ``rankvar <verb> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from .cp import JordanType, gaussian_ext, jt_ext, jt_sym, jt_tensor
from .gf import make_field
from .lr import lemma_report
from .modules import hook_specht, natural_specht, quotient_D1, simple_D
from .suites import (SUITES, UnsupportedParameters, UsageError, check_params, emit_report,
                     run_suite)
from .variety import generic_type, scan

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_IO = 0, 1, 2, 3, 4

TRACEABILITY = [
    ("lemma3.5", "Ranks of X_alpha and its (p-2)-th and (p-1)-th powers on the adapted bases B, B' "
                 "of the natural Specht modules are maximal exactly off f_k = 0; direct and "
                 "change-of-basis constructions of L, L' agree",
     "tests/test_acceptance.py::test_criterion_07_rank_laws"),
    ("thm3.6", "The rank variety of S(kp,1) is V(f_k); hook Spechts for n = kp+1 are free off V(f_k)",
     "tests/test_acceptance.py::test_criterion_06_natural_and_hooks"),
    ("thm4.2", "Generic type of D(1) is [p]^(k-1)[p-2]; on V(p_k) minus V(f_k) it is [p]^(k-2)[p-1]^2",
     "tests/test_acceptance.py::test_criterion_05_D1_types"),
    ("main", "The rank variety of D(p-1), and of D(kp-p-1), is V(p_k)",
     "tests/test_acceptance.py::test_criterion_01..04"),
    ("lemma4.6", "Inside V(f_k), D(p-1) is non-free exactly on the union of the V(x_i, x_j)",
     "tests/test_acceptance.py::test_criterion_14_intersection"),
    ("lemma2.4", "Source partitions of LR sequences for mu = (p^b,1) and (p^b,p-1) match the "
                 "classified families",
     "tests/test_acceptance.py::test_criterion_10_source_partitions"),
    ("lemma2.6", "Exterior powers of J_(p-1), J_(p-2) have the closed stable forms; the "
                 "Gaussian-polynomial evaluation matches explicit matrices",
     "tests/test_acceptance.py::test_criterion_08_exterior_powers"),
]


def traceability_markdown() -> str:
    lines = ["| suite | statement checked | tests |", "|---|---|---|"]
    for name, what, test in TRACEABILITY:
        lines.append(f"| `{name}` | {what} | `{test}` |")
    return "\n".join(lines) + "\n"


def _range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=1))


def build_module(which: str, p: int, k: int, e: int = 1, r: int | None = None, n: int | None = None):
    F = make_field(p, e)
    which = which.strip()
    if which in ("D1", "D(1)"):
        return quotient_D1(k, p, F)
    if which in ("D(p-1)", "Dp-1"):
        return simple_D(k, p, p - 1, F)
    if which in ("D(kp-p-1)",):
        return simple_D(k, p, k * p - p - 1, F)
    if which in ("Dr", "D(r)"):
        if r is None:
            raise UsageError("--r is required for Dr")
        return simple_D(k, p, r, F)
    if which in ("natural", "specht"):
        return natural_specht(n or k * p + 1, k, F)
    if which in ("specht-hook", "hook"):
        if r is None:
            raise UsageError("--r is required for hook modules")
        return hook_specht(n or k * p + 1, k, r, F)
    raise UsageError(f"unknown module {which!r}")


def default_predicate(which: str) -> str | None:
    if which in ("D(p-1)", "Dp-1", "D(kp-p-1)"):
        return "p_zero"
    if which in ("natural", "specht"):
        return "f_zero"
    return None


def cmd_lr(args) -> int:
    check_params(args.p, allow_large=args.allow_large)
    rows = []
    for b in _range(args.b_range):
        rows.extend(lemma_report(args.p, args.m, b, args.case))
    _print_json(rows)
    return EXIT_PASS if all(r["equal"] for r in rows) else EXIT_FAIL


def cmd_repring(args) -> int:
    check_params(args.p, allow_large=args.allow_large)
    p = args.p
    if args.op == "ext":
        n, r = args.args
        if not 1 <= n <= p:
            raise UnsupportedParameters(f"block size {n} must lie in 1..{p}")
        matrix = jt_ext(JordanType.block(p, n), r)
        out = {"op": "ext", "p": p, "n": n, "r": r, "matrix": matrix.to_json()}
        if 1 <= r < p:
            gauss = gaussian_ext(n, r, p)
            out.update(gaussian=gauss.to_json(), agree=gauss == matrix)
        else:
            out.update(gaussian=None, agree=None)
        _print_json(out)
        return EXIT_PASS if out["agree"] in (True, None) else EXIT_FAIL
    if args.op == "sym":
        n, k = args.args
        _print_json({"op": "sym", "p": p, "n": n, "k": k, "matrix": jt_sym(JordanType.block(p, n), k).to_json()})
        return EXIT_PASS
    if args.op == "tensor":
        a, b = args.args
        t = jt_tensor(JordanType.block(p, a), JordanType.block(p, b))
        _print_json({"op": "tensor", "p": p, "a": a, "b": b, "matrix": t.to_json()})
        return EXIT_PASS
    raise UsageError(f"unknown repring operation {args.op!r}")


def cmd_module(args) -> int:
    check_params(args.p, args.k, args.e, args.allow_large)
    M = build_module(args.which, args.p, args.k, args.e, args.r, args.n)
    info = M.to_json()
    _print_json(info)
    return EXIT_PASS if info["order_p"] and info["commute"] and info["invertible"] else EXIT_FAIL


def cmd_scan(args) -> int:
    check_params(args.p, args.k, args.e, args.allow_large)
    M = build_module(args.module, args.p, args.k, args.e, args.r, args.n)
    predicate = args.predicate or default_predicate(args.module)
    rep = scan(M, budget=args.budget, sample_seed=args.seed, predicate=predicate,
               samples=args.samples, exhaustive=True if args.exhaustive else None,
               orbit=args.orbits, intersection_law=predicate == "p_zero")
    text = emit_report(rep, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    else:
        _print_json({"out": args.out, "summary": rep.summary(), "verdicts": rep.verdicts()})
    verdict = rep.verdicts()["membership_matches_predicate"]
    return EXIT_FAIL if verdict is False else EXIT_PASS


def cmd_generic(args) -> int:
    check_params(args.p, args.k, args.e, args.allow_large)
    M = build_module(args.module, args.p, args.k, args.e, args.r, args.n)
    gtype, cert = generic_type(M, args.trials, args.seed)
    cert.pop("witness_point")
    _print_json({"module": M.label, "generic_type": gtype.to_json(), "certificate": cert})
    return EXIT_PASS if cert["unanimous"] else EXIT_FAIL


def cmd_verify(args) -> int:
    params = {"p": args.p, "k": args.k, "e": args.e, "seed": args.seed}
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if args.suite in ("lemma2.4", "lemma2.6"):
        params = {"p": args.p}
    res = run_suite(args.suite, params, allow_large=args.allow_large)
    text = emit_report(res, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    print(f"{res.name}: {'PASS' if res.passed else 'FAIL'} ({res.elapsed:.2f}s)", file=sys.stderr)
    return EXIT_PASS if res.passed else EXIT_FAIL


def cmd_traceability(args) -> int:
    text = traceability_markdown()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return EXIT_PASS


def _module_args(sp, e_default: int = 2):
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--e", type=int, default=e_default)
    sp.add_argument("--r", type=int)
    sp.add_argument("--n", type=int, help="kp or kp+1 for Specht modules (default kp+1)")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rankvar", description="Rank varieties and Jordan types for E_k-modules")
    ap.add_argument("--allow-large", action="store_true", help="lift the p<=7, k<=4, e<=3 guardrails")
    sub = ap.add_subparsers(dest="verb", required=True)

    lr = sub.add_parser("lr", help="LR-sequence tools")
    lr_sub = lr.add_subparsers(dest="lr_verb", required=True)
    v = lr_sub.add_parser("verify", help="compare brute-force source partitions with the classification")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--b-range", required=True, help="inclusive range like 4..7, or a comma list")
    v.add_argument("--case", type=int, choices=(1, 2), required=True)
    v.set_defaults(func=cmd_lr)

    rp = sub.add_parser("repring", help="Jordan types of tensor/symmetric/exterior powers of J_n")
    rp.add_argument("--p", type=int, required=True)
    rp.add_argument("op", choices=("ext", "sym", "tensor"))
    rp.add_argument("args", type=int, nargs=2)
    rp.set_defaults(func=cmd_repring)

    mod = sub.add_parser("module", help="module constructions")
    mod_sub = mod.add_subparsers(dest="module_verb", required=True)
    b = mod_sub.add_parser("build")
    _module_args(b, e_default=1)
    b.add_argument("--which", required=True, help="D1 | Dr | D(p-1) | natural | specht-hook")
    b.set_defaults(func=cmd_module)

    sc = sub.add_parser("scan", help="pointwise rank-variety scan")
    sc.add_argument("--module", required=True, help="D(p-1) | D(kp-p-1) | D1 | Dr | specht | hook")
    _module_args(sc)
    g = sc.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--samples", type=int)
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--budget", type=int, default=100_000)
    sc.add_argument("--predicate", choices=("f_zero", "p_zero"))
    sc.add_argument("--orbits", action="store_true", help="evaluate one point per orbit")
    sc.add_argument("--format", choices=("json", "csv"), default="json")
    sc.add_argument("--out")
    sc.set_defaults(func=cmd_scan)

    ge = sub.add_parser("generic", help="generic Jordan type by seeded sampling")
    ge.add_argument("--module", required=True)
    _module_args(ge)
    ge.add_argument("--trials", type=int, default=5)
    ge.add_argument("--seed", type=int, default=0)
    ge.set_defaults(func=cmd_generic)

    ve = sub.add_parser("verify", help="run a named verification suite")
    ve.add_argument("--suite", required=True, help=" | ".join(SUITES))
    ve.add_argument("--p", type=int, required=True)
    ve.add_argument("--k", type=int)
    ve.add_argument("--e", type=int)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--format", choices=("json", "csv"), default="json")
    ve.add_argument("--out")
    ve.set_defaults(func=cmd_verify)

    tr = sub.add_parser("traceability", help="print the suite-to-statement table as Markdown")
    tr.add_argument("--out")
    tr.set_defaults(func=cmd_traceability)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedParameters as exc:
        print(f"unsupported parameters: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
