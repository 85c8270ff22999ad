"""Command-line front end.

Exit codes: 0 on success or mathematical PASS, 1 on mathematical FAIL
(hypothesis violated, invalid complex, selftest failure), 2 on input or
usage errors.  Flags can be preset through environment variables with the
P1DOM_ prefix (P1DOM_RING, P1DOM_TRUNC, P1DOM_TRUNC_MAX, P1DOM_SEED,
P1DOM_FORMAT, P1DOM_OUT); explicit flags win.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import fileformat as ff
from .complexes import homology
from .domination import dominate, fpqc_hyper, novikov_check, verify_theorem
from .errors import (FormatError, NotNovikovAcyclicError, P1DomError,
                     StabilisationFailureError)
from .extension import extend_complex
from .scalars import ring_from_tag
from .selftest import run_selftest
from .sheaves import cech_cohomology, cech_complex, twisting_sheaf

EXIT_OK = 0
EXIT_MATH_FAIL = 1
EXIT_INPUT_ERROR = 2


def _env(name, default=None):
    return os.environ.get(f"P1DOM_{name}", default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="p1dom",
        description="exact chain-complex extension, cohomology and "
                    "Novikov/finite-domination checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="input file")
        p.add_argument("--ring", default=_env("RING"),
                       help="Q | GF:p | Z; must match the file header")
        p.add_argument("--trunc", type=int,
                       default=int(_env("TRUNC", "16")),
                       help="truncation order N (default 16)")
        p.add_argument("--trunc-max", type=int,
                       default=int(_env("TRUNC_MAX", "64")),
                       help="maximum truncation order (default 64)")
        p.add_argument("--seed", type=int, default=int(_env("SEED", "0")))
        p.add_argument("--format", choices=("human", "report"),
                       default=_env("FORMAT", "human"))
        p.add_argument("--out", default=_env("OUT"),
                       help="write output to this path instead of stdout")

    common(sub.add_parser("validate", help="check d.d = 0 and exponent legality"))
    common(sub.add_parser("homology", help="homology report of a complex"))
    common(sub.add_parser("novikov", help="Novikov acyclicity verdicts"))
    common(sub.add_parser("extend", help="extend a complex to the projective line"))
    common(sub.add_parser("h0", help="global sections of a sheaf complex"))
    common(sub.add_parser("hyper", help="truncated chart-cover totalisation of a K[x] complex"))
    common(sub.add_parser("dominate", help="produce the finite-domination witness"))
    common(sub.add_parser("verify", help="full theorem pipeline with ledger"))
    tw = sub.add_parser("twist-cohomology",
                        help="cohomology of r copies of the nth twisting sheaf")
    tw.add_argument("n", type=int)
    tw.add_argument("r", type=int, nargs="?", default=1)
    tw.add_argument("--k", type=int, default=0, help="twist split (k, n-k)")
    common(tw, with_input=False)
    st = sub.add_parser("selftest", help="run the embedded example corpus")
    common(st, with_input=False)
    return parser


def _emit(args, human_lines, report_obj):
    if args.format == "report":
        text = ff.dumps_canonical(report_obj)
    else:
        text = "\n".join(human_lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_complex(args):
    c = ff.load_complex(args.input)
    _check_ring_flag(args, c.ring.tag)
    return c


def _load_sheaf(args):
    s = ff.load_sheaf(args.input)
    _check_ring_flag(args, s.ring.tag)
    return s


def _check_ring_flag(args, header_tag):
    if args.ring is None:
        return
    if ring_from_tag(args.ring).tag != header_tag:
        raise FormatError(
            f"--ring {args.ring} does not match file header {header_tag}",
            "ring")


def _input_digest(args):
    with open(args.input, encoding="utf-8") as fh:
        return ff.digest(fh.read())


def cmd_validate(args):
    c = _load_complex(args)
    problems = c.validate()
    report = {"command": "validate", "input_digest": _input_digest(args),
              "valid": not problems, "violations": problems}
    _emit(args, ["ok"] if not problems else problems, report)
    return EXIT_OK if not problems else EXIT_MATH_FAIL


def cmd_homology(args):
    c = _load_complex(args)
    rep = homology(c)
    lines = []
    entries = []
    for q in sorted(rep.entries):
        e = rep.entries[q]
        tors = ", ".join(str(f) for f in e.torsion) or "-"
        kdim = "inf" if e.kdim is None else e.kdim
        lines.append(f"H_{q}: free rank {e.free_rank}, torsion [{tors}], "
                     f"K-dim {kdim}")
        entries.append({"degree": q, "free_rank": e.free_rank,
                        "torsion": [str(f) for f in e.torsion],
                        "kdim": None if e.kdim is None else e.kdim})
    report = {"command": "homology", "input_digest": _input_digest(args),
              "ring": c.ring.tag, "entries": entries}
    _emit(args, lines, report)
    return EXIT_OK


def cmd_novikov(args):
    c = _load_complex(args)
    verdict = novikov_check(c, order=args.trunc)
    lines = [f"x-side: {verdict.x_side.acyclic}",
             f"x^-1-side: {verdict.x_inv_side.acyclic}"]
    report = {"command": "novikov", "input_digest": _input_digest(args),
              "x_side": {
                  "acyclic": verdict.x_side.acyclic,
                  "method": verdict.x_side.method,
                  "certificate": verdict.x_side.certificate},
              "x_inv_side": {
                  "acyclic": verdict.x_inv_side.acyclic,
                  "method": verdict.x_inv_side.method,
                  "certificate": verdict.x_inv_side.certificate}}
    _emit(args, lines, report)
    return EXIT_OK


def cmd_extend(args):
    c = _load_complex(args)
    ext = extend_complex(c)
    data = ff.sheaf_to_dict(ext.sheaf)
    if args.format == "human" and not args.out:
        profile = ", ".join(
            f"{m}:(k={k},l={l})" for m, (k, l) in sorted(ext.profile.items()))
        _emit(args, [f"twist profile: {profile}"], data)
        return EXIT_OK
    text = ff.dumps_canonical(data)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_h0(args):
    s = _load_sheaf(args)
    w = cech_complex(s)
    data = ff.complex_to_dict(w)
    text = ff.dumps_canonical(data)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_hyper(args):
    c = _load_complex(args)
    model = fpqc_hyper(c, order=args.trunc)
    lines = [f"order {model.order}, stabilised {model.stabilised}, "
             f"window-matched {model.window_matched}"]
    for q in sorted(model.dims):
        lines.append(f"H_{q}: dim {model.dims[q]} "
                     f"(2N: {model.dims_double.get(q)})")
    report = {"command": "hyper", "input_digest": _input_digest(args),
              "order": model.order,
              "stabilised": model.stabilised,
              "window_matched": model.window_matched,
              "dims": {str(q): model.dims[q] for q in sorted(model.dims)},
              "dims_double": {str(q): model.dims_double[q]
                              for q in sorted(model.dims_double)}}
    _emit(args, lines, report)
    return EXIT_OK


def _witness_report(args, witness, command):
    return {
        "command": command,
        "input_digest": _input_digest(args),
        "w": ff.complex_to_dict(witness.w),
        "twist_profile": [
            {"degree": m, "k": k, "l": l}
            for m, (k, l) in sorted(witness.extension.profile.items())],
        "ledger": [
            {"degree": row.degree, "w_dim": row.w_dim,
             "mid_kdim": row.mid_kdim, "plus_dim": row.plus_dim,
             "minus_dim": row.minus_dim, "holds": row.holds}
            for row in witness.ledger],
        "plus_order": witness.plus_order,
        "minus_order": witness.minus_order,
        "stabilisation_heuristic": witness.stabilisation_heuristic,
    }


def cmd_dominate(args):
    c = _load_complex(args)
    witness = dominate(c, order=args.trunc, order_max=args.trunc_max)
    ranks = ", ".join(f"{m}:{r}" for m, r in sorted(witness.w_ranks().items()))
    lines = [f"W ranks {{{ranks}}}",
             f"ledger holds: {witness.ledger_holds}"]
    for row in witness.ledger:
        lines.append(f"  degree {row.degree}: {row.w_dim} = "
                     f"{row.mid_kdim} + {row.plus_dim} + {row.minus_dim}")
    _emit(args, lines, _witness_report(args, witness, "dominate"))
    return EXIT_OK


def cmd_verify(args):
    c = _load_complex(args)
    report = verify_theorem(c, order=args.trunc, order_max=args.trunc_max)
    lines = [report.verdict]
    for ch in report.checks:
        lines.append(f"  {ch.name}: {'ok' if ch.passed else 'FAIL'}"
                     + (f" ({ch.detail})" if ch.detail else ""))
    data = report.to_dict()
    data["command"] = "verify"
    data["input_digest"] = _input_digest(args)
    _emit(args, lines, data)
    return EXIT_OK if report.passed else EXIT_MATH_FAIL


def cmd_twist_cohomology(args):
    ring = ring_from_tag(args.ring or "Q")
    sheaf = twisting_sheaf(ring, args.n, args.k, args.r)
    coh = cech_cohomology(sheaf)
    lines = [f"dim H^0 = {coh.h0_dim}", f"dim H^1 = {coh.h1_dim}"]
    if coh.h0_basis:
        lines.append("H^0 basis: "
                     + ", ".join(f"x^{e}" for _, e in coh.h0_basis))
    if coh.h1_basis:
        lines.append("H^1 basis: "
                     + ", ".join(f"x^{e}" for _, e in coh.h1_basis))
    report = {"command": "twist-cohomology", "n": args.n, "r": args.r,
              "k": args.k, "h0_dim": coh.h0_dim, "h1_dim": coh.h1_dim,
              "h0_basis": [[i, e] for i, e in (coh.h0_basis or ())],
              "h1_basis": [[i, e] for i, e in (coh.h1_basis or ())]}
    _emit(args, lines, report)
    return EXIT_OK


def cmd_selftest(args):
    ok, lines = run_selftest(seed=args.seed)
    report = {"command": "selftest", "seed": args.seed, "passed": ok,
              "lines": lines}
    _emit(args, lines + ["PASS" if ok else "FAIL"], report)
    return EXIT_OK if ok else EXIT_MATH_FAIL


HANDLERS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "novikov": cmd_novikov,
    "extend": cmd_extend,
    "h0": cmd_h0,
    "hyper": cmd_hyper,
    "dominate": cmd_dominate,
    "verify": cmd_verify,
    "twist-cohomology": cmd_twist_cohomology,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code not in (0, None) else EXIT_OK
    trunc = getattr(args, "trunc", None)
    trunc_max = getattr(args, "trunc_max", None)
    if trunc is not None and trunc_max is not None and trunc > trunc_max:
        print("input error: --trunc exceeds --trunc-max", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        return HANDLERS[args.command](args)
    except FormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (NotNovikovAcyclicError, StabilisationFailureError) as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_MATH_FAIL
    except P1DomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH_FAIL


if __name__ == "__main__":
    sys.exit(main())
