"""Command-line surface: spectrum queries, oracle verification, witnesses.

Exit codes: 0 success, 1 verification violation, 2 unsupported group,
3 argument/parse error, 4 enumeration cap exceeded, 5 no witness recipe.
All big integers in output are decimal strings; output is byte-identical
across reruns of the same invocation.
"""

import argparse
import json
import sys

from sympy import factorint, isprime

from . import __version__
from .errors import (CapExceeded, InfeasibleOrder, InfeasibleRecipe,
                     InvalidArgument, InvalidEpsilon, OrderMismatch,
                     UnsupportedGroup)
from .gf import field_make
from .groups import FAMILIES, GroupSpec, normalize
from .matgrp import MatCtx, construct_witness, element_order, projective_order
from .spectrum import mu, omega_enumerate, omega_generators
from .verify import DEFAULT_CAP, DEFAULT_SAMPLES, run_verify


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract reserves 2 for
    unsupported groups, so remap usage errors to 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, "%s: error: %s\n" % (self.prog, message))


def _parse_q(text):
    if "^" in text:
        p_str, _, f_str = text.partition("^")
        try:
            p, f = int(p_str), int(f_str)
        except ValueError:
            raise InvalidArgument("q must be p^f or a prime power, got %r" % text)
    else:
        try:
            v = int(text)
        except ValueError:
            raise InvalidArgument("q must be p^f or a prime power, got %r" % text)
        if v < 2:
            raise InvalidArgument("q must be at least 2, got %r" % text)
        fac = factorint(v)
        if len(fac) != 1:
            raise InvalidArgument("q must be a prime power, got %r" % text)
        (p, f), = fac.items()
    if f < 1 or not isprime(p):
        raise InvalidArgument("q must be a prime power, got %r" % text)
    return p, f


def _spec_from(args):
    p, f = _parse_q(args.q)
    return GroupSpec(family=args.family, n=args.n, p=p, f=f,
                     eps=getattr(args, "eps", None))


def _emit_json(obj):
    print(json.dumps(obj, separators=(",", ":")))


def cmd_spectrum(args):
    spec = _spec_from(args)
    ns = normalize(spec)
    gens = omega_generators(ns)
    mu_vals = mu(gens)
    result = {"group": ns.spec.label(), "mu": [str(v) for v in mu_vals]}
    if args.full:
        result["omega"] = [str(v) for v in omega_enumerate(ns, cap=args.cap)]
    result["provenance"] = sorted({g.item for g in gens})
    result["version"] = __version__
    if args.json:
        _emit_json(result)
    else:
        print("group: %s" % result["group"])
        print("mu: %s" % " ".join(result["mu"]))
        if args.full:
            print("omega: %s" % " ".join(result["omega"]))
        for note in ns.notes:
            print("note: %s" % note)
    return 0


def cmd_verify(args):
    spec = _spec_from(args)
    ns = normalize(spec)
    report = run_verify(spec, mode=args.mode, samples=args.samples,
                        seed=args.seed, cap=args.cap)
    out = {"group": ns.spec.label(), "mode": report.mode,
           "group_size": report.group_size,
           "expected_mu": [str(v) for v in report.expected_mu]}
    if report.observed_max_orders is not None:
        out["observed_max_orders"] = [str(v) for v in report.observed_max_orders]
    if report.sampled_order_histogram is not None:
        out["sampled_order_histogram"] = report.sampled_order_histogram
    out["verdict"] = report.verdict
    out["details"] = report.details
    out["version"] = __version__
    _emit_json(out)
    return 0 if report.verdict in ("equal", "contained") else 1


def cmd_witness(args):
    spec = _spec_from(args)
    ns = normalize(spec)
    if args.order < 1:
        raise InvalidArgument("--order must be >= 1")
    w, form, item = construct_witness(spec, args.order)
    ctx = MatCtx(field_make(ns.p, ns.spec.f))
    projective = ns.spec.family in ("psp", "pomega")
    if projective and args.order > 1:
        got = projective_order(ctx, w, [1, ctx.field.neg(1)])
    else:
        got = element_order(ctx, w)
    if got != args.order:
        raise OrderMismatch("witness has order %d, wanted %d" % (got, args.order))
    print("group: %s" % ns.spec.label())
    print("order: %d (verified%s)" % (args.order,
                                      ", projective" if projective else ""))
    print("recipe: %s" % item)
    print("form: %s" % form.kind)
    print("matrix over GF(%d), field elements as integer codes:" % ns.q)
    for row in w:
        print(" ".join(str(int(x)) for x in row))
    return 0


def cmd_report(args):
    from .report import render_report

    spec = _spec_from(args)
    csv_path, png_path = render_report(spec, args.samples, args.seed, args.out)
    print(csv_path)
    print(png_path)
    return 0


def _add_group_args(sub):
    sub.add_argument("family", choices=FAMILIES)
    sub.add_argument("n", type=int, help="rank (half the dimension, rounded down)")
    sub.add_argument("q", help="field size, a prime power, e.g. 9 or 3^2")
    sub.add_argument("--eps", choices=("+", "-"),
                     help="form type for even-dimensional families")


def build_parser():
    parser = _Parser(prog="classpec",
                     description="Element-order spectra of finite symplectic "
                                 "and orthogonal groups.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("spectrum", help="print mu(G) (and optionally omega)")
    _add_group_args(sp)
    sp.add_argument("--full", action="store_true", help="materialize omega")
    sp.add_argument("--cap", type=int, default=100000,
                    help="max distinct orders for --full")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_spectrum)

    vf = subs.add_parser("verify", help="check the formulas against the oracle")
    _add_group_args(vf)
    vf.add_argument("--mode", choices=("auto", "exhaustive", "sample"),
                    default="auto")
    vf.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    vf.add_argument("--seed", type=int, default=1)
    vf.add_argument("--cap", type=int, default=DEFAULT_CAP,
                    help="largest group enumerated exhaustively")
    vf.set_defaults(func=cmd_verify)

    wt = subs.add_parser("witness", help="build a matrix of a given order")
    _add_group_args(wt)
    wt.add_argument("--order", type=int, required=True)
    wt.set_defaults(func=cmd_witness)

    rp = subs.add_parser("report",
                         help="sampled order histogram as CSV plus a figure")
    _add_group_args(rp)
    rp.add_argument("--samples", type=int, default=2000)
    rp.add_argument("--seed", type=int, default=1)
    rp.add_argument("--out", default=".", help="output directory")
    rp.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedGroup as e:
        print("unsupported group: %s" % e, file=sys.stderr)
        return 2
    except (InvalidArgument, InvalidEpsilon) as e:
        print("error: %s" % e, file=sys.stderr)
        return 3
    except CapExceeded as e:
        print("cap exceeded: %s" % e, file=sys.stderr)
        return 4
    except (InfeasibleRecipe, InfeasibleOrder) as e:
        print("no witness: %s" % e, file=sys.stderr)
        return 5
    except OrderMismatch as e:
        print("order mismatch: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
