"""Command line front end: compute, verify, dims.

Exit codes: 0 success, 1 validation error, 2 numerical failure.  The default
step count comes from KZBRAID_STEPS when set.  Output is deterministic: terms
are emitted in graded-lexicographic order and floats use the shortest
round-trip representation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .braids import BraidParseError, parse_braid_word, permutation_of, realize
from .circles import circle_series_to_json_dict
from .closure import kontsevich_link
from .relations import quotient_dimension, reduce
from .transport import (
    TransportError,
    abelian_holonomy,
    kontsevich_of_braid,
    simplex_oracle,
    symmetrized,
    transport,
)
from .words import (
    HorizontalSeries,
    enumerate_words,
    relabel_strands,
    series_product,
    series_to_json_dict,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


class ValidationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _default_steps():
    return int(os.environ.get("KZBRAID_STEPS", "512"))


def _build_parser():
    parser = _Parser(prog="kzbraid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="Kontsevich integral of a braid word")
    compute.add_argument("-n", "--strands", type=int, required=True)
    compute.add_argument("-w", "--word", default="", help="signed generator indices")
    compute.add_argument("-m", "--max-degree", type=int, default=3)
    compute.add_argument("--steps", type=int, default=_default_steps())
    compute.add_argument("-o", "--output", help="write JSON here instead of stdout")
    compute.add_argument("--close", action="store_true", help="also reduce the closure")
    compute.add_argument("--zero-threshold", type=float, default=1e-12)

    verify = sub.add_parser("verify", help="run one consistency check")
    verify.add_argument("check", help="|".join(sorted(_CHECKS)))
    verify.add_argument("-m", "--max-degree", type=int, default=3)
    verify.add_argument("--steps", type=int, default=_default_steps())

    dims = sub.add_parser("dims", help="quotient dimensions per degree")
    group = dims.add_mutually_exclusive_group(required=True)
    group.add_argument("--circles", type=int)
    group.add_argument("--strands", type=int)
    dims.add_argument("-m", "--max-degree", type=int, default=3)
    return parser


def _format_word(word):
    return "".join(f"({c.i},{c.j})" for c in word.chords) or "1"


def _print_table(series, stream):
    print(f"{'deg':>3}  {'word':<24}  {'|coeff|':<22}  arg", file=stream)
    for word, coeff in series.sorted_terms():
        print(
            f"{word.degree:>3}  {_format_word(word):<24}  {abs(coeff):<22.16g}  {math.atan2(coeff.imag, coeff.real):.16g}",
            file=stream,
        )


def _cmd_compute(args):
    if args.strands < 2:
        raise ValidationError("need at least 2 strands")
    if args.max_degree < 0 or args.steps < 1:
        raise ValidationError("need max-degree >= 0 and steps >= 1")
    word = parse_braid_word(args.word, args.strands)
    series = kontsevich_of_braid(word, args.max_degree, args.steps)
    series = HorizontalSeries(
        series.n_strands, series.max_degree, series.terms, args.zero_threshold
    )
    _print_table(series, sys.stdout)
    if args.close:
        result = kontsevich_link(word, args.max_degree, args.steps)
        document = {
            "braid": series_to_json_dict(series),
            "link": {
                "components": result.skeleton.n_components,
                "cycles": [list(cycle) for cycle in result.skeleton.components],
                "series": circle_series_to_json_dict(result.reduced.to_series()),
            },
        }
    else:
        document = series_to_json_dict(series)
    text = json.dumps(document, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _check_braid_relation(max_degree, steps):
    za = reduce(kontsevich_of_braid(parse_braid_word("1 2 1", 3), max_degree, steps))
    zb = reduce(kontsevich_of_braid(parse_braid_word("2 1 2", 3), max_degree, steps))
    return za.sup_diff(zb), 1e-6


def _check_far_commutation(max_degree, steps):
    za = reduce(kontsevich_of_braid(parse_braid_word("1 3", 4), max_degree, steps))
    zb = reduce(kontsevich_of_braid(parse_braid_word("3 1", 4), max_degree, steps))
    return za.sup_diff(zb), 1e-6


def _check_oracle(max_degree, steps):
    worst = 0.0
    for text, strands in (("1", 2), ("1 1", 2), ("1 2", 3)):
        loop = realize(parse_braid_word(text, strands))
        series = transport(loop, max_degree, steps).series
        for degree in range(1, min(2, max_degree) + 1):
            for word in enumerate_words(strands, degree):
                direct = simplex_oracle(loop, word, 512)
                worst = max(worst, abs(series.coefficient(word) - direct))
    return worst, 1e-5


def _check_multiplicativity(max_degree, steps):
    # flow property: the transport of a concatenated loop is the stacking
    # product of its segment transports; the upper segment equals the upper
    # braid's own transport with strands read through the lower permutation
    words = [parse_braid_word(text, 3) for text in ("1", "2", "-1")]
    worst = 0.0
    for upper in words:
        for lower in words:
            combined = type(upper)(3, lower.letters + upper.letters)
            z_upper = relabel_strands(
                kontsevich_of_braid(upper, max_degree, steps),
                permutation_of(lower).inverse(),
            )
            z_lower = kontsevich_of_braid(lower, max_degree, steps)
            zc = kontsevich_of_braid(combined, max_degree, steps)
            worst = max(worst, series_product(z_upper, z_lower).sup_diff(zc))
    return worst, 1e-8


def _check_abelian(max_degree, steps):
    worst = 0.0
    for text in ("1 2", "1 1 -2"):
        loop = realize(parse_braid_word(text, 3))
        sym = symmetrized(transport(loop, max_degree, steps).series)
        worst = max(worst, sym.sup_diff(abelian_holonomy(loop, max_degree)))
    return worst, 1e-7


def _check_reparam(max_degree, steps):
    word = parse_braid_word("1 2", 3)
    even = transport(realize(word), max_degree, steps).series
    skew = transport(realize(word, durations=(2.0, 1.0)), max_degree, steps).series
    return even.sup_diff(skew), 1e-7


_CHECKS = {
    "braid-relation": _check_braid_relation,
    "far-commutation": _check_far_commutation,
    "oracle": _check_oracle,
    "multiplicativity": _check_multiplicativity,
    "abelian": _check_abelian,
    "reparam": _check_reparam,
}


def _cmd_verify(args):
    if args.check not in _CHECKS:
        raise ValidationError(f"unknown check {args.check!r}, expected one of {sorted(_CHECKS)}")
    residual, tolerance = _CHECKS[args.check](args.max_degree, args.steps)
    ok = residual < tolerance
    print(f"{args.check}: residual={residual:.3e} tolerance={tolerance:.1e} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_NUMERICAL


def _cmd_dims(args):
    if args.max_degree < 0:
        raise ValidationError("need max-degree >= 0")
    entries = []
    for degree in range(args.max_degree + 1):
        if args.circles is not None:
            dim = quotient_dimension(degree, circles=args.circles)
        else:
            dim = quotient_dimension(degree, strands=args.strands)
        entries.append(f"{degree}:{dim}")
    print(" ".join(entries))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "compute":
            return _cmd_compute(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_dims(args)
    except (ValidationError, BraidParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except TransportError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
