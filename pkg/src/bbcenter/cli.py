"""Command-line interface.

Subcommands: ``classify`` (theorem dispatch and obstructions), ``series``
(adds manifold coefficients), ``verify`` (adds the numeric block), ``bb``
(raw Briot-Bouquet classification of a document read as x y' = f).

Exit codes: 0 classified, 2 parse error, 3 uncertifiable spectrum or
unnormalized input, 4 verification failure.
"""

from __future__ import annotations

import argparse
import sys

from . import documents
from .briot_bouquet import classify as bb_classify
from .centers import enumerate_centers
from .errors import (BBCenterError, NotNormalized, OrderTooSmall, ParseError,
                     UncertifiableSpectrum)
from .spectra import numeric_spectrum
from .verify import check_isochronous

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNCERTIFIABLE = 3
EXIT_VERIFY = 4


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="bbcenter",
        description="Exact center-manifold and isochronous-center classification "
                    "of holomorphic systems via Briot-Bouquet theory.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, verify=False):
        p.add_argument("files", nargs="+", help="system documents (JSON), or - for stdin")
        p.add_argument("--order", type=int, default=12,
                       help="series truncation order (default 12)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--numeric-fallback", action="store_true",
                       help="report a flagged double-precision spectrum instead of "
                            "failing when exact certification is impossible")
        if verify:
            p.add_argument("--radius", type=float, default=1e-2)
            p.add_argument("--tol", type=float, default=1e-6)
            p.add_argument("--starts", type=int, default=20)

    common(sub.add_parser("classify", help="enumerate center manifolds"))
    common(sub.add_parser("series", help="enumerate and print series coefficients"))
    common(sub.add_parser("verify", help="enumerate and verify numerically"),
           verify=True)
    common(sub.add_parser("bb", help="classify a raw Briot-Bouquet system"))
    return parser


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _fallback_document(h):
    summary = numeric_spectrum(h.linear)
    return {
        "certified": False,
        "note": "spectrum not certifiable over the Gaussian rationals; "
                "double-precision summary only",
        "spectrum": {
            "eigenvalues": [
                {"value": f"{e['value']:.15g}",
                 "purely_imaginary": e["purely_imaginary"]}
                for e in summary["eigenvalues"]],
            "certified": False,
            "tolerance": summary["tolerance"],
        },
        "manifolds": [],
    }


def _process_system(text, args):
    doc = documents._load(text)
    h = documents.parse_system(doc, order=args.order)
    variables = doc.get("variables")
    try:
        reports = enumerate_centers(h, order=args.order)
    except (UncertifiableSpectrum, NotNormalized) as err:
        if args.numeric_fallback:
            return _fallback_document(h), EXIT_OK
        print(f"error: {err}", file=sys.stderr)
        return None, EXIT_UNCERTIFIABLE
    include_series = args.command in ("series", "verify")
    verification = None
    code = EXIT_OK
    if args.command == "verify":
        verification = {}
        for r in reports:
            if r.multiplicity == "none":
                continue
            result = check_isochronous(
                h, r, starts=args.starts, radius=args.radius, tol=args.tol)
            verification[r.chart] = result
            if not result.passed:
                code = EXIT_VERIFY
    document = documents.report_document(
        h, reports, variables=variables, include_series=include_series,
        verification=verification)
    return document, code


def _process_bb(text, args):
    bb = documents.parse_bb_document(text, order=args.order)
    try:
        out = bb_classify(bb, order=args.order)
    except OrderTooSmall as err:
        print(f"error: {err}", file=sys.stderr)
        return None, EXIT_PARSE
    return documents.bb_report_document(bb, out, args.order), EXIT_OK


def main(argv=None):
    args = _build_parser().parse_args(argv)
    worst = EXIT_OK
    for path in args.files:
        try:
            text = _read(path)
        except OSError as err:
            print(f"error: cannot read {path}: {err}", file=sys.stderr)
            worst = max(worst, EXIT_PARSE)
            continue
        try:
            if args.command == "bb":
                document, code = _process_bb(text, args)
            else:
                document, code = _process_system(text, args)
        except ParseError as err:
            print(f"error: {path}: {err}", file=sys.stderr)
            worst = max(worst, EXIT_PARSE)
            continue
        except BBCenterError as err:
            print(f"error: {path}: {err}", file=sys.stderr)
            worst = max(worst, EXIT_UNCERTIFIABLE)
            continue
        if document is not None:
            print(documents.emit_report(document, args.format))
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
