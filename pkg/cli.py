"""
Antilattice toolkit command line.

Reads and writes algebras as JSON ({"n": .., "join": [[..]], "meet": [[..]]}).

Examples:
    python cli.py verify data/algebras/flat_2_LR.json
    python cli.py gen --sig 2,1,1,2
    python cli.py count 12 --variety s
    python cli.py enumerate 6 --jobs 1
    python cli.py table 16

Exit codes: 0 success or positive verdict, 1 negative verdict (not a
regular antilattice, census mismatch, no witness), 2 usage, input,
capacity or contract errors.
"""

import argparse
import json
import os
import sys

from src import config
from src.algebra_core import (
    direct_product,
    flat_class,
    is_antilattice,
    is_band,
    is_quasilattice,
    is_rectangular,
    is_skew_lattice,
    make_flat,
)
from src.counting import (
    congruence_count,
    count_in_variety,
    oeis_table,
    render_table_text,
    rho,
    subalgebra_count,
    table_rows_to_json,
    variety_breakdown,
)
from src.data_loader import (
    algebra_to_dict,
    decomposition_to_dict,
    dump_algebra,
    load_algebra,
    partition_to_dict,
    save_algebra,
    save_decomposition,
)
from src.enumeration import (
    congruences_bruteforce,
    enumerate_antilattices,
    find_nonregular_witness,
    subalgebras_bruteforce,
)
from src.errors import AntilatticeError, ValidationError
from src.structure import canonical_product, decompose, is_regular, parse_signature, regularity_certificate
from src.varieties import VARIETY_SYMBOLS, membership, parse_variety

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _wants_json(args) -> bool:
    return args.format == "json" or getattr(args, "json", False)


def _emit(args, payload, text: str) -> None:
    if _wants_json(args):
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _write_algebra(args, A) -> None:
    if getattr(args, "output", None):
        path = save_algebra(A, args.output)
        print(f"wrote {path}", file=sys.stderr)
    else:
        sys.stdout.write(dump_algebra(A))


def _regular_signature(A):
    """Signature when A is a regular antilattice, else None."""
    if is_antilattice(A) and is_regular(A):
        return decompose(A).signature
    return None


def cmd_verify(args) -> int:
    """Predicate report; exit 0 iff the algebra is a regular antilattice."""
    A = load_algebra(args.file)
    antilattice = is_antilattice(A)
    certificate = regularity_certificate(A) if antilattice else None
    regular = antilattice and certificate is None
    cls = flat_class(A) if antilattice else None

    payload = {
        "n": A.n,
        "join": {"band": is_band(A.join), "rectangular": is_rectangular(A.join)},
        "meet": {"band": is_band(A.meet), "rectangular": is_rectangular(A.meet)},
        "antilattice": antilattice,
        "quasilattice": is_quasilattice(A),
        "skew_lattice": is_skew_lattice(A),
        "regular": regular if antilattice else None,
        "certificate": certificate.to_dict() if certificate else None,
        "flat_class": cls.value if cls else None,
    }
    lines = [
        f"order: {A.n}",
        f"join: band {_yes(payload['join']['band'])}, rectangular {_yes(payload['join']['rectangular'])}",
        f"meet: band {_yes(payload['meet']['band'])}, rectangular {_yes(payload['meet']['rectangular'])}",
        f"antilattice: {_yes(antilattice)}",
        f"quasilattice: {_yes(payload['quasilattice'])}",
        f"skew lattice: {_yes(payload['skew_lattice'])}",
    ]
    if antilattice:
        lines.append(f"regular: {_yes(regular)}" + (f" ({certificate.describe()})" if certificate else ""))
        lines.append(f"flat: {cls.value if cls else 'none'}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if regular else EXIT_NEGATIVE


def cmd_classify(args) -> int:
    A = load_algebra(args.file)
    if not is_antilattice(A):
        _emit(args, {"antilattice": False}, "not an antilattice")
        return EXIT_NEGATIVE
    certificate = regularity_certificate(A)
    if certificate is not None:
        _emit(
            args,
            {"antilattice": True, "regular": False, "certificate": certificate.to_dict()},
            f"not regular: {certificate.describe()}",
        )
        return EXIT_NEGATIVE

    cls = flat_class(A)
    sig = decompose(A).signature
    variety = membership(A)
    payload = {
        "antilattice": True,
        "regular": True,
        "flat_class": cls.value if cls else None,
        "signature": list(sig),
        "variety": variety.symbol,
    }
    text = "\n".join([
        f"flat: {cls.value if cls else 'none'}",
        f"signature: {sig}",
        f"variety: {variety.symbol} ({variety.name})",
    ])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_decompose(args) -> int:
    A = load_algebra(args.file)
    d = decompose(A)
    payload = decomposition_to_dict(d)
    if args.output_dir:
        for path in save_decomposition(d, args.output_dir):
            print(f"wrote {path}", file=sys.stderr)
    text = "\n".join(
        [f"signature: {d.signature}"]
        + [f"{x} -> {tuple(row)}" for x, row in enumerate(d.iso.tolist())]
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.sig:
        A = canonical_product(parse_signature(args.sig))
    else:
        if args.n is None or args.cls is None:
            raise ValidationError("gen needs N and CLASS, or --sig a,b,c,d")
        A = make_flat(args.n, args.cls)
    _write_algebra(args, A)
    return EXIT_OK


def cmd_product(args) -> int:
    A = direct_product(load_algebra(args.first), load_algebra(args.second))
    _write_algebra(args, A)
    return EXIT_OK


def cmd_count(args) -> int:
    n = args.n
    if args.all:
        counts = variety_breakdown(n)
        payload = {"n": n, "counts": counts}
        text = "\n".join(f"{symbol:>5}  {counts[symbol]}" for symbol in VARIETY_SYMBOLS)
    elif args.variety:
        V = parse_variety(args.variety)
        value = count_in_variety(V, n)
        payload = {"n": n, "variety": V.symbol, "count": value}
        text = str(value)
    else:
        value = rho(n)
        payload = {"n": n, "rho": value}
        text = str(value)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_subalgebras(args) -> int:
    A = load_algebra(args.file)
    subsets = subalgebras_bruteforce(A)
    sig = _regular_signature(A)
    formula = subalgebra_count(sig) if sig else None
    payload = {"count": len(subsets), "formula": formula}
    lines = [f"subalgebras: {len(subsets)}"]
    if formula is not None:
        lines.append(f"formula for signature {sig}: {formula}")
    if args.list:
        payload["subalgebras"] = [sorted(s) for s in subsets]
        lines.extend("{" + ", ".join(map(str, sorted(s))) + "}" for s in subsets)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if formula in (None, len(subsets)) else EXIT_NEGATIVE


def cmd_congruences(args) -> int:
    A = load_algebra(args.file)
    partitions = congruences_bruteforce(A)
    sig = _regular_signature(A)
    formula = congruence_count(sig) if sig else None
    payload = {"count": len(partitions), "formula": formula}
    lines = [f"congruences: {len(partitions)}"]
    if formula is not None:
        lines.append(f"formula for signature {sig}: {formula}")
    if args.list:
        payload["congruences"] = [partition_to_dict(p) for p in partitions]
        lines.extend(" | ".join(" ".join(map(str, block)) for block in p.classes()) for p in partitions)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if formula in (None, len(partitions)) else EXIT_NEGATIVE


def cmd_enumerate(args) -> int:
    """Exhaustive census; exit 1 when the class count differs from rho(n)."""
    report = enumerate_antilattices(args.n, max_order=args.max_order, jobs=args.jobs, strict=False)
    lines = [
        f"order: {report.n}",
        f"antilattices (labelled): {report.total_antilattices}",
        f"regular (labelled): {report.regular_labeled}",
        f"regular up to isomorphism: {report.regular_up_to_iso} (formula {rho(report.n)})",
        "",
        report.to_frame().to_string(index=False),
    ]
    if report.nonregular_witness is not None:
        lines += ["", "first non-regular pair:", dump_algebra(report.nonregular_witness).rstrip()]
    _emit(args, report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.matches_formula else EXIT_NEGATIVE


def cmd_table(args) -> int:
    rows = oeis_table(args.max_n)
    if _wants_json(args):
        print(json.dumps(table_rows_to_json(rows), indent=2))
    else:
        sys.stdout.write(render_table_text(rows))
    return EXIT_OK


def cmd_witness(args) -> int:
    """Exit 0 with a certified witness, 1 when every antilattice of order n is regular."""
    witness = find_nonregular_witness(args.n)
    if witness is None:
        _emit(args, {"n": args.n, "witness": None}, f"every antilattice of order {args.n} is regular")
        return EXIT_NEGATIVE
    payload = {
        "n": args.n,
        "witness": algebra_to_dict(witness.algebra),
        "certificate": witness.certificate.to_dict(),
    }
    text = dump_algebra(witness.algebra) + witness.certificate.describe()
    _emit(args, payload, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Finite antilattice toolkit")
    parser.add_argument("--format", choices=["text", "json"], default="text", help="Output format")
    parser.add_argument("--log-level", default=None, help="Logging level (default from ANTILATTICE_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="Check every axiom predicate of an algebra")
    p.add_argument("file")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("classify", help="Flat class, signature and variety")
    p.add_argument("file")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("decompose", help="Split a regular antilattice into flat factors")
    p.add_argument("file")
    p.add_argument("-o", "--output-dir", default=None, help="Write decomposition and factors here")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("gen", help="Generate a flat algebra or a canonical product")
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("cls", nargs="?", metavar="CLASS")
    p.add_argument("--sig", default=None, help="Signature a,b,c,d")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("product", help="Direct product of two algebras")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=cmd_product)

    p = sub.add_parser("count", help="Regular antilattices of order N up to isomorphism")
    p.add_argument("n", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--variety", default=None, help="Subvariety symbol, e.g. s or RR^C")
    group.add_argument("--all", action="store_true", help="All sixteen subvarieties")
    p.set_defaults(handler=cmd_count)

    for name, handler in (("subalgebras", cmd_subalgebras), ("congruences", cmd_congruences)):
        p = sub.add_parser(name, help=f"Brute-force {name} against the closed formula")
        p.add_argument("file")
        p.add_argument("--list", action="store_true")
        p.set_defaults(handler=handler)

    p = sub.add_parser("enumerate", help="Exhaustive census of antilattices of order N")
    p.add_argument("n", type=int)
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("table", help="Counting table for n = 1..MAXN")
    p.add_argument("max_n", type=int, metavar="MAXN")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("witness", help="Smallest non-regular antilattice of order N")
    p.add_argument("n", type=int)
    p.set_defaults(handler=cmd_witness)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR

    try:
        config.configure_logging(args.log_level)
        return args.handler(args)
    except AntilatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
