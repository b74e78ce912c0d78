"""Command-line front end.

Subcommands: stats, bound, girth, spectrum, certify, search, expand.
Exit codes: 0 success, 1 usage/IO/validation error, 2 for a mathematically
valid run whose certification (or search) failed. Output is line-oriented
and deterministic. QCGL_THREADS caps internal parallelism (0 = auto).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import annealing, bounds, cycle_engine, expansion, shift_matrix, verifier

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CERTIFIED = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); keep 2 for certification
        raise _UsageError(message)


def _load_matrix(path: str) -> shift_matrix.ShiftMatrix:
    return shift_matrix.parse(Path(path).read_text(encoding="utf-8"))


def _write_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_stats(args) -> int:
    matrix = _load_matrix(args.matrix)
    st = shift_matrix.stats(matrix)
    print(f"L={matrix.num_columns}")
    print(f"row1_max={st.row1_max}")
    print(f"row2_max={st.row2_max}")
    print(f"diff12_max={st.diff12_max}")
    print(f"diff21_max={st.diff21_max}")
    return EXIT_OK


def _cmd_bound(args) -> int:
    matrix = _load_matrix(args.matrix)
    tb = bounds.tight_bound(matrix)
    for label, value in zip(bounds.TERM_LABELS, tb.terms):
        print(f"term[{label}]={value}")
    print(f"P'={tb.girth12_bound}")
    print(f"girth10_bound={tb.girth10_bound}")
    print(f"first_certified_P={tb.first_certified_size}")
    print(f"start_length={matrix.num_columns * tb.first_certified_size}")
    return EXIT_OK


def _reduced(matrix, modulus, reduce_flag):
    if matrix.max_entry < modulus:
        return matrix
    if not reduce_flag:
        raise ValueError(
            f"entry {matrix.max_entry} is not below the modulus {modulus}; "
            "pass --reduce to reduce entries modulo the circulant size"
        )
    print(
        f"warning: reducing entries modulo {modulus}; the result applies to "
        "this circulant size only",
        file=sys.stderr,
    )
    return shift_matrix.ShiftMatrix([[x % modulus for x in row] for row in matrix.entries])


def _cmd_girth(args) -> int:
    matrix = _reduced(_load_matrix(args.matrix), args.p, args.reduce)
    print(cycle_engine.qc_girth(matrix, args.p, args.max_len))
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    matrix = _load_matrix(args.matrix)
    sys.stdout.write(cycle_engine.cycle_spectrum(matrix, args.max_len).dump())
    return EXIT_OK


def _cmd_certify(args) -> int:
    matrix = _load_matrix(args.matrix)
    report = verifier.certify(matrix, args.pmax)
    sys.stdout.write(report.to_text())
    return EXIT_OK if report.passed else EXIT_NOT_CERTIFIED


def _cmd_search(args) -> int:
    config = annealing.load_search_config(Path(args.config).read_text(encoding="utf-8"))
    if args.chains > 1:
        result = annealing.sa_search_parallel(
            config, args.chains, max_workers=annealing.max_workers_from_env()
        )
    else:
        result = annealing.sa_search(config)
    lines = [
        f"# seed={result.seed} iterations={result.iterations_used} "
        f"cost={result.final_cost:g} girth12_bound={result.girth12_bound}",
        result.matrix.serialize().rstrip("\n"),
    ]
    if result.success:
        lines.append(f"# girth 12 verified at modulus {result.girth12_modulus}")
        lines.append(result.certificate.to_text().rstrip("\n"))
    else:
        lines.append("# search did not reach girth 12")
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK if result.success else EXIT_NOT_CERTIFIED


def _cmd_expand(args) -> int:
    matrix = _load_matrix(args.matrix)
    parity = expansion.expand(matrix, args.p)
    if args.dense:
        _write_output(expansion.export_dense(parity), args.out)
    else:
        _write_output(expansion.export_alist(parity), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcgirth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="column maxima of a canonical matrix")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("bound", help="tight girth-12 threshold and derived sizes")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("girth", help="girth at one circulant size")
    p.add_argument("matrix")
    p.add_argument("--p", type=int, required=True, help="circulant size")
    p.add_argument("--max-len", type=int, default=cycle_engine.GIRTH_CAP)
    p.add_argument("--reduce", action="store_true", help="reduce entries mod P first")
    p.set_defaults(func=_cmd_girth)

    p = sub.add_parser("spectrum", help="dump the integer cycle-sum spectrum")
    p.add_argument("matrix")
    p.add_argument("--max-len", type=int, default=cycle_engine.GIRTH_CAP)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("certify", help="certify girth 12 over a size range")
    p.add_argument("matrix")
    p.add_argument("--pmax", type=int, required=True)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("search", help="annealing search for a girth-12 matrix")
    p.add_argument("--config", required=True)
    p.add_argument("--chains", type=int, default=1, help="independent annealing chains")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("expand", help="expand to a binary parity-check matrix")
    p.add_argument("matrix")
    p.add_argument("--p", type=int, required=True, help="circulant size")
    p.add_argument("--alist", action="store_true", help="alist output (default)")
    p.add_argument("--dense", action="store_true", help="dense 0/1 debug output")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_expand)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
