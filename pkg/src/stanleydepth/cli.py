"""Command-line interface.

Exit codes: 0 on success, 2 when ``verify-tables`` finds a mismatch, 64 on
usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from .criteria import combinatorial_criterion, strong_cc
from .lattice import (Antichain, AntichainError, MAX_N, complement_upset, down_closure,
                      f_vector, format_set, mask_of, validate_partition)

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_USAGE = 64

log = logging.getLogger("stanleydepth")


class UsageError(Exception):
    pass


class ParseError(ValueError):
    """Malformed antichain text; ``line`` and ``col`` are 1-based."""

    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def _tokens(text: str):
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        col = 0
        for part in line.split():
            col = line.index(part, col)
            yield part, ln, col + 1
            col += len(part)


def _parse_facet(tok: str, ln: int, col: int, compact: bool) -> list[int]:
    if tok == "{}":
        return []
    if "," not in tok and compact and len(tok) > 1:
        pieces = [(c, col + i) for i, c in enumerate(tok)]
    else:
        pieces = []
        off = 0
        for p in tok.split(","):
            pieces.append((p, col + off))
            off += len(p) + 1
    out = []
    for p, c in pieces:
        if not p.isdigit():
            raise ParseError(f"malformed vertex {p!r} in {tok!r}", ln, c)
        v = int(p)
        if not 1 <= v <= MAX_N:
            raise ParseError(f"vertex {v} outside 1..{MAX_N}", ln, c)
        out.append(v)
    return out


def parse_antichain(text: str, n: int | None = None) -> Antichain:
    """Parse whitespace-separated facets such as ``"1,2,3 1,2,4"`` or ``"123 124"``.

    Comma-free tokens are read digit by digit unless ``n`` exceeds 9. ``n``
    defaults to the largest vertex present; ``{}`` is the empty facet.
    """
    compact = n is None or n <= 9
    facets = []
    first_pos = {}
    for tok, ln, col in _tokens(text):
        vs = _parse_facet(tok, ln, col, compact)
        m = mask_of(vs)
        facets.append(m)
        first_pos.setdefault(m, (ln, col))
    top = max((max(_bits(m)) for m in facets if m), default=0)
    if n is None:
        n = top
    elif top > n:
        raise ParseError(f"vertex {top} exceeds n={n}", *max(first_pos.values()))
    for a, pa in first_pos.items():
        for b, pb in first_pos.items():
            if a != b and a & b == a:
                raise ParseError(f"comparable pair {{{format_set(a)}}} < {{{format_set(b)}}}",
                                 *max(pa, pb))
    return Antichain(facets, n)


def _bits(m: int) -> list[int]:
    return [v + 1 for v in range(m.bit_length()) if m >> v & 1]


def parse_generators(text: str) -> list[tuple[int, ...]]:
    """Exponent vectors such as ``"2,0,1 0,1,1"`` (parentheses optional)."""
    out = []
    width = None
    for tok, ln, col in _tokens(text.replace(";", " ")):
        body = tok.strip("()")
        try:
            vec = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise ParseError(f"malformed exponent vector {tok!r}", ln, col) from None
        if any(x < 0 for x in vec):
            raise ParseError(f"negative exponent in {tok!r}", ln, col)
        if width is not None and len(vec) != width:
            raise ParseError(f"{tok!r} has {len(vec)} entries, expected {width}", ln, col)
        width = len(vec)
        out.append(vec)
    return out


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    jobs: int = 1


def _read_input(args) -> str:
    if getattr(args, "input", None):
        if args.input == "-":
            return sys.stdin.read()
        with open(args.input) as fh:
            return fh.read()
    return " ".join(args.antichain or [])


def _antichain(args) -> Antichain:
    return parse_antichain(_read_input(args), args.n)


def _family(facets: Antichain, side: str):
    return down_closure(facets) if side == "quotient" else complement_upset(facets)


def _fmt_vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# -- subcommands --------------------------------------------------------------

def cmd_sdepth(args, out) -> int:
    from .solver import decide_sdepth_at_least, oracle_sdepth, sdepth

    facets = _antichain(args)
    fam = _family(facets, args.side)
    if args.oracle:
        try:
            print(oracle_sdepth(fam), file=out)
        except ValueError as e:
            raise UsageError(str(e)) from None
        return EXIT_OK
    if args.at_least is not None:
        w = decide_sdepth_at_least(fam, args.at_least, prune=args.prune)
        print("yes" if w is not None else "no", file=out)
        if w is not None and args.witness:
            for iv in w:
                print(iv, file=out)
        return EXIT_OK
    ans = sdepth(fam, prune=args.prune)
    print(ans.value, file=out)
    if ans.empty:
        print(f"# empty family: value {ans.value} is the convention n", file=out)
    if args.witness:
        assert validate_partition(ans.witness, fam) is None
        for iv in ans.witness:
            print(iv, file=out)
    return EXIT_OK


def cmd_scc(args, out) -> int:
    facets = _antichain(args)
    if not facets.masks:
        raise UsageError("scc needs a nonempty antichain")
    k = facets.min_size() if args.k is None else args.k
    f = f_vector(down_closure(facets), k)
    cc = combinatorial_criterion(f, k)
    print(f"f-vector {_fmt_vec(f)} k={k}", file=out)
    print(f"criterion: {'Pass' if cc.passed else 'Fail'}", file=out)
    print("trace: " + " ".join(_fmt_vec(t) for t in cc.trace), file=out)
    res = strong_cc(facets, k)
    if res.passed:
        print("strong criterion: Pass", file=out)
    else:
        print(f"strong criterion: Fail witness {{{format_set(res.witness)}}}", file=out)
        print("witness trace: " + " ".join(_fmt_vec(t) for t in res.witness_result.trace),
              file=out)
    return EXIT_OK


def cmd_reduce(args, out) -> int:
    from .reductions import bad_degree, corollary_n1, reduce_to_fixpoint

    facets = _antichain(args)
    if not facets.masks:
        raise UsageError("reduce needs a nonempty antichain")
    rep = bad_degree(facets)
    print(f"bad degree: {rep.bad_degree} (uncovered vertex {rep.uncovered_vertex}, "
          f"common vertex {rep.common_vertex}); pure: {rep.pure}; k={rep.k}", file=out)
    print(f"all facets of size n-1: {corollary_n1(facets)}", file=out)
    for step in reduce_to_fixpoint(facets, args.k):
        detail = f" {step.detail}" if step.detail else ""
        print(f"{step.op}{detail}: {step.result} (n={step.result.n})", file=out)
    return EXIT_OK


def cmd_splits(args, out) -> int:
    from .reductions import splits_over

    facets = _antichain(args)
    if not facets.masks:
        raise UsageError("splits needs a nonempty antichain")
    verts = [args.vertex] if args.vertex else range(1, facets.n + 1)
    first = None
    for x in verts:
        if not 1 <= x <= facets.n:
            raise UsageError(f"vertex {x} outside 1..{facets.n}")
        ok = splits_over(facets, x, args.split_mode)
        print(f"{x}: {'splits' if ok else 'no'}", file=out)
        if ok and first is None:
            first = x
    print(f"first splitting vertex: {first if first is not None else 'none'}", file=out)
    return EXIT_OK


def cmd_grid(args, out) -> int:
    from .multigraded import (build_quotient_poset, grid_sdepth, n3_construct,
                              quotient_complement, validate_grid_partition)

    gens = parse_generators(_read_input(args))
    if not gens:
        raise UsageError("grid needs at least one generator")
    g = parse_generators(args.g)[0] if args.g else None
    try:
        if args.construct_n3:
            p = n3_construct(gens, g)
            ideal = build_quotient_poset(gens, (), p.g)
            bad = validate_grid_partition(p, ideal.points)
            for line in p.trace:
                print(f"# {line}", file=out)
            for iv in p:
                print(iv, file=out)
            print(f"sdepth >= {p.sdepth}" + (f" INVALID: {bad}" if bad else ""), file=out)
            return EXIT_OK
        if g is None:
            from .multigraded import default_bound
            g = default_bound(gens)
        poset = (quotient_complement(gens, g) if args.side == "quotient"
                 else build_quotient_poset(gens, (), g))
        ans = grid_sdepth(poset)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(ans.value, file=out)
    if ans.empty:
        print(f"# empty poset: value {ans.value} is the convention n", file=out)
    if args.witness:
        for iv in ans.witness:
            print(iv, file=out)
    return EXIT_OK


def cmd_census(args, out) -> int:
    from .enumeration import ScaleError, run_census, write_jsonl

    records = [] if args.out else None
    try:
        rep = run_census(args.nv, args.kv, args.split_mode, args.include_empty, args.jobs,
                         args.long_running, records)
    except ScaleError as e:
        raise UsageError(str(e)) from None
    print(json.dumps(rep.to_json(), sort_keys=True), file=out)
    if args.out:
        with open(args.out, "w") as fh:
            write_jsonl(records, fh, sort=args.sort)
    return EXIT_OK


def cmd_gap(args, out) -> int:
    from .enumeration import ScaleError, gap_census

    try:
        rep = gap_census(args.nv, args.kv, args.include_empty, args.jobs, args.long_running)
    except ScaleError as e:
        raise UsageError(str(e)) from None
    print(rep.table(), file=out)
    if args.csv == "-":
        out.write(rep.to_csv())
    elif args.csv:
        with open(args.csv, "w") as fh:
            fh.write(rep.to_csv())
    return EXIT_OK


def load_tables(path: str | None = None) -> dict:
    if path:
        with open(path) as fh:
            return json.load(fh)
    return json.loads(resources.files("stanleydepth").joinpath("data/tables.json").read_text())


def _census_diff(row: dict, got: dict) -> list[str]:
    return [f"  {col}: expected {row[col]}, got {got[col]}"
            for col in got if col in row and row[col] != got[col]]


def verify_census_row(row: dict, jobs: int = 1, split_mode: str | None = None) -> tuple[list[str], str]:
    """Diff lines (empty on a match) and the split mode that was used.

    Splits and SdepthOK only need to match under one split mode, so a
    mismatch confined to those columns is retried with the other mode.
    """
    from .enumeration import run_census
    from .reductions import SPLIT_MODES

    modes = [split_mode] if split_mode else list(SPLIT_MODES)
    diff: list[str] = []
    for mode in modes:
        rep = run_census(row["n"], row["k"], mode, row["include_empty"], jobs,
                         long_running=row.get("gated", False))
        diff = _census_diff(row, rep.row())
        if not diff:
            return [], mode
        if any(not d.lstrip().startswith(("Splits", "SdepthOK")) for d in diff):
            break
    return diff, mode


def verify_gap_row(row: dict, jobs: int = 1) -> list[str]:
    from .enumeration import gap_census

    rep = gap_census(row["n"], row["k"], row["include_empty"], jobs,
                     long_running=row.get("gated", False))
    want = {(q, i): c for q, i, c in row["matrix"]}
    keys = sorted(set(want) | set(rep.matrix))
    return [f"  ({q},{i}): expected {want.get((q, i), 0)}, got {rep.matrix.get((q, i), 0)}"
            for q, i in keys if want.get((q, i), 0) != rep.matrix.get((q, i), 0)]


def cmd_verify_tables(args, out) -> int:
    tables = load_tables(args.tables)
    failed = False
    for row in tables.get("census", []):
        name = f"census n={row['n']} k={row['k']}"
        if row.get("gated") and not args.long_running:
            print(f"SKIP {name} (long-running)", file=out)
            continue
        diff, mode = verify_census_row(row, args.jobs, args.split_mode)
        print(f"{'FAIL' if diff else 'OK  '} {name} (split mode {mode})", file=out)
        for d in diff:
            print(d, file=out)
        failed |= bool(diff)
    for row in tables.get("gap", []):
        name = f"gap n={row['n']} k={row['k']}"
        if row.get("gated") and not args.long_running:
            print(f"SKIP {name} (long-running)", file=out)
            continue
        diff = verify_gap_row(row, args.jobs)
        print(f"{'FAIL' if diff else 'OK  '} {name}", file=out)
        for d in diff:
            print(d, file=out)
        failed |= bool(diff)
    return EXIT_MISMATCH if failed else EXIT_OK


# -- argument parsing ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stanleydepth", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def with_antichain(sp):
        sp.add_argument("antichain", nargs="*", help='facets, e.g. "1,2,3 1,2,4" or "123 124"')
        sp.add_argument("--input", "-i", help="read the antichain from a file ('-' for stdin)")
        sp.add_argument("--n", type=int, help="ground set size (default: largest vertex)")
        return sp

    sp = with_antichain(sub.add_parser("sdepth", help="exact Stanley depth"))
    sp.add_argument("--side", choices=("ideal", "quotient"), default="ideal")
    sp.add_argument("--at-least", type=int, metavar="K")
    sp.add_argument("--witness", action="store_true", help="print the partition")
    sp.add_argument("--oracle", action="store_true", help="naive exhaustive mode (n <= 4)")
    sp.add_argument("--prune", choices=("none", "cc", "scc"), default="cc")
    sp.set_defaults(func=cmd_sdepth)

    sp = with_antichain(sub.add_parser("scc", help="combinatorial and strong criteria"))
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_scc)

    sp = with_antichain(sub.add_parser("reduce", help="bad degree check and reductions"))
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_reduce)

    sp = with_antichain(sub.add_parser("splits", help="split test per vertex"))
    sp.add_argument("--vertex", type=int)
    sp.add_argument("--split-mode", choices=("exact", "criterion"), default="exact")
    sp.set_defaults(func=cmd_splits)

    sp = sub.add_parser("grid", help="multigraded posets of monomial ideals")
    sp.add_argument("antichain", nargs="*", metavar="generators",
                    help='exponent vectors, e.g. "2,0,0 0,1,1"')
    sp.add_argument("--input", "-i")
    sp.add_argument("--g", help="upper bound, e.g. 2,2,2 (default: componentwise max)")
    sp.add_argument("--side", choices=("ideal", "quotient"), default="ideal")
    sp.add_argument("--construct-n3", action="store_true")
    sp.add_argument("--witness", action="store_true")
    sp.set_defaults(func=cmd_grid)

    def with_scale(sp):
        sp.add_argument("nv", type=int, metavar="n")
        sp.add_argument("kv", type=int, metavar="k")
        sp.add_argument("--long-running", action="store_true")
        sp.add_argument("--jobs", type=_positive, default=1)
        sp.add_argument("--include-empty", action="store_true",
                        help="count the hypergraph with no edges")
        return sp

    sp = with_scale(sub.add_parser("census", help="classify all k-uniform hypergraphs"))
    sp.add_argument("--out", help="write one JSON record per hypergraph")
    sp.add_argument("--sort", action="store_true", help="write records in canonical order")
    sp.add_argument("--split-mode", choices=("exact", "criterion"), default="exact")
    sp.set_defaults(func=cmd_census)

    sp = with_scale(sub.add_parser("gap", help="sdepth(S/I) versus sdepth(I) counts"))
    sp.add_argument("--csv", help="write the matrix as CSV ('-' for stdout)")
    sp.set_defaults(func=cmd_gap)

    sp = sub.add_parser("verify-tables", help="rerun censuses and diff against expected tables")
    sp.add_argument("--tables", help="JSON file overriding the built-in tables")
    sp.add_argument("--long-running", action="store_true")
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--split-mode", choices=("exact", "criterion"))
    sp.set_defaults(func=cmd_verify_tables)
    return p


def dispatch(config: RunConfig, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        return config.args.func(config.args, out)
    except (ParseError, UsageError, AntichainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return dispatch(RunConfig(args.command, args, getattr(args, "jobs", 1)))


if __name__ == "__main__":
    sys.exit(main())
