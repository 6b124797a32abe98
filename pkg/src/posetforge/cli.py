"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 parse or validation error, 3 capacity.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import sys
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .dot import lattice_dot, poset_dot
from .enumeration import enumerate_nl, orbit_sum_report
from .errors import CapacityError, PosetError
from .ideals import enumerate_poset_vectors
from .posetcore import MAX_N, format_matrices, parse_matrix, v_extension
from .symmetry import aut_order_via_twins, automorphism_group, orbits_on_vectors, twin_decomposition
from .topology import format_nlt, next_nlt, parse_nlt, stream
from .verify import default_max_n, run_checks

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAPACITY = 0, 1, 2, 3

FORMATS = {
    "count": ("csv",),
    "list": ("text",),
    "extend": ("text",),
    "ideals": ("jsonl",),
    "aut": ("text",),
    "nlt": ("text",),
    "verify": ("text",),
    "dot": ("dot",),
}


class UsageError(Exception):
    pass


@dataclass
class CommandConfig:
    command: str
    n: int | None = None
    input: str | None = None
    output: str | None = None
    format: str | None = None
    method: str = "extension"
    shards: int = 1
    limit: int | None = None
    kind: str = "matrix"
    resume: str | None = None
    lattice: bool = False
    with_nip: bool = True
    key_store: str | None = None

    def validate(self) -> None:
        if self.command not in FORMATS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format is None:
            self.format = FORMATS[self.command][0]
        if self.format not in FORMATS[self.command]:
            raise UsageError(f"format {self.format!r} not available for {self.command!r}")
        if self.shards < 1:
            raise UsageError("--shards must be at least 1")
        if self.limit is not None and self.limit < 0:
            raise UsageError("--limit must be non-negative")
        if self.n is not None:
            if self.n < 0:
                raise UsageError("--n must be non-negative")
            if self.n > MAX_N:
                raise CapacityError(f"n = {self.n} exceeds capacity {MAX_N}")
        needs_n = {"count", "list"} | ({"nlt"} if self.resume is None else set())
        if self.command in needs_n and self.n is None:
            raise UsageError(f"{self.command} needs --n")
        if self.command in {"extend", "ideals", "aut", "dot"} and self.input is None:
            raise UsageError(f"{self.command} needs --input")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _limited(items: Iterable, limit: int | None):
    return items if limit is None else itertools.islice(items, limit)


def _emit_lines(out: TextIO, lines: Iterable[str]) -> None:
    for line in lines:
        out.write(line)
        out.write("\n")


def _matrix_blocks(out: TextIO, blocks: Iterable[str]) -> None:
    for k, block in enumerate(blocks):
        if k:
            out.write("\n")
        out.write(block)
        out.write("\n")


def _cmd_count(cfg: CommandConfig, out: TextIO) -> None:
    report = orbit_sum_report(cfg.n, shards=cfg.shards, with_nip=cfg.with_nip and cfg.n >= 1,
                              key_store=cfg.key_store)
    out.write(report.to_csv())
    if report.corollary_failures:
        raise PosetError(f"per-parent orbit check failed for {len(report.corollary_failures)} "
                         "parents")


def _cmd_list(cfg: CommandConfig, out: TextIO) -> None:
    if cfg.kind == "nlt":
        _emit_lines(out, (format_nlt(T) for T in _limited(stream(cfg.n), cfg.limit)))
    else:
        _matrix_blocks(out, format_matrices(_limited(enumerate_nl(cfg.n), cfg.limit)))


def _cmd_extend(cfg: CommandConfig, out: TextIO) -> None:
    A = parse_matrix(_read(cfg.input))
    children = (v_extension(A, v) for v in enumerate_poset_vectors(A).vectors)
    _matrix_blocks(out, format_matrices(_limited(children, cfg.limit)))


def _cmd_ideals(cfg: CommandConfig, out: TextIO) -> None:
    out.write(enumerate_poset_vectors(parse_matrix(_read(cfg.input))).to_jsonl())


def _cmd_aut(cfg: CommandConfig, out: TextIO) -> None:
    A = parse_matrix(_read(cfg.input))
    G = automorphism_group(A)
    twins = twin_decomposition(A)
    sep = "" if A.n <= 10 else ","
    orbits = orbits_on_vectors(A, G)
    out.write(f"order {G.order}\n")
    out.write(f"order_via_twins {aut_order_via_twins(A)}\n")
    out.write(f"classes {twins.format()}\n")
    out.write(f"quotient {' '.join(twins.quotient.to_text().split()) or 'e'}\n")
    out.write(f"orbit_count {orbits.class_count}\n")
    for orbit in orbits.orbits:
        out.write("orbit " + " ".join(v.word(sep) for v in orbit) + "\n")


def _cmd_nlt(cfg: CommandConfig, out: TextIO) -> None:
    if cfg.resume is not None:
        last = parse_nlt(cfg.resume)
        if cfg.n is not None and cfg.n != last.n:
            raise UsageError(f"resume topology has size {last.n}, not {cfg.n}")
        start = next_nlt(last)
        topologies = stream(last.n, start) if start is not None else iter(())
    else:
        topologies = stream(cfg.n)
    _emit_lines(out, (format_nlt(T) for T in _limited(topologies, cfg.limit)))


def _cmd_verify(cfg: CommandConfig, out: TextIO) -> bool:
    max_n = cfg.n if cfg.n is not None else default_max_n()
    ok = True
    for result in run_checks(max_n):
        out.write(result.line() + "\n")
        out.flush()
        ok &= result.ok
    return ok


def _cmd_dot(cfg: CommandConfig, out: TextIO) -> None:
    A = parse_matrix(_read(cfg.input))
    out.write(lattice_dot(enumerate_poset_vectors(A)) if cfg.lattice else poset_dot(A))


def run(cfg: CommandConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute one validated command; returns the process exit status."""
    err = err or sys.stderr
    try:
        cfg.validate()
        handle = open(cfg.output, "w") if cfg.output else None
        sink = handle or out or sys.stdout
        try:
            result = {
                "count": _cmd_count, "list": _cmd_list, "extend": _cmd_extend,
                "ideals": _cmd_ideals, "aut": _cmd_aut, "nlt": _cmd_nlt,
                "verify": _cmd_verify, "dot": _cmd_dot,
            }[cfg.command](cfg, sink)
        finally:
            if handle:
                handle.close()
        return EXIT_PARSE if result is False else EXIT_OK
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except CapacityError as exc:
        err.write(f"capacity error: {exc}\n")
        return EXIT_CAPACITY
    except (PosetError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="posetforge", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, n=False, inp=False):
        if n:
            p.add_argument("--n", type=int)
        if inp:
            p.add_argument("--input", help="matrix file ('-' for stdin)")
        p.add_argument("--output")
        p.add_argument("--format")
        p.add_argument("--limit", type=int)

    p = sub.add_parser("count", help="NL and NIP counts as a CSV row")
    common(p, n=True)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--no-nip", dest="with_nip", action="store_false")
    p.add_argument("--key-store", help="SQLite file for canonical keys")

    p = sub.add_parser("list", help="stream PM(n) or the NLTs of size n")
    common(p, n=True)
    p.add_argument("--kind", choices=("matrix", "nlt"), default="matrix")

    common(sub.add_parser("extend", help="all v-extensions of a matrix"), inp=True)
    common(sub.add_parser("ideals", help="ideal lattice as JSON lines"), inp=True)
    common(sub.add_parser("aut", help="automorphisms, twin classes and orbits"), inp=True)

    p = sub.add_parser("nlt", help="first/next topology stream")
    common(p, n=True)
    p.add_argument("--resume", help="continue after this topology line")

    common(sub.add_parser("verify", help="exhaustive invariant checks up to --n"), n=True)

    p = sub.add_parser("dot", help="Hasse diagram in DOT")
    common(p, inp=True)
    p.add_argument("--lattice", action="store_true", help="draw the ideal lattice instead")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    fields = vars(args)
    fields.pop("verbose")
    return run(CommandConfig(**fields))


if __name__ == "__main__":
    sys.exit(main())
