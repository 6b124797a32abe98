"""Counting pipelines for naturally labeled posets and their isomorphism classes.

``|NL(n)|`` is computed two independent ways: summing ideal counts over all
poset matrices of size ``n - 1`` (each matrix has one child per ideal), and
counting the first/next stream of topologies.  ``|NIP(n)|`` is the number of
distinct canonical forms over all of ``PM(n)``.
"""

from __future__ import annotations

import csv
import io
import logging
import sqlite3
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterator

from .ideals import count_ideals, ideal_masks
from .posetcore import PosetMatrix, check_capacity, lenlex_key
from .symmetry import automorphism_group, burnside_count, canonical_form, matrix_hex
from .topology import count_stream

log = logging.getLogger(__name__)


def _children(rows: tuple[int, ...]) -> list[tuple[int, ...]]:
    bit = 1 << len(rows)
    return [rows + (v | bit,) for v in sorted(ideal_masks(rows), key=lenlex_key)]


def iter_rows(n: int) -> Iterator[tuple[int, ...]]:
    """Rows of every matrix in ``PM(n)``, depth-first by v-extension."""
    check_capacity(n)

    def descend(rows: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(rows) == n:
            yield rows
            return
        for child in _children(rows):
            yield from descend(child)

    return descend(())


def enumerate_nl(n: int) -> Iterator[PosetMatrix]:
    """Every poset matrix of size ``n`` exactly once.

    Each matrix of size ``k + 1`` is generated from its top-left ``k x k`` block,
    so no duplicates arise.  Children are visited in length-lex order of their
    extending vector.
    """
    for rows in iter_rows(n):
        yield PosetMatrix.trusted(rows)


def shard_of(rows: tuple[int, ...], shards: int) -> int:
    """Stable shard index of a matrix, from a CRC of its row-major bit-string."""
    return zlib.crc32(rows_hex(rows).encode()) % shards


def _extension_shard(n: int, shard: int, shards: int) -> int:
    return sum(count_ideals(rows) for rows in iter_rows(n - 1)
               if shards == 1 or shard_of(rows, shards) == shard)


def count_nl(n: int, method: str = "extension", shards: int = 1) -> int:
    """``|NL(n)|`` by the extension sum or by counting the topology stream."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if method == "stream":
        return count_stream(n)
    if method != "extension":
        raise ValueError(f"unknown method {method!r}; expected 'extension' or 'stream'")
    if n == 0:
        return 1
    if shards <= 1:
        return _extension_shard(n, 0, 1)
    with ProcessPoolExecutor(shards) as pool:
        return sum(pool.map(_extension_shard, [n] * shards, range(shards), [shards] * shards))


# --------------------------------------------------------------------------
# isomorphism classes


class KeyStore:
    """Deduplicating set of canonical keys, in memory or in an SQLite file."""

    def __init__(self, path: str | None = None):
        self._mem: set | None = None if path else set()
        self._db = None
        if path:
            self._db = sqlite3.connect(path)
            self._db.execute("CREATE TABLE IF NOT EXISTS keys (k TEXT PRIMARY KEY)")
            self._db.execute("DELETE FROM keys")

    def update(self, keys) -> None:
        if self._mem is not None:
            self._mem.update(keys)
        else:
            self._db.executemany("INSERT OR IGNORE INTO keys VALUES (?)",
                                 ((rows_hex(k),) for k in keys))

    def __len__(self) -> int:
        if self._mem is not None:
            return len(self._mem)
        return self._db.execute("SELECT COUNT(*) FROM keys").fetchone()[0]

    def close(self) -> None:
        if self._db is not None:
            self._db.commit()
            self._db.close()


def rows_hex(rows: tuple[int, ...]) -> str:
    return matrix_hex(PosetMatrix.trusted(rows))


def _canonical_rows(rows: tuple[int, ...]) -> tuple[int, ...]:
    return canonical_form(PosetMatrix.trusted(rows)).rows


def _nip_shard(n: int, shard: int, shards: int) -> set[tuple[int, ...]]:
    keys = set()
    if n == 0:
        return {()}
    for parent in iter_rows(n - 1):
        if shards > 1 and shard_of(parent, shards) != shard:
            continue
        keys.update(_canonical_rows(child) for child in _children(parent))
    return keys


def count_nip(n: int, shards: int = 1, key_store: str | None = None) -> int:
    """Number of isomorphism classes of posets on ``n`` elements."""
    check_capacity(n)
    store = KeyStore(key_store)
    try:
        if shards <= 1:
            store.update(_nip_shard(n, 0, 1))
        else:
            with ProcessPoolExecutor(shards) as pool:
                for keys in pool.map(_nip_shard, [n] * shards, range(shards), [shards] * shards):
                    store.update(keys)
        return len(store)
    finally:
        store.close()


# --------------------------------------------------------------------------
# orbit-sum report


CSV_FIELDS = ("n", "nl_extension", "nl_stream", "nip", "orbit_sum", "gap",
              "seconds_extension", "seconds_stream")


@dataclass
class CountReport:
    n: int
    nl_count_extension: int
    nl_count_stream: int
    nip_count: int | None = None
    orbit_sum: int | None = None
    elapsed: dict[str, float] = field(default_factory=dict)
    # parents whose orbit count differs from their number of distinct children classes
    corollary_failures: list[tuple[int, ...]] = field(default_factory=list)
    parents_checked: int = 0

    @property
    def gap(self) -> int | None:
        if self.orbit_sum is None or self.nip_count is None:
            return None
        return self.orbit_sum - self.nip_count

    def csv_row(self) -> list:
        def blank(x):
            return "" if x is None else x
        return [self.n, self.nl_count_extension, self.nl_count_stream, blank(self.nip_count),
                blank(self.orbit_sum), blank(self.gap),
                f"{self.elapsed.get('extension', 0.0):.3f}",
                f"{self.elapsed.get('stream', 0.0):.3f}"]

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if header:
            writer.writerow(CSV_FIELDS)
        writer.writerow(self.csv_row())
        return buf.getvalue()

    @classmethod
    def from_csv_row(cls, row: dict[str, str]) -> "CountReport":
        def opt(key):
            return int(row[key]) if row[key] != "" else None
        return cls(n=int(row["n"]), nl_count_extension=int(row["nl_extension"]),
                   nl_count_stream=int(row["nl_stream"]), nip_count=opt("nip"),
                   orbit_sum=opt("orbit_sum"),
                   elapsed={"extension": float(row["seconds_extension"]),
                            "stream": float(row["seconds_stream"])})


def _orbit_shard(n: int, shard: int, shards: int):
    keys: set[tuple[int, ...]] = set()
    orbit_sum = 0
    failures = []
    checked = 0
    for parent in iter_rows(n - 1):
        if shards > 1 and shard_of(parent, shards) != shard:
            continue
        A = PosetMatrix.trusted(parent)
        orbits = burnside_count(A, automorphism_group(A))
        own = {_canonical_rows(child) for child in _children(parent)}
        if len(own) != orbits:
            failures.append(parent)
        orbit_sum += orbits
        checked += 1
        keys |= own
    return orbit_sum, keys, failures, checked


def orbit_sum_report(n: int, shards: int = 1, with_nip: bool = True,
                     key_store: str | None = None) -> CountReport:
    """Both NL counts, the NIP census and the sum of per-parent orbit counts.

    The orbit count of each parent is checked against the number of distinct
    isomorphism classes among that parent's own extensions.  The global sum over
    parents can exceed ``|NIP(n)|``, since one class may extend several parents;
    the difference is reported as ``gap``.
    """
    if n < 1 and with_nip:
        raise ValueError("orbit-sum report needs n >= 1")
    elapsed = {}
    t0 = time.perf_counter()
    nl_ext = count_nl(n, "extension", shards)
    elapsed["extension"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    nl_stream = count_nl(n, "stream")
    elapsed["stream"] = time.perf_counter() - t0
    report = CountReport(n, nl_ext, nl_stream, elapsed=elapsed)
    if not with_nip:
        return report

    t0 = time.perf_counter()
    store = KeyStore(key_store)
    try:
        if shards <= 1:
            results = [_orbit_shard(n, 0, 1)]
        else:
            with ProcessPoolExecutor(shards) as pool:
                results = list(pool.map(_orbit_shard, [n] * shards, range(shards),
                                        [shards] * shards))
        for orbit_sum, keys, failures, checked in results:
            report.orbit_sum = (report.orbit_sum or 0) + orbit_sum
            store.update(keys)
            report.corollary_failures.extend(failures)
            report.parents_checked += checked
        report.nip_count = len(store)
    finally:
        store.close()
    elapsed["nip"] = time.perf_counter() - t0
    if report.gap:
        log.info("n=%d: orbit sum %d exceeds NIP count %d by %d",
                 n, report.orbit_sum, report.nip_count, report.gap)
    return report


# --------------------------------------------------------------------------
# bundled reference values


@dataclass(frozen=True)
class ReferenceValue:
    sequence: str
    n: int
    value: int
    provenance: str


def reference_table() -> list[ReferenceValue]:
    text = resources.files("posetforge").joinpath("data/reference.csv").read_text()
    rows = csv.DictReader(line for line in text.splitlines() if not line.startswith("#"))
    return [ReferenceValue(r["sequence"], int(r["n"]), int(r["value"]), r["provenance"])
            for r in rows]


def reference_values(sequence: str) -> dict[int, int]:
    return {r.n: r.value for r in reference_table() if r.sequence == sequence}
