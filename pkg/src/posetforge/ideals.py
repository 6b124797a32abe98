"""Poset vectors, order ideals and the ideal lattice of a poset matrix."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ExtensionError, NotAnAntichainError, StructureError
from .posetcore import (
    PosetMatrix,
    PosetVector,
    first_violation,
    full_set,
    lenlex_key,
    members,
    parse_set_word,
    vector_bits,
)


def ideal_masks(rows: Sequence[int]) -> list[int]:
    """All order ideals as bit sets, in generation order.

    Elements are decided in increasing label order; element ``i`` may join an
    ideal only when its strict down-set is already inside.
    """
    ideals = [0]
    for i, r in enumerate(rows):
        bit = 1 << i
        strict = r ^ bit
        ideals += [I | bit for I in ideals if strict & ~I == 0]
    return ideals


def count_ideals(rows: Sequence[int]) -> int:
    return len(ideal_masks(rows))


def is_poset_vector(A: PosetMatrix, v: "PosetVector | int") -> bool:
    """True iff ``vA = v`` over the Boolean semiring."""
    bits = vector_bits(v, A.n)
    product = 0
    for i in members(bits):
        product |= A.rows[i]
    return product == bits


@dataclass(frozen=True)
class IdealLattice:
    """Poset vectors of a matrix in length-lex order, with their cover edges.

    ``hasse`` holds index pairs ``(lower, upper)`` into ``vectors``.
    """

    n: int
    vectors: tuple[PosetVector, ...]
    hasse: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, v):
        return v in self._index

    @property
    def _index(self) -> dict[PosetVector, int]:
        # cached lazily on the frozen instance
        try:
            return self.__dict__["_idx"]
        except KeyError:
            idx = {v: k for k, v in enumerate(self.vectors)}
            object.__setattr__(self, "_idx", idx)
            return idx

    def index(self, v: PosetVector) -> int:
        return self._index[v]

    def supports(self) -> list[int]:
        return [v.bits for v in self.vectors]

    def covers_below(self, k: int) -> list[int]:
        return [lo for lo, hi in self.hasse if hi == k]

    def to_jsonl(self) -> str:
        """JSON lines: a header, one line per vector word, then one per Hasse edge."""
        sep = "" if self.n <= 10 else ","
        lines = [json.dumps({"n": self.n, "size": len(self.vectors)})]
        lines += [json.dumps({"vector": v.word(sep)}) for v in self.vectors]
        lines += [json.dumps({"edge": [lo, hi]}) for lo, hi in self.hasse]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "IdealLattice":
        records = [json.loads(line) for line in text.splitlines() if line.strip()]
        if not records or "n" not in records[0]:
            raise StructureError("missing header line", line=1)
        n = records[0]["n"]
        sep = "" if n <= 10 else ","
        vectors, edges = [], []
        for lineno, rec in enumerate(records[1:], 2):
            if "vector" in rec:
                vectors.append(PosetVector(n, parse_set_word(rec["vector"], sep)))
            elif "edge" in rec:
                edges.append(tuple(rec["edge"]))
            else:
                raise StructureError(f"unknown record {rec!r}", line=lineno)
        return cls(n, tuple(vectors), tuple(edges))


def _hasse_edges(masks: Sequence[int]) -> tuple[tuple[int, int], ...]:
    # in an ideal lattice, covers add exactly one element
    where = {m: k for k, m in enumerate(masks)}
    edges = []
    for hi, m in enumerate(masks):
        for x in members(m):
            lo = where.get(m ^ (1 << x))
            if lo is not None:
                edges.append((lo, hi))
    edges.sort()
    return tuple(edges)


def lattice_from_masks(n: int, masks: Iterable[int]) -> IdealLattice:
    ordered = sorted(masks, key=lenlex_key)
    return IdealLattice(n, tuple(PosetVector(n, m) for m in ordered), _hasse_edges(ordered))


def enumerate_poset_vectors(A: PosetMatrix) -> IdealLattice:
    """The ideal lattice ``L_A``: every ``v`` with ``vA = v``."""
    return lattice_from_masks(A.n, ideal_masks(A.rows))


def antichain_to_vector(A: PosetMatrix, S: "PosetVector | int") -> PosetVector:
    """Boolean sum of the rows indexed by an antichain ``S``."""
    bits = vector_bits(S, A.n)
    v = 0
    for i in members(bits):
        comparable = (A.rows[i] & bits) & ~(1 << i)
        if comparable:
            j = (comparable & -comparable).bit_length() - 1
            raise NotAnAntichainError(f"{j} and {i} are comparable", (j, i))
        v |= A.rows[i]
    return PosetVector(A.n, v)


def ideal_to_max_antichain(A: PosetMatrix, v: "PosetVector | int") -> int:
    """Maximal elements of the ideal ``supp(v)``, as a bit set."""
    bits = vector_bits(v, A.n)
    witness = first_violation(A.rows, bits)
    if witness is not None:
        raise ExtensionError(f"not a poset vector: {witness[1]} below {witness[0]} is missing",
                             witness)
    strictly_below = 0
    for i in members(bits):
        strictly_below |= A.rows[i] & ~(1 << i)
    return bits & ~strictly_below


def lattice_join_meet(u: PosetVector, v: PosetVector) -> tuple[PosetVector, PosetVector]:
    if u.n != v.n:
        raise StructureError(f"size mismatch: {u.n} vs {v.n}")
    return PosetVector(u.n, u.bits | v.bits), PosetVector(u.n, u.bits & v.bits)


def join_irreducibles(L: IdealLattice) -> list[PosetVector]:
    """Members of ``L`` covering exactly one element, in lattice order.

    In a finite distributive lattice these are exactly the join-irreducibles.
    """
    below = [0] * len(L.vectors)
    for lo, hi in L.hasse:
        below[hi] += 1
    return [v for v, c in zip(L.vectors, below) if c == 1]


def rows_as_vectors(A: PosetMatrix) -> list[PosetVector]:
    return [PosetVector(A.n, r) for r in A.rows]


def row_space(A: PosetMatrix) -> set[int]:
    """Closure of the rows under Boolean sums, including the empty sum."""
    span = {0}
    for r in A.rows:
        span |= {s | r for s in span}
    return span


def all_fixed_points(A: PosetMatrix) -> list[int]:
    """Brute force over all ``2^n`` vectors: those with ``vA = v``."""
    return [m for m in range(1 << A.n) if is_poset_vector(A, m)]


def top(n: int) -> PosetVector:
    return PosetVector(n, full_set(n))
