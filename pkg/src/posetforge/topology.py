"""Naturally labeled topologies and their first/next generation by interval doubling.

An NLT of size ``n`` is a family of subsets of ``X_n`` containing the empty set
and ``X_n`` and closed under union and intersection; it is the family of order
ideals of exactly one naturally labeled poset.  Families are kept as tuples of
bit sets sorted in length-lex order.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import StructureError, TopologyError
from .ideals import ideal_masks
from .posetcore import (
    PosetMatrix,
    check_capacity,
    full_set,
    lenlex_key,
    members,
    validate_poset_matrix,
)


@dataclass(frozen=True)
class NLT:
    n: int
    sets: tuple[int, ...]

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, S):
        return _find(self.sets, S) is not None

    def words(self) -> list[str]:
        return [format_set(S) for S in self.sets]

    def to_line(self) -> str:
        return format_nlt(self)

    def __repr__(self):
        return f"NLT({self.n}, {{{', '.join(format_set(S, '') for S in self.sets)}}})"


def format_set(S: int, sep: str = ",") -> str:
    return sep.join(str(x) for x in members(S)) if S else "e"


def _find(sets: Sequence[int], S: int) -> int | None:
    k = bisect_left(sets, lenlex_key(S), key=lenlex_key)
    return k if k < len(sets) and sets[k] == S else None


def _sorted_family(sets: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(sets, key=lenlex_key))


def validate_nlt(n: int, sets: Iterable[int]) -> bool:
    """True iff ``sets`` is a sorted, duplicate-free NLT on ``X_n``.

    Natural labeling means the identity is a linear extension, i.e. every
    prefix ``{0, ..., k-1}`` is a member.
    """
    sets = tuple(sets)
    if n < 0 or any(S < 0 or S >> n for S in sets):
        return False
    keys = [lenlex_key(S) for S in sets]
    if any(a >= b for a, b in zip(keys, keys[1:])):
        return False
    family = set(sets)
    if any(full_set(k) not in family for k in range(n + 1)):
        return False
    return all(S | T in family and S & T in family for S in sets for T in sets)


def make_nlt(n: int, sets: Iterable[int]) -> NLT:
    """Sort ``sets`` into length-lex order and validate the result."""
    check_capacity(n)
    ordered = _sorted_family(set(sets))
    if not validate_nlt(n, ordered):
        raise TopologyError("family is not closed under union and intersection, "
                            "or misses one of the prefixes {0..k-1}")
    return NLT(n, ordered)


def ideal_family(rows: Sequence[int]) -> tuple[int, ...]:
    return _sorted_family(ideal_masks(rows))


def ideals_to_nlt(A: PosetMatrix) -> NLT:
    return NLT(A.n, ideal_family(A.rows))


def nlt_to_poset(T: NLT) -> PosetMatrix:
    """Row ``y`` is the intersection of all members containing ``y``."""
    if not validate_nlt(T.n, T.sets):
        raise TopologyError("not a naturally labeled topology")
    rows = []
    for y in range(T.n):
        r = full_set(T.n)
        for S in T.sets:
            if (S >> y) & 1:
                r &= S
        rows.append(r)
    if not validate_poset_matrix(rows) or ideal_family(rows) != T.sets:
        raise TopologyError("topology is not the ideal family of a naturally labeled poset")
    return PosetMatrix.trusted(rows)


# --------------------------------------------------------------------------
# interval doubling


def grow(T: NLT, S: int) -> NLT:
    """Double the interval ``[S, X_n]``, adding the new element ``n`` to each copy."""
    if S not in T:
        raise TopologyError(f"{format_set(S)} is not a member of the topology")
    return _grow(T.n, T.sets, S)


def _grow(n: int, sets: tuple[int, ...], S: int) -> NLT:
    check_capacity(n + 1)
    bit = 1 << n
    doubled = [U | bit for U in sets if U & S == S]
    # both runs are already sorted, so timsort merges them
    return NLT(n + 1, tuple(sorted(sets + tuple(doubled), key=lenlex_key)))


def cut(T: NLT) -> NLT:
    """Drop every set containing ``n - 1``."""
    if T.n == 0:
        raise TopologyError("cannot cut a topology of size 0")
    bit = 1 << (T.n - 1)
    return NLT(T.n - 1, tuple(U for U in T.sets if not U & bit))


def next_in(T: NLT, S: int) -> int | None:
    """The member of ``T`` right after ``S`` in length-lex order, or None."""
    k = _find(T.sets, S)
    if k is None:
        raise TopologyError(f"{format_set(S)} is not a member of the topology")
    return T.sets[k + 1] if k + 1 < len(T.sets) else None


def first(n: int) -> NLT:
    """``n``-fold doubling of ``{empty}`` at the empty set: the full power set."""
    T = NLT(0, (0,))
    for _ in range(n):
        T = _grow(T.n, T.sets, 0)
    return T


def next_nlt(T: NLT) -> NLT | None:
    """Successor of ``T`` in the first/next order, or None for the last one.

    Let ``S`` be the least member containing ``n - 1``, ``S'`` = ``S`` minus
    ``n - 1`` and ``T'`` the cut of ``T``.  If ``S'`` has a successor ``S''`` in
    ``T'`` the answer is ``grow(T', S'')``; otherwise it is the successor of ``T'``
    doubled at the empty set.  The recursion is unrolled: cut downward until a
    level has a successor, then double at the empty set back up.
    """
    levels_up = 0
    while T.n > 0:
        bit = 1 << (T.n - 1)
        S = next(U for U in T.sets if U & bit)
        parent = cut(T)
        successor = next_in(parent, S & ~bit)
        if successor is not None:
            out = grow(parent, successor)
            for _ in range(levels_up):
                out = _grow(out.n, out.sets, 0)
            return out
        T = parent
        levels_up += 1
    return None


def stream(n: int, start: NLT | None = None) -> Iterator[NLT]:
    """Iterate ``first(n)``, ``next``, ``next``, ... ; from ``start`` if given (inclusive)."""
    T = first(n) if start is None else start
    while T is not None:
        yield T
        T = next_nlt(T)


def generate_recursive(n: int) -> list[NLT]:
    """All NLTs of size ``n`` by doubling every member of every NLT of size ``n - 1``."""
    if n == 0:
        return [NLT(0, (0,))]
    found: dict[NLT, None] = {}
    for T in generate_recursive(n - 1):
        for S in T.sets:
            found.setdefault(_grow(T.n, T.sets, S))
    return list(found)


def generate_all(n: int, mode: str = "stream") -> Iterator[NLT] | list[NLT]:
    if mode == "stream":
        return stream(n)
    if mode == "recursive":
        return generate_recursive(n)
    raise ValueError(f"unknown mode {mode!r}; expected 'stream' or 'recursive'")


def count_stream(n: int) -> int:
    return sum(1 for _ in stream(n))


# --------------------------------------------------------------------------
# text format: "e 0 1 0,1"


def format_nlt(T: NLT) -> str:
    return " ".join(format_set(S) for S in T.sets)


def parse_nlt(line: str, lineno: int | None = None) -> NLT:
    """Parse one line; the size is the cardinality of the largest set."""
    tokens = line.split()
    if not tokens:
        raise StructureError("empty topology line", line=lineno)
    sets = []
    for tok in tokens:
        if tok == "e":
            sets.append(0)
            continue
        try:
            elements = [int(x) for x in tok.split(",")]
        except ValueError:
            raise StructureError(f"bad set {tok!r}", line=lineno) from None
        if any(x < 0 for x in elements):
            raise StructureError(f"bad set {tok!r}", line=lineno)
        mask = 0
        for x in elements:
            mask |= 1 << x
        sets.append(mask)
    n = max(S.bit_count() for S in sets)
    check_capacity(n)
    if not validate_nlt(n, sets):
        raise TopologyError(f"line {lineno}: not a sorted naturally labeled topology"
                            if lineno else "not a sorted naturally labeled topology")
    return NLT(n, tuple(sets))
