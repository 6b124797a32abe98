"""Boolean poset matrices.

A poset on ``X_n = {0, ..., n-1}`` is naturally labeled when ``x <= y`` in the
order implies ``x <= y`` as integers.  Its poset matrix ``A`` has ``a[i][j] = 1``
exactly when ``j`` is below ``i``; it is lower triangular, has a unit diagonal,
and is transitive.

Rows are stored as Python ints used as bit sets: bit ``j`` of ``rows[i]`` is
``a[i][j]``.  Every row fits in one 64-bit word, so ``n`` is capped at 64.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, ExtensionError, NaturalLabelingError, StructureError

MAX_N = 64


# --------------------------------------------------------------------------
# index sets


def members(mask: int) -> Iterator[int]:
    """Yield the elements of a bit set in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_members(elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask


def full_set(n: int) -> int:
    return (1 << n) - 1


def set_word(mask: int, sep: str = "") -> str:
    """Word of a subset: its elements in increasing order, ``e`` for the empty set.

    With ``sep=""`` the word is only unambiguous for elements below 10.
    """
    if not mask:
        return "e"
    return sep.join(str(x) for x in members(mask))


def parse_set_word(word: str, sep: str = "") -> int:
    word = word.strip()
    if word in ("e", "ε", ""):
        return 0
    parts = word.split(sep) if sep else list(word)
    try:
        return from_members(int(p) for p in parts)
    except ValueError:
        raise StructureError(f"bad subset word {word!r}") from None


_KEY_BITS = 64
_TABLE_BITS = 16
_key_table: list[int] | None = None


def _slow_lenlex_key(mask: int) -> int:
    rev = int(f"{mask:0{_KEY_BITS}b}"[::-1], 2)
    return (mask.bit_count() << _KEY_BITS) | (full_set(_KEY_BITS) ^ rev)


def lenlex_key(mask: int) -> int:
    """Integer sort key realizing length-lex order on subsets.

    Sets compare by cardinality, then lexicographically on their sorted element
    sequences (numeric element comparison).  Among sets of equal size, the one
    with the smaller first difference has the larger bit-reversed value, so the
    low part of the key is the complement of the bit reversal.
    """
    global _key_table
    if mask >> _TABLE_BITS:
        return _slow_lenlex_key(mask)
    if _key_table is None:
        _key_table = [_slow_lenlex_key(m) for m in range(1 << _TABLE_BITS)]
    return _key_table[mask]


def check_capacity(n: int) -> None:
    if n < 0:
        raise StructureError(f"negative size {n}")
    if n > MAX_N:
        raise CapacityError(f"size {n} exceeds capacity {MAX_N}")


# --------------------------------------------------------------------------
# matrices and vectors


@dataclass(frozen=True, eq=False)
class BoolMatrix:
    """A square Boolean matrix stored row-wise as bit sets."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise StructureError(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for i, r in enumerate(self.rows):
            if r < 0 or r >= limit:
                raise StructureError(f"row {i} has bits outside 0..{self.n - 1}")

    def __eq__(self, other):
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row_sums(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def col_sums(self) -> list[int]:
        return [sum((r >> j) & 1 for r in self.rows) for j in range(self.n)]

    def to_text(self) -> str:
        return "\n".join(
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.n)) for r in self.rows
        )

    def bitstring(self) -> str:
        """Row-major concatenation of all rows as a '0'/'1' string."""
        return "".join(self.to_text().split("\n"))

    def __repr__(self):
        return f"{type(self).__name__}({self.n}, [{'; '.join(self.to_text().split())}])"


class PosetMatrix(BoolMatrix):
    """Poset matrix of a naturally labeled poset; validated on construction."""

    def __post_init__(self):
        check_capacity(self.n)
        super().__post_init__()
        if not validate_poset_matrix(self.rows, self.n):
            raise StructureError("not a poset matrix (must be lower triangular, "
                                 "reflexive and transitive)")

    @classmethod
    def trusted(cls, rows: Sequence[int]) -> "PosetMatrix":
        """Build without validation; for rows produced by this package's generators."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", len(rows))
        object.__setattr__(obj, "rows", tuple(rows))
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "PosetMatrix":
        return cls(len(rows), tuple(rows))

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence[int]]) -> "PosetMatrix":
        """From a 0/1 nested list, ``lists[i][j]`` being entry ``(i, j)``."""
        n = len(lists)
        rows = []
        for i, row in enumerate(lists):
            if len(row) != n:
                raise StructureError(f"row {i} has length {len(row)}, expected {n}")
            rows.append(from_members(j for j, a in enumerate(row) if a))
        return cls(n, tuple(rows))

    def down(self, x: int) -> int:
        """Principal ideal of ``x`` (including ``x``)."""
        return self.rows[x]

    def up(self, x: int) -> int:
        """Principal filter of ``x`` (including ``x``)."""
        return from_members(z for z in range(self.n) if (self.rows[z] >> x) & 1)


@dataclass(frozen=True)
class PosetVector:
    """A Boolean row vector of length ``n`` stored by its support."""

    n: int
    bits: int

    @classmethod
    def from_tuple(cls, entries: Sequence[int]) -> "PosetVector":
        return cls(len(entries), from_members(i for i, a in enumerate(entries) if a))

    @classmethod
    def from_word(cls, n: int, word: str, sep: str = "") -> "PosetVector":
        return cls(n, parse_set_word(word, sep))

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def support(self) -> list[int]:
        return list(members(self.bits))

    def word(self, sep: str = "") -> str:
        return set_word(self.bits, sep)

    def __repr__(self):
        return f"PosetVector({''.join(map(str, self.to_tuple())) or 'e'})"


def vector_bits(v: "PosetVector | int", n: int) -> int:
    """Bits of ``v``, checking its ambient size when it is a PosetVector."""
    if isinstance(v, PosetVector):
        if v.n != n:
            raise StructureError(f"vector of size {v.n} used with matrix of size {n}")
        return v.bits
    if v < 0 or v >> n:
        raise StructureError(f"vector bits outside 0..{n - 1}")
    return v


# --------------------------------------------------------------------------
# validation and construction


def _transitive_by_closure(rows: Sequence[int]) -> bool:
    # row i must equal the union of the rows it contains
    for r in rows:
        closure = 0
        for j in members(r):
            closure |= rows[j]
        if closure != r:
            return False
    return True


def _transitive_by_submatrices(rows: Sequence[int], n: int) -> bool:
    # forbidden pattern: rows (j, i), columns (k, j) equal to [[1, 1], [0, 1]]
    for i in range(n):
        for j in range(i):
            if not (rows[i] >> j) & 1:
                continue
            for k in range(j):
                if (rows[j] >> k) & 1 and not (rows[i] >> k) & 1:
                    return False
    return True


def validate_poset_matrix(rows: Sequence[int], n: int | None = None) -> bool:
    """True iff ``rows`` is lower triangular, reflexive and transitive.

    Transitivity is decided twice, by a closure scan and by searching for the
    forbidden 2x2 pattern; the two answers must agree.
    """
    if n is None:
        n = len(rows)
    if len(rows) != n:
        raise StructureError(f"declared size {n} but {len(rows)} rows given")
    if any(r < 0 or r >> n for r in rows):
        raise StructureError(f"row bits outside 0..{n - 1}")
    for i, r in enumerate(rows):
        if not (r >> i) & 1 or r >> (i + 1):
            return False
    by_closure = _transitive_by_closure(rows)
    by_pattern = _transitive_by_submatrices(rows, n)
    if by_closure != by_pattern:
        raise AssertionError("transitivity checks disagree")
    return by_closure


def from_relations(n: int, covers: Iterable[tuple[int, int]]) -> PosetMatrix:
    """Reflexive-transitive closure of the relations ``lo < hi`` as a poset matrix."""
    check_capacity(n)
    below = [0] * n
    for lo, hi in covers:
        if not (0 <= lo < n and 0 <= hi < n):
            raise StructureError(f"relation ({lo}, {hi}) outside 0..{n - 1}")
        if lo >= hi:
            raise NaturalLabelingError(f"relation ({lo}, {hi}) violates natural labeling")
        below[hi] |= 1 << lo
    rows: list[int] = []
    for i in range(n):
        r = 1 << i
        for j in members(below[i]):
            r |= rows[j]
        rows.append(r)
    return PosetMatrix.trusted(rows)


def first_violation(rows: Sequence[int], bits: int) -> tuple[int, int] | None:
    for i in members(bits):
        missing = rows[i] & ~bits
        if missing:
            return i, (missing & -missing).bit_length() - 1
    return None


def v_extension(A: PosetMatrix, v: "PosetVector | int") -> PosetMatrix:
    """The matrix ``[[A, 0], [v, 1]]``; ``v`` must be a poset vector of ``A``."""
    bits = vector_bits(v, A.n)
    check_capacity(A.n + 1)
    witness = first_violation(A.rows, bits)
    if witness is not None:
        i, j = witness
        raise ExtensionError(
            f"not a poset vector: {i} is in the support but {j} (below {i}) is not", witness
        )
    return PosetMatrix.trusted(A.rows + (bits | 1 << A.n,))


def standard_poset(kind: str, n: int) -> PosetMatrix:
    check_capacity(n)
    if kind == "chain":
        return PosetMatrix.trusted([full_set(i + 1) for i in range(n)])
    if kind == "antichain":
        return PosetMatrix.trusted([1 << i for i in range(n)])
    raise ValueError(f"unknown kind {kind!r}; expected 'chain' or 'antichain'")


def disjoint_sum(A: PosetMatrix, B: PosetMatrix) -> PosetMatrix:
    """Block-diagonal sum, with B's elements shifted up by ``A.n``."""
    if A.n + B.n > MAX_N:
        raise CapacityError(f"disjoint sum of size {A.n + B.n} exceeds capacity {MAX_N}")
    return PosetMatrix.trusted(A.rows + tuple(r << A.n for r in B.rows))


# --------------------------------------------------------------------------
# structural queries


def strict_sets(A: PosetMatrix, x: int) -> tuple[int, int]:
    """Strict down-set and strict up-set of ``x``."""
    if not 0 <= x < A.n:
        raise IndexError(f"element {x} outside 0..{A.n - 1}")
    bit = 1 << x
    up = 0
    for z in range(x + 1, A.n):
        if A.rows[z] & bit:
            up |= 1 << z
    return A.rows[x] & ~bit, up


def cover_relations(A: PosetMatrix) -> list[tuple[int, int]]:
    """Hasse diagram edges ``(lo, hi)`` sorted by ``(hi, lo)``."""
    edges = []
    for i, r in enumerate(A.rows):
        strict = r & ~(1 << i)
        shadowed = 0
        for k in members(strict):
            shadowed |= A.rows[k] & ~(1 << k)
        edges.extend((j, i) for j in members(strict & ~shadowed))
    return edges


def height_and_width(A: PosetMatrix) -> tuple[int, int]:
    """Longest chain and largest antichain cardinalities."""
    n = A.n
    if n == 0:
        return 0, 0
    level = [0] * n
    for i, r in enumerate(A.rows):
        level[i] = 1 + max((level[j] for j in members(r & ~(1 << i))), default=0)
    height = max(level)

    comparable = [A.rows[x] | A.up(x) for x in range(n)]
    best = 0

    def grow(x: int, allowed: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        # bound: even taking every remaining allowed element cannot win
        if size + (allowed >> x).bit_count() <= best:
            return
        for y in members(allowed >> x << x):
            grow(y + 1, allowed & ~comparable[y], size + 1)

    grow(0, full_set(n), 0)
    return height, best


def bool_product(A: "BoolMatrix | Sequence[int]", B: "BoolMatrix | Sequence[int]") -> BoolMatrix:
    """Boolean semiring product: row i of AB is the OR of B's rows selected by row i of A."""
    a_rows = A.rows if isinstance(A, BoolMatrix) else tuple(A)
    b_rows = B.rows if isinstance(B, BoolMatrix) else tuple(B)
    if len(a_rows) != len(b_rows):
        raise StructureError(f"size mismatch: {len(a_rows)} vs {len(b_rows)}")
    out = []
    for r in a_rows:
        acc = 0
        for j in members(r):
            acc |= b_rows[j]
        out.append(acc)
    return BoolMatrix(len(a_rows), tuple(out))


# --------------------------------------------------------------------------
# text format: n lines of n characters '0'/'1'


def format_matrix(A: BoolMatrix) -> str:
    return A.to_text()


def _rows_from_lines(lines: list[str], first_line: int) -> tuple[int, ...]:
    n = len(lines)
    rows = []
    for offset, line in enumerate(lines):
        if len(line) != n:
            raise StructureError(f"expected {n} characters, got {len(line)}",
                                 line=first_line + offset)
        if set(line) - {"0", "1"}:
            raise StructureError("only '0' and '1' are allowed", line=first_line + offset)
        rows.append(from_members(j for j, c in enumerate(line) if c == "1"))
    return tuple(rows)


def _matrix_from_lines(lines: list[str], first_line: int) -> PosetMatrix:
    check_capacity(len(lines))
    rows = _rows_from_lines(lines, first_line)
    for i, r in enumerate(rows):
        if not (r >> i) & 1 or r >> (i + 1):
            raise StructureError("row is not lower triangular with unit diagonal",
                                 line=first_line + i)
        witness = first_violation(rows[:i], r & ~(1 << i))
        if witness is not None:
            raise StructureError(f"transitivity fails: {witness[1]} below {witness[0]} "
                                 f"below {i}", line=first_line + i)
    return PosetMatrix.trusted(rows)


def parse_matrix(text: str) -> PosetMatrix:
    """Parse one matrix; surrounding blank lines are ignored."""
    lines = text.strip("\n").split("\n") if text.strip() else []
    lines = [ln.rstrip("\r").strip() for ln in lines]
    if lines == ["e"]:
        return PosetMatrix.trusted(())
    return _matrix_from_lines(lines, 1)


def parse_matrices(text: str) -> list[PosetMatrix]:
    """Parse blank-line separated matrices; a lone ``e`` block is the empty matrix."""
    out = []
    block: list[str] = []
    start = 1
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r").strip()
        if line:
            if not block:
                start = lineno
            block.append(line)
            continue
        if block:
            out.append(PosetMatrix.trusted(()) if block == ["e"]
                       else _matrix_from_lines(block, start))
            block = []
    if block:
        out.append(PosetMatrix.trusted(()) if block == ["e"] else _matrix_from_lines(block, start))
    return out


def format_matrices(matrices: Iterable[BoolMatrix]) -> Iterator[str]:
    """Blocks for a multi-matrix stream (join with blank lines)."""
    for A in matrices:
        yield A.to_text() if A.n else "e"
