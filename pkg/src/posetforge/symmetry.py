"""Automorphisms, twin classes, orbits of poset vectors and canonical forms.

Permutations are tuples of images: ``sigma[i]`` is the image of ``i``.  A
permutation acts on a poset vector by moving its support, ``S -> sigma(S)``.
Orbits and fixed points do not depend on which of ``sigma`` or its inverse is
used, because both range over the same group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod
from typing import Sequence

from .errors import NotAnAutomorphismError, StructureError
from .ideals import enumerate_poset_vectors
from .posetcore import BoolMatrix, PosetMatrix, PosetVector, lenlex_key, members

Permutation = tuple[int, ...]


def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(s: Permutation, t: Permutation) -> Permutation:
    """``s o t``: apply ``t`` first."""
    return tuple(s[i] for i in t)


def inverse(s: Permutation) -> Permutation:
    inv = [0] * len(s)
    for i, si in enumerate(s):
        inv[si] = i
    return tuple(inv)


def transposition(n: int, a: int, b: int) -> Permutation:
    images = list(range(n))
    images[a], images[b] = b, a
    return tuple(images)


def image_set(s: Permutation, mask: int) -> int:
    out = 0
    for i in members(mask):
        out |= 1 << s[i]
    return out


def act(s: Permutation, v: PosetVector) -> PosetVector:
    return PosetVector(v.n, image_set(s, v.bits))


@dataclass(frozen=True)
class PermGroup:
    n: int
    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, s):
        return tuple(s) in set(self.elements)

    def is_group(self) -> bool:
        members_ = set(self.elements)
        if identity(self.n) not in members_:
            return False
        return all(inverse(s) in members_ for s in members_) and all(
            compose(s, t) in members_ for s in members_ for t in members_
        )


# --------------------------------------------------------------------------
# permutation action on matrices


def apply_permutation(A: BoolMatrix, sigma: Sequence[int]) -> BoolMatrix:
    """Relabel ``A``: entry ``(sigma(i), sigma(j))`` of the result is ``A[i][j]``."""
    if len(sigma) != A.n:
        raise StructureError(f"permutation of degree {len(sigma)} applied to size {A.n}")
    rows = [0] * A.n
    for i, r in enumerate(A.rows):
        rows[sigma[i]] = image_set(sigma, r)
    return BoolMatrix(A.n, tuple(rows))


def _columns(A: BoolMatrix) -> list[int]:
    cols = [0] * A.n
    for i, r in enumerate(A.rows):
        for j in members(r):
            cols[j] |= 1 << i
    return cols


def is_automorphism(A: BoolMatrix, sigma: Sequence[int]) -> bool:
    return apply_permutation(A, sigma) == A


# --------------------------------------------------------------------------
# twin classes


@dataclass(frozen=True)
class TwinDecomposition:
    classes: tuple[tuple[int, ...], ...]
    quotient: PosetMatrix
    class_sizes: tuple[int, ...]

    def class_index(self) -> list[int]:
        """``class_index()[x]`` is the position of x's class in ``classes``."""
        index = [0] * sum(self.class_sizes)
        for c, members_ in enumerate(self.classes):
            for x in members_:
                index[x] = c
        return index

    def format(self) -> str:
        return " | ".join(",".join(map(str, c)) for c in self.classes)


def _twin_ids(A: BoolMatrix) -> list[int]:
    cols = _columns(A)
    ids: dict[tuple[int, int], int] = {}
    out = []
    for x in range(A.n):
        bit = 1 << x
        key = (A.rows[x] & ~bit, cols[x] & ~bit)
        out.append(ids.setdefault(key, len(ids)))
    return out


def twin_decomposition(A: PosetMatrix) -> TwinDecomposition:
    """Group elements by equal strict down-sets and strict up-sets.

    Classes are listed by their minimum element; the quotient is the poset on
    the class minima, relabeled ``0..r-1`` in that order.
    """
    ids = _twin_ids(A)
    grouped: dict[int, list[int]] = {}
    for x, c in enumerate(ids):
        grouped.setdefault(c, []).append(x)
    # ids were assigned in order of first (= minimum) element
    classes = tuple(tuple(grouped[c]) for c in range(len(grouped)))
    reps = [c[0] for c in classes]
    position = {x: k for k, x in enumerate(reps)}
    rows = []
    for x in reps:
        r = 0
        for y in members(A.rows[x]):
            k = position.get(y)
            if k is not None:
                r |= 1 << k
        rows.append(r)
    return TwinDecomposition(classes, PosetMatrix.trusted(rows), tuple(len(c) for c in classes))


# --------------------------------------------------------------------------
# automorphism groups


def _backtrack_automorphisms(A: BoolMatrix, labels: Sequence[int]) -> list[Permutation]:
    """All automorphisms mapping each element to one with the same label.

    ``labels`` must be invariant under every automorphism; candidates are
    further filtered by (row sum, column sum).
    """
    n = A.n
    rows = A.rows
    cols = _columns(A)
    invariant = [(rows[x].bit_count(), cols[x].bit_count(), labels[x]) for x in range(n)]
    order = sorted(range(n), key=lambda x: (invariant[x], x))
    candidates = {x: [y for y in order if invariant[y] == invariant[x]] for x in range(n)}

    images = [-1] * n
    found: list[Permutation] = []

    def consistent(x: int, y: int, assigned: int) -> bool:
        for z in members(assigned):
            w = images[z]
            if ((rows[x] >> z) & 1) != ((rows[y] >> w) & 1):
                return False
            if ((cols[x] >> z) & 1) != ((cols[y] >> w) & 1):
                return False
        return ((rows[x] >> x) & 1) == ((rows[y] >> y) & 1)

    def extend(k: int, assigned: int, used: int) -> None:
        if k == n:
            found.append(tuple(images))
            return
        x = order[k]
        for y in candidates[x]:
            if (used >> y) & 1 or not consistent(x, y, assigned):
                continue
            images[x] = y
            extend(k + 1, assigned | 1 << x, used | 1 << y)
        images[x] = -1

    extend(0, 0, 0)
    found.sort()
    return found


def automorphism_group(A: BoolMatrix) -> PermGroup:
    """All permutations fixing ``A``, found by invariant-pruned backtracking.

    Candidates for each element share its (row sum, column sum) and the size
    of its twin class.
    """
    ids = _twin_ids(A)
    sizes = [ids.count(c) for c in ids]
    return PermGroup(A.n, tuple(_backtrack_automorphisms(A, sizes)))


def size_preserving_subgroup(quotient: PosetMatrix, sizes: Sequence[int]) -> PermGroup:
    """Automorphisms of the twin quotient that map each class to one of equal size."""
    if len(sizes) != quotient.n:
        raise StructureError(f"{len(sizes)} sizes for a quotient of size {quotient.n}")
    group = automorphism_group(quotient)
    kept = tuple(s for s in group if all(sizes[s[i]] == sizes[i] for i in range(quotient.n)))
    return PermGroup(quotient.n, kept)


def aut_order_via_twins(A: PosetMatrix) -> int:
    """``|Aut(A)|`` as the product of class-size factorials times ``|H|``."""
    twins = twin_decomposition(A)
    H = size_preserving_subgroup(twins.quotient, twins.class_sizes)
    return prod(factorial(k) for k in twins.class_sizes) * H.order


# --------------------------------------------------------------------------
# orbits and Burnside counting


@dataclass(frozen=True)
class OrbitPartition:
    orbits: tuple[tuple[PosetVector, ...], ...]

    @property
    def class_count(self) -> int:
        return len(self.orbits)


def orbits_on_vectors(A: PosetMatrix, group: PermGroup | None = None) -> OrbitPartition:
    """Orbits of ``Aut(A)`` on the poset vectors, in order of first member."""
    G = group if group is not None else automorphism_group(A)
    lattice = enumerate_poset_vectors(A)
    seen: set[int] = set()
    orbits = []
    for v in lattice.vectors:
        if v.bits in seen:
            continue
        orbit = {image_set(s, v.bits) for s in G}
        seen |= orbit
        orbits.append(tuple(PosetVector(A.n, m) for m in sorted(orbit, key=lenlex_key)))
    return OrbitPartition(tuple(orbits))


def stabilizer(G: PermGroup, v: PosetVector) -> PermGroup:
    return PermGroup(G.n, tuple(s for s in G if image_set(s, v.bits) == v.bits))


def _fixed(masks: Sequence[int], sigma: Permutation) -> int:
    return sum(1 for m in masks if image_set(sigma, m) == m)


def fix_count(A: PosetMatrix, sigma: Sequence[int]) -> int:
    """Number of poset vectors of ``A`` left unchanged by ``sigma``."""
    sigma = tuple(sigma)
    if not is_automorphism(A, sigma):
        raise NotAnAutomorphismError(f"{sigma} is not an automorphism")
    return _fixed(enumerate_poset_vectors(A).supports(), sigma)


def burnside_count(A: PosetMatrix, group: PermGroup | None = None) -> int:
    """Number of orbits, as the group average of fixed-point counts."""
    G = group if group is not None else automorphism_group(A)
    masks = enumerate_poset_vectors(A).supports()
    total = sum(_fixed(masks, s) for s in G)
    count, remainder = divmod(total, G.order)
    if remainder:
        raise ArithmeticError(f"fixed-point total {total} not divisible by |G| = {G.order}")
    return count


def triviality_predicates(A: PosetMatrix) -> tuple[bool, bool]:
    """(all ideals have distinct sizes, all (row sum, column sum) pairs distinct)."""
    sizes = [v.bits.bit_count() for v in enumerate_poset_vectors(A).vectors]
    pairs = list(zip(A.row_sums(), A.col_sums()))
    return len(set(sizes)) == len(sizes), len(set(pairs)) == len(pairs)


# --------------------------------------------------------------------------
# canonical forms


def canonical_labeling(A: PosetMatrix) -> Permutation:
    """An order ``old[k]`` giving the lexicographically least relabeled matrix.

    Natural relabelings are the linear extensions.  They are grown one position
    at a time; at each position only the partial extensions whose rows so far
    match the least achievable prefix survive.  Of several available twins only
    one is tried, since swapping twins is an automorphism.
    """
    n = A.n
    rows = A.rows
    twin = _twin_ids(A)
    # state: (placed mask, old elements in new order, new position of each old element)
    states: list[tuple[int, list[int], list[int]]] = [(0, [], [-1] * n)]
    for k in range(n):
        diag = 1 << (n - 1 - k)
        best = -1
        survivors: list[tuple[int, list[int], list[int]]] = []
        for placed, order, pos in states:
            tried: set[int] = set()
            for x in range(n):
                if (placed >> x) & 1 or rows[x] & ~(placed | 1 << x):
                    continue
                if twin[x] in tried:
                    continue
                tried.add(twin[x])
                key = diag
                for y in members(rows[x] & ~(1 << x)):
                    key |= 1 << (n - 1 - pos[y])
                # reversed bit weights: larger key means a '1' earlier in the row
                if best == -1 or key < best:
                    best = key
                    survivors = []
                if key == best:
                    new_pos = pos.copy()
                    new_pos[x] = k
                    survivors.append((placed | 1 << x, order + [x], new_pos))
        states = survivors
    return tuple(states[0][1]) if states else ()


def canonical_form(A: PosetMatrix) -> PosetMatrix:
    """Least row-major bit-string over all natural relabelings of ``P_A``."""
    order = canonical_labeling(A)
    pos = inverse(order) if order else ()
    rows = []
    for x in order:
        rows.append(image_set(pos, A.rows[x]))
    return PosetMatrix.trusted(rows)


def canonical_key(A: PosetMatrix) -> str:
    """Hex-packed row-major bit-string of the canonical form."""
    return matrix_hex(canonical_form(A))


def matrix_hex(A: BoolMatrix) -> str:
    bits = A.bitstring()
    if not bits:
        return "0"
    return f"{int(bits, 2):0{(len(bits) + 3) // 4}x}"


def is_isomorphic(A: PosetMatrix, B: PosetMatrix) -> bool:
    if A.n != B.n:
        return False
    if sorted(zip(A.row_sums(), A.col_sums())) != sorted(zip(B.row_sums(), B.col_sums())):
        return False
    return canonical_form(A) == canonical_form(B)
