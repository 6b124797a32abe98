"""Slow, independent reference implementations used only by the tests.

Everything here works on plain nested lists of 0/1 and never calls into
posetforge, so agreement with the package is meaningful.
"""

from __future__ import annotations

from itertools import combinations, permutations, product


def all_poset_matrices(n: int) -> list[list[list[int]]]:
    """Every lower-triangular, unit-diagonal, transitive 0/1 matrix of size n."""
    cells = [(i, j) for i in range(n) for j in range(i)]
    out = []
    for bits in product((0, 1), repeat=len(cells)):
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        for (i, j), b in zip(cells, bits):
            M[i][j] = b
        if is_transitive(M):
            out.append(M)
    return out


def is_transitive(M: list[list[int]]) -> bool:
    n = len(M)
    return all(not (M[i][k] and M[k][j]) or M[i][j]
               for i in range(n) for j in range(n) for k in range(n))


def to_rows(M: list[list[int]]) -> tuple[int, ...]:
    return tuple(sum(1 << j for j, a in enumerate(row) if a) for row in M)


def from_rows(rows) -> list[list[int]]:
    n = len(rows)
    return [[(r >> j) & 1 for j in range(n)] for r in rows]


def fixed_vectors(M: list[list[int]]) -> set[tuple[int, ...]]:
    """All v in {0,1}^n with vM = v over the Boolean semiring."""
    n = len(M)
    out = set()
    for v in product((0, 1), repeat=n):
        vm = tuple(int(any(v[i] and M[i][j] for i in range(n))) for j in range(n))
        if vm == v:
            out.add(v)
    return out


def automorphisms(M: list[list[int]]) -> list[tuple[int, ...]]:
    """All permutations p with M[p(i)][p(j)] == M[i][j]."""
    n = len(M)
    return [p for p in permutations(range(n))
            if all(M[p[i]][p[j]] == M[i][j] for i in range(n) for j in range(n))]


def iso_key(M: list[list[int]]) -> tuple:
    """Least relation set over all n! relabelings; labels need not be natural."""
    n = len(M)
    rel = [(i, j) for i in range(n) for j in range(n) if M[i][j]]
    return min(tuple(sorted((p[i], p[j]) for i, j in rel)) for p in permutations(range(n)))


def isomorphism_class_count(n: int) -> int:
    return len({iso_key(M) for M in all_poset_matrices(n)})


def vector_orbits(M: list[list[int]]) -> set[frozenset]:
    """Orbits of the automorphism group on fixed vectors, with v -> vQ."""
    vecs = fixed_vectors(M)
    auts = automorphisms(M)
    orbits = set()
    for v in vecs:
        orbits.add(frozenset(tuple(v[p[j]] for j in range(len(v))) for p in auts))
    return orbits


def is_nlt(n: int, family) -> bool:
    fam = set(family)
    return (frozenset() in fam and frozenset(range(n)) in fam
            and all(a | b in fam and a & b in fam for a, b in combinations(fam, 2)))


def ideals_as_sets(M: list[list[int]]) -> set[frozenset]:
    return {frozenset(i for i, a in enumerate(v) if a) for v in fixed_vectors(M)}
