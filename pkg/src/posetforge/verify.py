"""Exhaustive invariant checks over all poset matrices up to a size ceiling."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Iterator

from .enumeration import count_nl, enumerate_nl
from .ideals import enumerate_poset_vectors, is_poset_vector, join_irreducibles, row_space
from .posetcore import (
    PosetMatrix,
    bool_product,
    cover_relations,
    from_relations,
    validate_poset_matrix,
)
from .symmetry import (
    aut_order_via_twins,
    automorphism_group,
    burnside_count,
    orbits_on_vectors,
    stabilizer,
    triviality_predicates,
)
from .topology import cut, grow, ideals_to_nlt, nlt_to_poset

DEFAULT_MAX_N = 5


def default_max_n() -> int:
    return int(os.environ.get("POSETFORGE_MAX_N", DEFAULT_MAX_N))


@dataclass
class CheckResult:
    name: str
    n: int
    ok: bool
    checked: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name} n={self.n} checked={self.checked}{extra}"


def _idempotent(A: PosetMatrix) -> bool:
    return bool_product(A, A) == A


def _extension_iff_fixed_point(A: PosetMatrix) -> bool:
    bit = 1 << A.n
    for v in range(1 << A.n):
        valid = validate_poset_matrix(A.rows + (v | bit,))
        if valid != is_poset_vector(A, v):
            return False
    return True


def _covers_roundtrip(A: PosetMatrix) -> bool:
    return from_relations(A.n, cover_relations(A)) == A


def _rowspace(A: PosetMatrix) -> bool:
    return row_space(A) == set(enumerate_poset_vectors(A).supports())


def _join_irreducibles(A: PosetMatrix) -> bool:
    L = enumerate_poset_vectors(A)
    return {v.bits for v in join_irreducibles(L)} == set(A.rows)


def _burnside(A: PosetMatrix) -> bool:
    G = automorphism_group(A)
    orbits = orbits_on_vectors(A, G)
    if burnside_count(A, G) != orbits.class_count:
        return False
    return all(len(o) * stabilizer(G, o[0]).order == G.order for o in orbits.orbits)


def _twin_formula(A: PosetMatrix) -> bool:
    return aut_order_via_twins(A) == automorphism_group(A).order


def _triviality(A: PosetMatrix) -> bool:
    distinct_sizes, distinct_pairs = triviality_predicates(A)
    return not (distinct_sizes or distinct_pairs) or automorphism_group(A).order == 1


def _nlt_bijection(A: PosetMatrix) -> bool:
    return nlt_to_poset(ideals_to_nlt(A)) == A


def _grow(A: PosetMatrix) -> bool:
    T = ideals_to_nlt(A)
    bit = 1 << A.n
    for S in T.sets:
        grown = grow(T, S)
        if grown != ideals_to_nlt(PosetMatrix.trusted(A.rows + (S | bit,))) or cut(grown) != T:
            return False
    return True


PER_MATRIX: list[tuple[str, Callable[[PosetMatrix], bool], int]] = [
    # (name, predicate, largest n it is run at)
    ("idempotence", _idempotent, 6),
    ("extension-iff-fixed-point", _extension_iff_fixed_point, 5),
    ("covers-roundtrip", _covers_roundtrip, 6),
    ("rowspace", _rowspace, 6),
    ("join-irreducibles-are-rows", _join_irreducibles, 6),
    ("burnside-orbit-stabilizer", _burnside, 6),
    ("twin-order-formula", _twin_formula, 6),
    ("triviality-sufficiency", _triviality, 6),
    ("nlt-bijection", _nlt_bijection, 5),
    ("grow-equals-extension", _grow, 5),
]


def run_checks(max_n: int | None = None) -> Iterator[CheckResult]:
    """Yield one result per (check, n); the per-check ceilings cap ``max_n``."""
    if max_n is None:
        max_n = default_max_n()
    for n in range(max_n + 1):
        matrices = list(enumerate_nl(n))
        for name, predicate, ceiling in PER_MATRIX:
            if n > ceiling:
                continue
            bad = next((A for A in matrices if not predicate(A)), None)
            yield CheckResult(name, n, bad is None, len(matrices),
                              "" if bad is None else f"counterexample {bad!r}")
        ext, stream = count_nl(n, "extension"), count_nl(n, "stream")
        yield CheckResult("dual-count", n, ext == stream, 2, f"{ext} vs {stream}")
