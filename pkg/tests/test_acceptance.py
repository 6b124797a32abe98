"""Acceptance gate: twelve criteria, one PASS/FAIL line each.

Run alone with ``pytest tests/test_acceptance.py -v`` or
``python tests/test_acceptance.py``.  Sub-millisecond budgets are checked
against the best of several repetitions, so a single scheduler hiccup does not
decide the outcome.
"""

from __future__ import annotations

import logging
import sys
import time

import pytest

import oracles
from conftest import A8_LISTS
from posetforge.enumeration import count_nip, count_nl, enumerate_nl, orbit_sum_report
from posetforge.ideals import (
    antichain_to_vector,
    enumerate_poset_vectors,
    join_irreducibles,
)
from posetforge.posetcore import PosetMatrix, members, v_extension
from posetforge.symmetry import (
    aut_order_via_twins,
    automorphism_group,
    burnside_count,
    is_isomorphic,
    orbits_on_vectors,
    stabilizer,
    triviality_predicates,
    twin_decomposition,
)
from posetforge.topology import grow, ideals_to_nlt, stream

NL = [1, 1, 2, 7, 40, 357, 4824, 96428, 2800472]
NIP = [1, 1, 2, 5, 16, 63, 318, 2045]


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number:02d} ({title}): {detail}")
        assert ok, detail
    return emit


def best_of(fn, repeat: int = 5):
    """(result, fastest wall time in seconds) over ``repeat`` calls."""
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return result, best


def wall(fn):
    t0 = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - t0


def ms(seconds: float) -> str:
    return f"{seconds * 1e3:.3f} ms"


# --------------------------------------------------------------------------


A_N = PosetMatrix.from_lists([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 0], [0, 1, 0, 1]])
A_N_VECTORS = {(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0), (0, 1, 0, 1),
               (1, 1, 1, 0), (1, 1, 0, 1), (1, 1, 1, 1)}
A_N_EDGES = {
    ((0, 0, 0, 0), (1, 0, 0, 0)), ((0, 0, 0, 0), (0, 1, 0, 0)),
    ((1, 0, 0, 0), (1, 1, 0, 0)), ((0, 1, 0, 0), (1, 1, 0, 0)),
    ((0, 1, 0, 0), (0, 1, 0, 1)), ((1, 1, 0, 0), (1, 1, 1, 0)),
    ((1, 1, 0, 0), (1, 1, 0, 1)), ((0, 1, 0, 1), (1, 1, 0, 1)),
    ((1, 1, 1, 0), (1, 1, 1, 1)), ((1, 1, 0, 1), (1, 1, 1, 1)),
}


def test_criterion_01_a_n_poset_vectors(report):
    L, t = best_of(lambda: enumerate_poset_vectors(A_N))
    vectors = {v.to_tuple() for v in L.vectors}
    edges = {(L.vectors[lo].to_tuple(), L.vectors[hi].to_tuple()) for lo, hi in L.hasse}
    ok = vectors == A_N_VECTORS and len(L) == 8 and edges == A_N_EDGES and t < 1e-3
    report(1, "A_N poset vectors and lattice", ok,
           f"{len(L)} vectors, {len(L.hasse)} cover edges, {ms(t)} (< 1 ms)")


def test_criterion_02_v_shape_orbits(report):
    V = PosetMatrix.from_lists([[1, 0, 0], [1, 1, 0], [1, 0, 1]])
    expected = {frozenset({(0, 0, 0)}), frozenset({(1, 0, 0)}),
                frozenset({(1, 1, 0), (1, 0, 1)}), frozenset({(1, 1, 1)})}

    def go():
        G = automorphism_group(V)
        return orbits_on_vectors(V, G), burnside_count(V, G)

    (orbits, count), t = best_of(go)
    got = {frozenset(v.to_tuple() for v in o) for o in orbits.orbits}
    ok = got == expected and count == 4 and orbits.class_count == 4 and t < 1e-3
    report(2, "V-shape orbit partition", ok,
           f"{orbits.class_count} orbits, burnside {count}, {ms(t)} (< 1 ms)")


def test_criterion_03_twin_classes(report):
    A = PosetMatrix.from_lists(A8_LISTS)
    quotient = PosetMatrix.from_lists(
        [[1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [1, 1, 1, 0, 0], [1, 1, 0, 1, 0], [1, 1, 0, 1, 1]])

    def go():
        return twin_decomposition(A), automorphism_group(A).order, aut_order_via_twins(A)

    (twins, searched, formula), t = best_of(go)
    # plain n! scan, outside the timed region
    naive = len(oracles.automorphisms(A8_LISTS))
    ok = (twins.classes == ((0,), (1, 2), (3, 5, 6), (4,), (7,))
          and twins.quotient == quotient
          and searched == formula == naive == 12 and t < 1e-2)
    report(3, "twin classes and |Aut| of the 8-element example", ok,
           f"classes {twins.format()}, |Aut| search={searched} twins={formula} "
           f"all-perms={naive}, {ms(t)} (< 10 ms)")


def test_criterion_04_size_3_trace(report):
    # three doublings at the empty set give the full power set, so 02 is in the first one
    expected = [
        ["e", "0", "1", "2", "01", "02", "12", "012"],
        ["e", "0", "1", "01", "02", "012"],
        ["e", "0", "1", "01", "12", "012"],
        ["e", "0", "1", "01", "012"],
        ["e", "0", "2", "01", "02", "012"],
        ["e", "0", "01", "02", "012"],
        ["e", "0", "01", "012"],
    ]
    got, t = best_of(lambda: [[w.replace(",", "") for w in T.words()] for T in stream(3)])
    ok = got == expected and t < 1e-3
    report(4, "size-3 first/next trace", ok, f"{len(got)} topologies in order, {ms(t)} (< 1 ms)")


@pytest.mark.slow
def test_criterion_05_nl_counts(report):
    small, t_small = wall(lambda: [(count_nl(n, "extension"), count_nl(n, "stream"))
                                   for n in range(8)])
    big, t_big = wall(lambda: (count_nl(8, "extension"), count_nl(8, "stream")))
    counts = small + [big]
    ok = (all(a == b == NL[n] for n, (a, b) in enumerate(counts))
          and t_small < 10 and t_big < 600)
    report(5, "NL counts n=0..8, extension sum vs stream", ok,
           f"{[a for a, _ in counts]}, n<=7 {t_small:.1f} s (< 10 s), n=8 {t_big:.1f} s (< 600 s)")


@pytest.mark.slow
def test_criterion_06_nip_counts(report):
    small, t_small = wall(lambda: [count_nip(n) for n in range(7)])
    big, t_big = wall(lambda: count_nip(7))
    counts = small + [big]
    ok = counts == NIP and t_small < 30 and t_big < 600
    report(6, "NIP counts n=0..7 by canonical forms", ok,
           f"{counts}, n<=6 {t_small:.1f} s (< 30 s), n=7 {t_big:.1f} s (< 600 s)")


def test_criterion_07_fixed_point_oracle(report):
    def go():
        checked = bad = 0
        for n in range(6):
            for A in enumerate_nl(n):
                M = oracles.from_rows(A.rows)
                brute = {sum(b << i for i, b in enumerate(v)) for v in oracles.fixed_vectors(M)}
                antichains = [S for S in range(1 << n)
                              if all(not (A.rows[i] & S & ~(1 << i)) for i in members(S))]
                via_antichains = {antichain_to_vector(A, S).bits for S in antichains}
                lattice = set(enumerate_poset_vectors(A).supports())
                checked += 1
                bad += not (brute == via_antichains == lattice)
        return checked, bad

    (checked, bad), t = wall(go)
    ok = bad == 0 and t < 5
    report(7, "fixed points vs antichain enumeration, n<=5", ok,
           f"{checked} matrices, {bad} mismatches, {t:.2f} s (< 5 s)")


def test_criterion_08_grow(report):
    def go():
        checked = bad = 0
        for n in range(6):
            for A in enumerate_nl(n):
                T = ideals_to_nlt(A)
                for S in T.sets:
                    checked += 1
                    bad += grow(T, S) != ideals_to_nlt(v_extension(A, S))
        return checked, bad

    (checked, bad), t = wall(go)
    ok = bad == 0 and t < 30
    report(8, "grow equals v-extension, n<=5", ok,
           f"{checked} (matrix, ideal) pairs, {bad} mismatches, {t:.2f} s (< 30 s)")


def test_criterion_09_burnside(report):
    checked = bad = 0
    for n in range(7):
        for A in enumerate_nl(n):
            G = automorphism_group(A)
            orbits = orbits_on_vectors(A, G)
            checked += 1
            good = burnside_count(A, G) == orbits.class_count and all(
                len(o) * stabilizer(G, o[0]).order == G.order for o in orbits.orbits)
            bad += not good
    report(9, "Burnside count and orbit-stabilizer, n<=6", bad == 0,
           f"{checked} matrices, {bad} failures")


def test_criterion_10_join_irreducibles(report):
    checked = bad = 0
    for n in range(7):
        for A in enumerate_nl(n):
            ji = [v.bits for v in join_irreducibles(enumerate_poset_vectors(A))]
            # length-lex order is a linear extension of inclusion
            induced = PosetMatrix.from_rows(
                [sum(1 << k for k, b in enumerate(ji) if b & a == b) for a in ji])
            # x -> row x is an explicit order isomorphism onto the join-irreducibles
            explicit = all(((A.rows[y] & A.rows[x]) == A.rows[x]) == bool(A.rows[y] >> x & 1)
                           for x in range(n) for y in range(n))
            checked += 1
            bad += not (set(ji) == set(A.rows) and len(ji) == n and explicit
                        and is_isomorphic(induced, A))
    report(10, "join-irreducibles are the rows, n<=6", bad == 0,
           f"{checked} matrices, {bad} failures")


def test_criterion_11_orbit_sum_gap(report, caplog):
    with caplog.at_level(logging.INFO, logger="posetforge.enumeration"):
        reports = {n: orbit_sum_report(n) for n in range(1, 7)}
    r3 = reports[3]
    failures = sum(len(r.corollary_failures) for r in reports.values())
    parents = sum(r.parents_checked for r in reports.values())
    ok = ((r3.orbit_sum, r3.nip_count) == (6, 5) and failures == 0
          and all(r.orbit_sum >= r.nip_count for r in reports.values())
          and all(r.nip_count == NIP[n] for n, r in reports.items())
          and "n=3: orbit sum 6 exceeds NIP count 5 by 1" in caplog.text)
    gaps = {n: r.gap for n, r in reports.items()}
    report(11, "orbit-sum gap report", ok,
           f"orbit_sum(3)={r3.orbit_sum} nip(3)={r3.nip_count}; per-parent check on "
           f"{parents} parents, {failures} failures; gaps {gaps}")


def test_criterion_12_triviality(report):
    checked = triggered = bad = 0
    for n in range(7):
        for A in enumerate_nl(n):
            checked += 1
            if any(triviality_predicates(A)):
                triggered += 1
                bad += automorphism_group(A).order != 1
    report(12, "triviality predicates imply trivial group, n<=6", bad == 0,
           f"{checked} matrices, {triggered} with a predicate true, {bad} counterexamples")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
