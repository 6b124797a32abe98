"""Graphviz DOT export of Hasse diagrams."""

from __future__ import annotations

from .ideals import IdealLattice
from .posetcore import PosetMatrix, cover_relations, members


def poset_dot(A: PosetMatrix, name: str = "P") -> str:
    """Hasse diagram drawn bottom-up, one rank per height level."""
    level = [0] * A.n
    for i, r in enumerate(A.rows):
        level[i] = 1 + max((level[j] for j in members(r & ~(1 << i))), default=0)
    lines = [f"digraph {name} {{", "    rankdir=BT;", "    node [shape=circle];"]
    for h in sorted(set(level)):
        same = " ".join(str(x) for x in range(A.n) if level[x] == h)
        lines.append(f"    {{ rank=same; {same} }}")
    lines += [f"    {lo} -> {hi};" for lo, hi in cover_relations(A)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_dot(L: IdealLattice, name: str = "L") -> str:
    """Ideal lattice with nodes labeled by subset words."""
    sep = "" if L.n <= 10 else ","
    lines = [f"digraph {name} {{", "    rankdir=BT;", "    node [shape=box];"]
    sizes = [v.bits.bit_count() for v in L.vectors]
    for k, v in enumerate(L.vectors):
        lines.append(f'    v{k} [label="{v.word(sep)}"];')
    for h in sorted(set(sizes)):
        same = " ".join(f"v{k}" for k, s in enumerate(sizes) if s == h)
        lines.append(f"    {{ rank=same; {same} }}")
    lines += [f"    v{lo} -> v{hi};" for lo, hi in L.hasse]
    lines.append("}")
    return "\n".join(lines) + "\n"
