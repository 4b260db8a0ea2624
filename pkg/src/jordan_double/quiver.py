"""Ext quiver of the simple modules, separated quivers and Dynkin/affine recognition."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "Quiver",
    "SeparatedQuiver",
    "ComponentType",
    "WORKERS_ENV",
    "ext_cell",
    "gabriel_quiver",
    "separated_quiver",
    "classify_graph",
    "representation_type_report",
    "to_dot",
]

WORKERS_ENV = "JORDAN_DOUBLE_WORKERS"
WILD = "wild (radical-square-zero criterion on finite quotient)"
NOT_CERTIFIED = "not certified wild on this subset"
# cells with |i - j| beyond this are zero by the weight argument and are not computed
COMPUTED_BAND = 4


@dataclass
class Quiver:
    vertices: list
    arrows: dict  # (i, j) -> multiplicity
    flags: list = field(default_factory=list)

    def multiplicity(self, i, j) -> int:
        return self.arrows.get((i, j), 0)

    def ext_table(self) -> dict:
        return {f"({i},{j})": self.multiplicity(i, j) for i in self.vertices for j in self.vertices}


@dataclass
class SeparatedQuiver:
    vertices: list  # str labels: "n" and "n'"
    edges: dict     # (left, right) -> multiplicity


@dataclass
class ComponentType:
    vertices: list
    kind: str       # "Dynkin", "affine" or "neither"
    name: str | None = None


def ext_cell(pair: tuple[int, int]) -> int:
    """dim Ext^1(L(i), L(j)), i.e. extensions with L(j) as submodule."""
    from .homology import ext1
    from .modules import build_simple
    i, j = pair
    return ext1(build_simple(i), build_simple(j)).dimension


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def gabriel_quiver(max_n: int, forced_loop: bool = False, workers: int | None = None) -> Quiver:
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    vertices = list(range(max_n + 1))
    cells = [(i, j) for i in vertices for j in vertices if abs(i - j) <= COMPUTED_BAND]
    workers = _workers() if workers is None else workers
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(ext_cell, cells))
    else:
        values = [ext_cell(c) for c in cells]
    arrows = {c: v for c, v in zip(cells, values) if v}
    flags = []
    if arrows.get((0, 0), 0) == 0:
        flags.append("loop at vertex 0: computed multiplicity 0, reference quiver has 1")
        if forced_loop:
            arrows[0, 0] = 1
            flags.append("forced-loop variant: loop at vertex 0 set to multiplicity 1")
    return Quiver(vertices, arrows, flags)


def separated_quiver(q: Quiver, subset: Iterable[int] | None = None) -> SeparatedQuiver:
    """Each arrow ``i -> j`` with both ends in the subset becomes an edge ``i -- j'``."""
    subset = list(q.vertices if subset is None else subset)
    missing = [s for s in subset if s not in q.vertices]
    if missing:
        raise ValueError(f"vertices {missing} not in quiver")
    inside = set(subset)
    verts = [str(s) for s in subset] + [f"{s}'" for s in subset]
    edges = {}
    for (i, j), m in sorted(q.arrows.items()):
        if m and i in inside and j in inside:
            edges[str(i), f"{j}'"] = m
    return SeparatedQuiver(verts, edges)


# --------------------------------------------------------------------------
# graph recognition


def _components(vertices, adj) -> list[list]:
    seen, comps = set(), []
    for v in vertices:
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in adj[a]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        comps.append(comp)
    return comps


def _legs(comp, adj, centre) -> list[int]:
    """Lengths of the paths hanging off ``centre`` in a tree of max degree 3."""
    legs = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [b for b in adj[cur] if b != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return []
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    return sorted(legs)


def _classify_component(comp, edges) -> tuple[str, str | None]:
    n = len(comp)
    mult = Counter()
    loops = 0
    adj = {v: set() for v in comp}
    for (a, b), m in edges.items():
        if a in adj:
            if a == b:
                loops += m
            else:
                mult[frozenset((a, b))] += m
                adj[a].add(b)
                adj[b].add(a)
    nedges = sum(mult.values()) + loops
    if loops:
        return ("affine", "~A0") if n == 1 and loops == 1 else ("neither", None)
    if n == 1:
        return "Dynkin", "A1"
    if any(m > 2 for m in mult.values()):
        return "neither", None
    if any(m == 2 for m in mult.values()):
        return ("affine", "~A1") if n == 2 else ("neither", None)
    if nedges == n:  # unicyclic; affine only if it is a pure cycle
        if all(len(adj[v]) == 2 for v in comp):
            return "affine", f"~A{n - 1}"
        return "neither", None
    if nedges != n - 1:
        return "neither", None
    degrees = sorted((len(adj[v]) for v in comp), reverse=True)
    if degrees[0] <= 2:
        return "Dynkin", f"A{n}"
    if degrees[0] == 4:
        return ("affine", "~D4") if n == 5 else ("neither", None)
    if degrees[0] > 4:
        return "neither", None
    branch = [v for v in comp if len(adj[v]) == 3]
    if len(branch) == 2:
        # ~D_{n-1}: both branch points carry two leaves
        ok = all(sum(1 for b in adj[v] if len(adj[b]) == 1) >= 2 for v in branch)
        return ("affine", f"~D{n - 1}") if ok else ("neither", None)
    if len(branch) > 2:
        return "neither", None
    legs = _legs(comp, adj, branch[0])
    if not legs:
        return "neither", None
    table = {
        (1, 1): ("Dynkin", f"D{n}"),
        (1, 2, 2): ("Dynkin", "E6"),
        (1, 2, 3): ("Dynkin", "E7"),
        (1, 2, 4): ("Dynkin", "E8"),
        (2, 2, 2): ("affine", "~E6"),
        (1, 3, 3): ("affine", "~E7"),
        (1, 2, 5): ("affine", "~E8"),
    }
    key = tuple(legs) if legs[:2] != [1, 1] else (1, 1)
    return table.get(key, ("neither", None))


def classify_graph(vertices, edges: dict) -> list[ComponentType]:
    """Classify each connected component of an undirected multigraph.

    ``edges`` maps unordered pairs (given as tuples) to multiplicities.
    """
    adj = {v: set() for v in vertices}
    for (a, b), m in edges.items():
        if m:
            adj[a].add(b)
            adj[b].add(a)
    out = []
    for comp in _components(vertices, adj):
        cset = set(comp)
        sub = {e: m for e, m in edges.items() if m and e[0] in cset}
        kind, name = _classify_component(comp, sub)
        out.append(ComponentType(sorted(comp, key=str), kind, name))
    return out


def representation_type_report(max_n: int, subset: Iterable[int] | None = None,
                               forced_loop: bool = False, quiver: Quiver | None = None) -> dict:
    q = quiver if quiver is not None else gabriel_quiver(max_n, forced_loop)
    if subset is None:
        evens = [v for v in q.vertices if v % 2 == 0]
        subset = evens[-3:]
    subset = sorted(subset)
    sep = separated_quiver(q, subset)
    comps = classify_graph(sep.vertices, sep.edges)
    wild = any(c.kind == "neither" for c in comps)
    return {
        "max_n": max_n,
        "variant": "forced-loop" if forced_loop else "computed",
        "subset": subset,
        "arrows": [[i, j, m] for (i, j), m in sorted(q.arrows.items())],
        "flags": list(q.flags),
        "separated_quiver": {
            "vertices": sep.vertices,
            "edges": [[a, b, m] for (a, b), m in sep.edges.items()],
        },
        "components": [{"vertices": c.vertices, "type": c.kind, "name": c.name} for c in comps],
        "verdict": WILD if wild else NOT_CERTIFIED,
        "wild": wild,
    }


def to_dot(q: Quiver, name: str = "gabriel") -> str:
    lines = [f"digraph {name} {{"]
    for v in q.vertices:
        lines.append(f'  v{v} [label="{v}"];')
    for (i, j), m in sorted(q.arrows.items()):
        if m:
            lines.append(f'  v{i} -> v{j} [label="{m}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
