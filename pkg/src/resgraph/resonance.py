"""Brute-force resonance-graph oracle.

Nodes are all perfect matchings in enumeration order; two matchings are
adjacent when their symmetric difference is the facial cycle of a finite
face, and the edge is directed away from the matching for which that cycle
is proper alternating.  Reachability in the digraph realizes the matchings'
partial order; on weakly elementary graphs that order is a finite
distributive lattice whose Hasse diagram is the digraph itself.

Everything here is intentionally exponential: it exists as ground truth for
the coder, guarded by a node cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapExceeded, NoPerfectMatching, NotALattice
from .matching import (
    CycleType,
    Matching,
    alternating_cycle_type,
    enumerate_matchings,
    symmetric_difference_cycles,
)
from .planegraph import PlaneBipartiteGraph

DEFAULT_CAP = 100_000


@dataclass
class ResonanceDigraph:
    """Resonance graph with per-edge face labels and directions.

    ``edges[k] = (i, j, face)`` means matching i flips face to give matching
    j, moving down the order.  Undirected adjacency and the all-pairs
    distance matrix are materialized lazily.
    """

    graph: PlaneBipartiteGraph
    matchings: tuple[Matching, ...]
    edges: tuple[tuple[int, int, int], ...]
    _distances: list[list[int]] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.matchings)

    def index_of(self, m: Matching) -> int:
        return self.matchings.index(m)

    @property
    def neighbors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.matchings]
        for i, j, _ in self.edges:
            out[i].append(j)
            out[j].append(i)
        return out

    @property
    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.matchings]
        for i, j, _ in self.edges:
            out[i].append(j)
        return out

    @property
    def is_connected(self) -> bool:
        if not self.matchings:
            return False
        seen = {0}
        stack = [0]
        nbrs = self.neighbors
        while stack:
            v = stack.pop()
            for w in nbrs[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.matchings)

    @property
    def distances(self) -> list[list[int]]:
        """All-pairs undirected distances; -1 for unreachable."""
        if self._distances is None:
            n = len(self.matchings)
            nbrs = self.neighbors
            table = []
            for s in range(n):
                dist = [-1] * n
                dist[s] = 0
                frontier = [s]
                while frontier:
                    nxt = []
                    for v in frontier:
                        for w in nbrs[v]:
                            if dist[w] == -1:
                                dist[w] = dist[v] + 1
                                nxt.append(w)
                    frontier = nxt
                table.append(dist)
            self._distances = table
        return self._distances

    @property
    def diameter(self) -> int:
        return max(max(row) for row in self.distances)


def build_resonance(
    graph: PlaneBipartiteGraph, cap: int = DEFAULT_CAP
) -> ResonanceDigraph:
    """Enumerate all matchings and connect single-face flips.

    Disconnected output is legitimate (it means the graph is not weakly
    elementary) and left to the caller to interpret.
    """
    matchings = enumerate_matchings(graph, limit=cap + 1)
    if not matchings:
        raise NoPerfectMatching("graph has no perfect matching")
    if len(matchings) > cap:
        raise CapExceeded(f"more than {cap} perfect matchings; raise the cap to proceed")

    facial = {graph.face_edge_keys(f): f for f in graph.finite_faces}
    cycles = {f: graph.facial_cycle(f) for f in graph.finite_faces}
    edges = []
    for i in range(len(matchings)):
        for j in range(i + 1, len(matchings)):
            face = facial.get(matchings[i] ^ matchings[j])
            if face is None:
                continue
            kind = alternating_cycle_type(graph, cycles[face], matchings[i])
            if kind is CycleType.PROPER:
                edges.append((i, j, face))
            else:
                edges.append((j, i, face))
    return ResonanceDigraph(graph, tuple(matchings), tuple(edges))


def signed_flip_counts(
    graph: PlaneBipartiteGraph, m1: Matching, m2: Matching
) -> tuple[int, ...]:
    """Per-face difference of proper and improper enclosing cycles.

    For each finite face: the number of proper alternating cycles of
    m1 ^ m2 (with respect to m1) enclosing it, minus the improper ones.
    Equals the difference of the two matchings' flip-count vectors.
    """
    faces = graph.finite_faces
    counts = {f: 0 for f in faces}
    for cycle in symmetric_difference_cycles(graph, m1, m2):
        kind = alternating_cycle_type(graph, cycle, m1)
        delta = 1 if kind is CycleType.PROPER else -1
        for f in graph.interior_faces(cycle):
            counts[f] += delta
    return tuple(counts[f] for f in faces)


@dataclass(frozen=True)
class LatticeView:
    """Reachability order of a connected resonance digraph.

    ``below[i]`` is the set of nodes reachable from i (inclusive), i.e. the
    order ideal of matching i.  Meet and join are total tables; both exist
    and are unique for weakly elementary inputs.
    """

    below: tuple[frozenset[int], ...]
    minimum: int
    maximum: int
    height: int
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]

    def leq(self, i: int, j: int) -> bool:
        """matching i is below matching j in the lattice order."""
        return i in self.below[j]


def lattice(digraph: ResonanceDigraph) -> LatticeView:
    """Compute the order, extremes, height, and meet/join tables.

    Raises ``NotALattice`` when sinks/sources are not unique or some pair
    lacks a unique greatest lower / least upper bound.
    """
    if not digraph.is_connected:
        raise NotALattice("resonance graph is disconnected")
    n = len(digraph)
    succ = digraph.successors
    below: list[frozenset[int]] = [frozenset()] * n

    order = _topological_order(succ, n)
    for v in reversed(order):
        acc = {v}
        for w in succ[v]:
            acc |= below[w]
        below[v] = frozenset(acc)

    sinks = [v for v in range(n) if not succ[v]]
    indeg = [0] * n
    for v in range(n):
        for w in succ[v]:
            indeg[w] += 1
    sources = [v for v in range(n) if indeg[v] == 0]
    if len(sinks) != 1 or len(sources) != 1:
        raise NotALattice(f"{len(sources)} sources and {len(sinks)} sinks")
    minimum, maximum = sinks[0], sources[0]

    longest = [0] * n
    for v in order:
        for w in succ[v]:
            longest[w] = max(longest[w], longest[v] + 1)
    height = longest[minimum]

    meet_rows = []
    join_rows = []
    above = [frozenset(j for j in range(n) if i in below[j]) for i in range(n)]
    for i in range(n):
        meet_row = []
        join_row = []
        for j in range(n):
            lower = below[i] & below[j]
            meets = [z for z in lower if lower <= below[z]]
            upper = above[i] & above[j]
            joins = [z for z in upper if upper <= above[z]]
            if len(meets) != 1 or len(joins) != 1:
                raise NotALattice(f"pair ({i},{j}) has {len(meets)} meets, {len(joins)} joins")
            meet_row.append(meets[0])
            join_row.append(joins[0])
        meet_rows.append(tuple(meet_row))
        join_rows.append(tuple(join_row))
    return LatticeView(
        tuple(below), minimum, maximum, height, tuple(meet_rows), tuple(join_rows)
    )


def _topological_order(succ: list[list[int]], n: int) -> list[int]:
    indeg = [0] * n
    for v in range(n):
        for w in succ[v]:
            indeg[w] += 1
    frontier = [v for v in range(n) if indeg[v] == 0]
    order = []
    while frontier:
        v = frontier.pop()
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                frontier.append(w)
    if len(order) != n:
        raise NotALattice("flip digraph contains a directed cycle")
    return order


def distributivity_witness(view: LatticeView) -> tuple[int, int, int] | None:
    """First triple violating a distributive law, or None."""
    n = len(view.below)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if view.meet[x][view.join[y][z]] != view.join[view.meet[x][y]][view.meet[x][z]]:
                    return (x, y, z)
                if view.join[x][view.meet[y][z]] != view.meet[view.join[x][y]][view.join[x][z]]:
                    return (x, y, z)
    return None


def cover_pairs(view: LatticeView) -> set[tuple[int, int]]:
    """All (upper, lower) cover pairs of the order."""
    n = len(view.below)
    covers = set()
    for i in range(n):
        strictly_below = view.below[i] - {i}
        for j in strictly_below:
            between = [z for z in strictly_below - {j} if j in view.below[z]]
            if not between:
                covers.add((i, j))
    return covers


def to_dot(
    digraph: ResonanceDigraph, codes_by_node: dict[int, str] | None = None
) -> str:
    """DOT rendering: nodes labeled by code (when given) and matching id,
    directed edges labeled by face id."""
    lines = ["digraph resonance {", "  rankdir=BT;"]
    for i in range(len(digraph)):
        if codes_by_node and i in codes_by_node:
            label = f"{codes_by_node[i]}\\nM{i}"
        else:
            label = f"M{i}"
        lines.append(f'  n{i} [label="{label}"];')
    for i, j, face in digraph.edges:
        lines.append(f'  n{i} -> n{j} [label="s{face}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
