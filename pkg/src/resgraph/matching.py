"""Perfect-matching machinery.

A matching is a ``frozenset`` of edge keys (sorted endpoint pairs), so the
same object remains meaningful in any subgraph that keeps the vertex ids.
Symmetric difference is the set operator ``^``.

Enumeration is exhaustive backtracking with a fixed branching rule (lowest
uncovered vertex id, edges in ascending edge-id order), so matching lists
and everything derived from them are reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import InternalContractViolation, NoPerfectMatching, NonTermination
from .planegraph import (
    BLACK,
    WHITE,
    DirectedCycle,
    EdgeKey,
    PlaneBipartiteGraph,
    edge_key,
    trace_faces,
)

Matching = frozenset[EdgeKey]


def matching_covers(graph: PlaneBipartiteGraph, m: Matching) -> bool:
    seen: set[int] = set()
    for u, v in m:
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return seen == set(graph.vertices)


def matching_edge_ids(graph: PlaneBipartiteGraph, m: Matching) -> list[int]:
    """Serialized form: sorted edge ids."""
    return sorted(graph.edge_index[k] for k in m)


def enumerate_matchings(
    graph: PlaneBipartiteGraph,
    limit: int | None = None,
    excluded: frozenset[int] = frozenset(),
) -> list[Matching]:
    """All perfect matchings of the graph minus ``excluded`` vertices.

    Deterministic order; stops early after ``limit`` matchings if given.
    """
    return list(iter_matchings(graph, limit, excluded))


def iter_matchings(
    graph: PlaneBipartiteGraph,
    limit: int | None = None,
    excluded: frozenset[int] = frozenset(),
) -> Iterator[Matching]:
    if limit is not None and limit <= 0:
        return
    active = [v for v in sorted(graph.vertices) if v not in excluded]
    if len(active) % 2 == 1:
        return
    incident: dict[int, list[EdgeKey]] = {v: [] for v in active}
    for key in graph.edges:
        u, v = key
        if u in incident and v in incident:
            incident[u].append(key)
            incident[v].append(key)
    if not active:
        yield frozenset()
        return

    covered: set[int] = set()
    chosen: list[EdgeKey] = []
    found = 0

    def branch() -> Iterator[Matching]:
        nonlocal found
        v = next((w for w in active if w not in covered), None)
        if v is None:
            found += 1
            yield frozenset(chosen)
            return
        for key in incident[v]:
            other = key[0] if key[1] == v else key[1]
            if other in covered:
                continue
            covered.add(v)
            covered.add(other)
            chosen.append(key)
            yield from branch()
            chosen.pop()
            covered.discard(v)
            covered.discard(other)
            if limit is not None and found >= limit:
                return

    yield from branch()


def find_perfect_matching(
    graph: PlaneBipartiteGraph, excluded: frozenset[int] = frozenset()
) -> Matching | None:
    """Some perfect matching via augmenting paths, or None."""
    whites = [v for v in sorted(graph.vertices) if v not in excluded and graph.colors[v] == WHITE]
    blacks = [v for v in sorted(graph.vertices) if v not in excluded and graph.colors[v] == BLACK]
    if len(whites) != len(blacks):
        return None
    adj = {
        w: [x for x in graph.neighbors(w) if x not in excluded] for w in whites
    }
    mate: dict[int, int] = {}

    def augment(w: int, seen: set[int]) -> bool:
        for b in adj[w]:
            if b in seen:
                continue
            seen.add(b)
            if b not in mate or augment(mate[b], seen):
                mate[b] = w
                return True
        return False

    for w in whites:
        if not augment(w, set()):
            return None
    return frozenset(edge_key(b, w) for b, w in mate.items())


def has_perfect_matching(
    graph: PlaneBipartiteGraph, excluded: frozenset[int] = frozenset()
) -> bool:
    return find_perfect_matching(graph, excluded) is not None


def forbidden_edges(graph: PlaneBipartiteGraph) -> frozenset[EdgeKey]:
    """Edges contained in no perfect matching."""
    if not has_perfect_matching(graph):
        raise NoPerfectMatching("graph has no perfect matching")
    out = set()
    for key in graph.edges:
        if not has_perfect_matching(graph, excluded=frozenset(key)):
            out.add(key)
    return frozenset(out)


def is_elementary(graph: PlaneBipartiteGraph) -> bool:
    """Connected with a perfect matching and no forbidden edges."""
    if not has_perfect_matching(graph):
        return False
    return not forbidden_edges(graph)


# ----------------------------------------------------------------------
# alternating cycles
# ----------------------------------------------------------------------


class CycleType(Enum):
    PROPER = "proper"
    IMPROPER = "improper"
    NOT_ALTERNATING = "not-alternating"


def alternating_cycle_type(
    graph: PlaneBipartiteGraph, cycle: DirectedCycle, m: Matching
) -> CycleType:
    """Classify a simple cycle against a matching.

    The cycle is first normalized clockwise.  Alternating with all matched
    edges running white -> black is proper; black -> white is improper.  A
    cycle vertex matched by a non-cycle edge makes it non-alternating.
    """
    cw = graph.clockwise(cycle)
    tails = set()
    in_cycle = 0
    for u, v in cw.directed_edges():
        if edge_key(u, v) in m:
            in_cycle += 1
            tails.add(graph.colors[u])
    if in_cycle * 2 != len(cw):
        return CycleType.NOT_ALTERNATING
    if len(tails) != 1:
        # Cannot happen for an alternating cycle of a properly 2-colored
        # graph; kept as a guard.
        raise InternalContractViolation("alternating cycle with mixed matched directions")
    return CycleType.PROPER if tails.pop() == WHITE else CycleType.IMPROPER


def symmetric_difference_cycles(
    graph: PlaneBipartiteGraph, m1: Matching, m2: Matching
) -> list[DirectedCycle]:
    """Vertex-disjoint cycles of m1 ^ m2, each directed clockwise.

    Cycles are ordered by their smallest vertex id and each starts at it.
    """
    diff = m1 ^ m2
    nbr: dict[int, list[int]] = {}
    for u, v in diff:
        nbr.setdefault(u, []).append(v)
        nbr.setdefault(v, []).append(u)
    cycles = []
    remaining = set(nbr)
    while remaining:
        start = min(remaining)
        walk = [start]
        prev, cur = None, start
        while True:
            nxt = next(w for w in sorted(nbr[cur]) if w != prev)
            if nxt == start:
                break
            walk.append(nxt)
            prev, cur = cur, nxt
        remaining -= set(walk)
        cycle = graph.clockwise(DirectedCycle(tuple(walk)))
        cycles.append(cycle.rotated_to(start))
    return cycles


# ----------------------------------------------------------------------
# lattice extremes by facial flips
# ----------------------------------------------------------------------


def _facial_flip_walk(graph: PlaneBipartiteGraph, want: CycleType) -> Matching:
    m = find_perfect_matching(graph)
    if m is None:
        raise NoPerfectMatching("graph has no perfect matching")
    budget = len(graph.vertices) * len(graph.faces) * 1000
    flips = 0
    faces = [(f, graph.facial_cycle(f)) for f in graph.finite_faces]
    while True:
        for f, cycle in faces:
            if alternating_cycle_type(graph, cycle, m) is want:
                m = m ^ graph.face_edge_keys(f)
                flips += 1
                if flips > budget:
                    raise NonTermination(
                        f"facial flips exceeded {budget}; graph is not weakly elementary"
                    )
                break
        else:
            return m


def minimum_matching(graph: PlaneBipartiteGraph) -> Matching:
    """The unique matching admitting no proper alternating cycle.

    Reached by flipping proper-alternating finite faces until none remains;
    every non-minimum matching has such a face because the flip digraph is
    the Hasse diagram of the matchings' distributive lattice.
    """
    return _facial_flip_walk(graph, CycleType.PROPER)


def maximum_matching(graph: PlaneBipartiteGraph) -> Matching:
    """Dual of :func:`minimum_matching`: no improper alternating cycle."""
    return _facial_flip_walk(graph, CycleType.IMPROPER)


def is_forcing_infinite_face(graph: PlaneBipartiteGraph) -> bool:
    """Periphery is a cycle and the interior matches at most one way.

    True when removing all periphery vertices leaves nothing or a subgraph
    with exactly one perfect matching.
    """
    if not has_perfect_matching(graph):
        raise NoPerfectMatching("graph has no perfect matching")
    boundary = frozenset(graph.periphery().vertices)
    if boundary == set(graph.vertices):
        return True
    inner = enumerate_matchings(graph, limit=2, excluded=boundary)
    return len(inner) == 1


# ----------------------------------------------------------------------
# elementary decomposition
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ElementaryComponent:
    """One component of the graph after forbidden edges are removed.

    ``face_sets`` maps each component face id to the set of host-graph faces
    merged into it; a singleton finite entry means the face is unchanged.
    """

    graph: PlaneBipartiteGraph
    face_sets: dict[int, frozenset[int]]

    @property
    def is_trivial(self) -> bool:
        return len(self.graph.vertices) <= 2


@dataclass(frozen=True)
class ElementaryDecomposition:
    forbidden: frozenset[EdgeKey]
    components: tuple[ElementaryComponent, ...]
    weakly_elementary: bool

    def big_components(self) -> tuple[ElementaryComponent, ...]:
        return tuple(c for c in self.components if not c.is_trivial)


def _face_classes(
    graph: PlaneBipartiteGraph, removed: set[EdgeKey]
) -> dict[int, frozenset[int]]:
    """Merge faces across removed edges; returns root -> merged face ids."""
    parent = {f: f for f in graph.faces}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for key in removed:
        a, b = graph.edge_faces(key)
        parent[find(a)] = find(b)
    classes: dict[int, set[int]] = {}
    for f in graph.faces:
        classes.setdefault(find(f), set()).add(f)
    return {root: frozenset(fs) for root, fs in classes.items()}


def _component_subgraph(
    graph: PlaneBipartiteGraph, comp_vertices: set[int], comp_edges: list[EdgeKey]
) -> ElementaryComponent:
    removed = set(graph.edges) - set(comp_edges)
    classes = _face_classes(graph, removed)
    id_of_class = {root: min(fs) for root, fs in classes.items()}
    infinite_class = next(
        root for root, fs in classes.items() if graph.infinite_face in fs
    )

    comp_edge_set = set(comp_edges)
    rotation = {
        v: tuple(w for w in graph.rotation[v] if edge_key(v, w) in comp_edge_set)
        for v in sorted(comp_vertices)
    }
    faces: dict[int, tuple[int, ...]] = {}
    face_sets: dict[int, frozenset[int]] = {}
    for walk in trace_faces(rotation):
        u, v = walk[0], walk[1]
        host_face = graph.face_of_directed[(u, v)]
        root = next(r for r, fs in classes.items() if host_face in fs)
        fid = graph.infinite_face if root == infinite_class else id_of_class[root]
        faces[fid] = walk
        face_sets[fid] = classes[root]
    comp_graph = PlaneBipartiteGraph(
        tuple(sorted(comp_vertices)),
        {v: graph.colors[v] for v in comp_vertices},
        tuple(sorted(comp_edges)),
        faces,
        infinite_face=graph.infinite_face,
    )
    return ElementaryComponent(comp_graph, face_sets)


def elementary_decomposition(graph: PlaneBipartiteGraph) -> ElementaryDecomposition:
    """Split the graph into elementary components by removing forbidden edges.

    Weak elementarity holds when the removal creates no new finite face,
    i.e. every face class without the infinite face stays a singleton.
    """
    forb = forbidden_edges(graph)
    kept = [k for k in graph.edges if k not in forb]

    parent = {v: v for v in graph.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in kept:
        parent[find(u)] = find(v)
    groups: dict[int, set[int]] = {}
    for v in graph.vertices:
        groups.setdefault(find(v), set()).add(v)

    whole_classes = _face_classes(graph, set(forb))
    weakly = all(
        len(fs) == 1 for fs in whole_classes.values() if graph.infinite_face not in fs
    )

    components = []
    for root in sorted(groups, key=lambda r: min(groups[r])):
        comp_vertices = groups[root]
        comp_edges = [k for k in kept if k[0] in comp_vertices]
        comp = _component_subgraph(graph, comp_vertices, comp_edges)
        if not comp.is_trivial and not is_elementary(comp.graph):
            raise InternalContractViolation(
                "component of the forbidden-edge-free subgraph is not elementary"
            )
        components.append(comp)
    return ElementaryDecomposition(forb, tuple(components), weakly)
