"""Plane bipartite graphs given as combinatorial embeddings.

A graph is described by its vertices (2-colored), edges, and facial walks,
one of which is designated infinite.  Finite facial walks are stored in
clockwise order as drawn; the infinite face's walk then runs counterclockwise
around the outer boundary, so that every edge appears in exactly two walks,
once per direction (combinatorial-map validity).  The clockwise periphery is
therefore the reversal of the stored infinite walk.

The rotation system (counterclockwise neighbor order at each vertex) is
induced from the declared walks and is the internal source of truth: faces
re-derived from it must reproduce the declaration.  Under these conventions
the face whose walk traverses u -> v lies to the right of the directed edge
(u, v); this orientation rule drives every interior/clockwise query below.

Graphs are immutable after construction and all operations are pure, so
instances are safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    HandleNotOnPeriphery,
    InternalContractViolation,
    InvalidEmbedding,
    NotAHandle,
    NotBipartite,
    NotSimpleCycle,
    ParseError,
    PeripheryNotCycle,
)

WHITE = "white"
BLACK = "black"

# An edge key is the sorted endpoint pair; matchings are frozensets of keys.
EdgeKey = tuple[int, int]


def edge_key(u: int, v: int) -> EdgeKey:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class DirectedCycle:
    """Simple cycle given as a cyclic vertex sequence with a direction.

    The sequence is closed implicitly: the last vertex joins the first.
    """

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def directed_edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edge_keys(self) -> frozenset[EdgeKey]:
        return frozenset(edge_key(u, v) for u, v in self.directed_edges())

    def reversed(self) -> "DirectedCycle":
        vs = self.vertices
        return DirectedCycle((vs[0],) + tuple(reversed(vs[1:])))

    def rotated_to(self, start: int) -> "DirectedCycle":
        i = self.vertices.index(start)
        return DirectedCycle(self.vertices[i:] + self.vertices[:i])


def _canonical_walk(walk: tuple[int, ...]) -> tuple[int, ...]:
    """Least rotation of a closed walk; direction is preserved."""
    rotations = [walk[i:] + walk[:i] for i in range(len(walk))]
    return min(rotations)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the full invariant battery; empty means all hold."""

    violations: tuple[tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {code for code, _ in self.violations}

    def to_text(self) -> str:
        if self.ok:
            return "valid: all invariants hold"
        lines = [f"invalid: {len(self.violations)} violation(s)"]
        lines += [f"  {code}: {where}" for code, where in self.violations]
        return "\n".join(lines)


class PlaneBipartiteGraph:
    """Validated plane bipartite graph with queryable embedding.

    Construction raises ``ParseError`` / ``InvalidEmbedding`` /
    ``NotBipartite`` on hard violations.  Degree-1 vertices are tolerated
    (they occur in degenerate two-vertex components and pendant
    constructions) but are flagged by :func:`validate_document`.
    """

    def __init__(
        self,
        vertices: tuple[int, ...],
        colors: dict[int, str],
        edges: tuple[EdgeKey, ...],
        faces: dict[int, tuple[int, ...]],
        infinite_face: int,
    ):
        self.vertices = tuple(vertices)
        self.colors = dict(colors)
        self.edges = tuple(edges)
        self.faces = dict(faces)
        self.infinite_face = infinite_face

        self._check_structure()
        self.edge_index: dict[EdgeKey, int] = {e: i for i, e in enumerate(self.edges)}
        self._build_incidence()
        self._check_bipartite()
        self._build_rotation_from_walks()
        self._check_connected()
        self._check_euler()
        self._check_retrace()

    # ------------------------------------------------------------------
    # construction-time checks
    # ------------------------------------------------------------------

    def _check_structure(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError("duplicate vertex id")
        vset = set(self.vertices)
        for v in self.vertices:
            if self.colors.get(v) not in (WHITE, BLACK):
                raise ParseError(f"vertex {v}: color must be white or black")
        seen: set[EdgeKey] = set()
        for u, v in self.edges:
            if u == v:
                raise ParseError(f"loop edge at vertex {u}")
            if u not in vset or v not in vset:
                raise ParseError(f"edge ({u},{v}): unknown endpoint")
            k = edge_key(u, v)
            if k != (u, v):
                raise ParseError(f"edge ({u},{v}): endpoints must be sorted")
            if k in seen:
                raise InvalidEmbedding(f"duplicate edge ({u},{v})")
            seen.add(k)
        if self.infinite_face not in self.faces:
            raise ParseError(f"infinite face id {self.infinite_face} not declared")
        for f, walk in self.faces.items():
            if len(walk) < 2:
                raise ParseError(f"face {f}: walk needs at least 2 vertices")
            for w in walk:
                if w not in vset:
                    raise ParseError(f"face {f}: unknown vertex {w} in walk")

    def _build_incidence(self) -> None:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._neighbor_sets = nbrs

    def _check_bipartite(self) -> None:
        for u, v in self.edges:
            if self.colors[u] == self.colors[v]:
                raise NotBipartite(f"edge ({u},{v}) joins two {self.colors[u]} vertices")

    def _build_rotation_from_walks(self) -> None:
        # Corner maps: walking a face ... u -> v -> w ... records that at v the
        # counterclockwise successor of u is w.  Each directed edge must occur
        # in exactly one walk, and the corner map at each vertex must close
        # into a single cycle over its neighbors - that cycle is the rotation.
        face_of: dict[tuple[int, int], int] = {}
        succ: dict[int, dict[int, int]] = {v: {} for v in self.vertices}
        for f, walk in self.faces.items():
            n = len(walk)
            for i in range(n):
                u, v, w = walk[i - 1], walk[i], walk[(i + 1) % n]
                if edge_key(u, v) not in self.edge_index:
                    raise InvalidEmbedding(f"face {f}: walk step ({u},{v}) is not an edge")
                if (u, v) in face_of:
                    raise InvalidEmbedding(
                        f"directed edge ({u},{v}) appears in faces {face_of[(u, v)]} and {f}"
                    )
                face_of[(u, v)] = f
                if u in succ[v]:
                    raise InvalidEmbedding(f"vertex {v}: corner from {u} declared twice")
                succ[v][u] = w
        for u, v in self.edges:
            if (u, v) not in face_of or (v, u) not in face_of:
                raise InvalidEmbedding(f"edge ({u},{v}) missing from some face walk")
        rotation: dict[int, tuple[int, ...]] = {}
        for v in self.vertices:
            nbrs = self._neighbor_sets[v]
            if not nbrs:
                raise InvalidEmbedding(f"vertex {v} is isolated")
            if set(succ[v]) != nbrs:
                raise InvalidEmbedding(f"vertex {v}: corners do not cover all neighbors")
            start = min(nbrs)
            cycle = [start]
            cur = succ[v][start]
            while cur != start:
                if len(cycle) > len(nbrs):
                    raise InvalidEmbedding(f"vertex {v}: corner map is not a single cycle")
                cycle.append(cur)
                cur = succ[v][cur]
            if len(cycle) != len(nbrs):
                raise InvalidEmbedding(f"vertex {v}: corner map is not a single cycle")
            rotation[v] = tuple(cycle)
        self.rotation = rotation
        self.face_of_directed = face_of

    def _check_connected(self) -> None:
        start = self.vertices[0]
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self._neighbor_sets[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise InvalidEmbedding("graph is disconnected")

    def _check_euler(self) -> None:
        v, e, f = len(self.vertices), len(self.edges), len(self.faces)
        if v - e + f != 2:
            raise InvalidEmbedding(f"Euler relation fails: {v} - {e} + {f} != 2")

    def _check_retrace(self) -> None:
        declared = {_canonical_walk(w) for w in self.faces.values()}
        traced = {_canonical_walk(w) for w in trace_faces(self.rotation)}
        if declared != traced:
            raise InvalidEmbedding("declared faces do not match rotation-system faces")

    # ------------------------------------------------------------------
    # basic queries
    # ------------------------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self._neighbor_sets[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edge_index

    @property
    def finite_faces(self) -> tuple[int, ...]:
        return tuple(sorted(f for f in self.faces if f != self.infinite_face))

    def facial_cycle(self, face: int) -> DirectedCycle:
        """Stored walk of a finite face as a directed (clockwise) cycle."""
        if face == self.infinite_face:
            raise NotSimpleCycle("infinite face has no facial cycle; use periphery()")
        walk = self.faces[face]
        if len(set(walk)) != len(walk):
            raise NotSimpleCycle(f"face {face}: walk repeats a vertex")
        return DirectedCycle(walk)

    def face_edge_keys(self, face: int) -> frozenset[EdgeKey]:
        walk = self.faces[face]
        n = len(walk)
        return frozenset(edge_key(walk[i], walk[(i + 1) % n]) for i in range(n))

    def edge_faces(self, key: EdgeKey) -> tuple[int, int]:
        """Faces on the two sides of an edge (forward-walk face, backward)."""
        u, v = key
        return (self.face_of_directed[(u, v)], self.face_of_directed[(v, u)])

    def check_simple_cycle(self, cycle: DirectedCycle) -> None:
        vs = cycle.vertices
        if len(vs) < 3:
            raise NotSimpleCycle(f"cycle too short: {len(vs)} vertices")
        if len(set(vs)) != len(vs):
            raise NotSimpleCycle("cycle repeats a vertex")
        for u, v in cycle.directed_edges():
            if not self.has_edge(u, v):
                raise NotSimpleCycle(f"({u},{v}) is not an edge")

    # ------------------------------------------------------------------
    # embedding operations
    # ------------------------------------------------------------------

    def periphery(self) -> DirectedCycle:
        """Outer boundary as a clockwise simple cycle.

        Raises ``PeripheryNotCycle`` when the boundary walk repeats a vertex
        (graph not 2-connected).
        """
        walk = self.faces[self.infinite_face]
        if len(set(walk)) != len(walk):
            dup = next(v for v in walk if walk.count(v) > 1)
            raise PeripheryNotCycle(f"boundary repeats vertex {dup}")
        if len(walk) < 3:
            raise PeripheryNotCycle("boundary is a single edge")
        return DirectedCycle((walk[0],) + tuple(reversed(walk[1:])))

    def interior_faces(self, cycle: DirectedCycle) -> frozenset[int]:
        """Finite faces enclosed by a simple cycle.

        Dual components after deleting the dual edges crossed by the cycle;
        the component without the infinite face is the interior.  The result
        does not depend on the cycle's direction.
        """
        self.check_simple_cycle(cycle)
        crossing = cycle.edge_keys()
        parent = {f: f for f in self.faces}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for key in self.edges:
            if key in crossing:
                continue
            a, b = self.edge_faces(key)
            parent[find(a)] = find(b)
        outside = find(self.infinite_face)
        components = {find(f) for f in self.faces}
        if len(components) != 2:
            raise NotSimpleCycle("cycle does not separate the plane into two parts")
        return frozenset(f for f in self.faces if find(f) != outside)

    def clockwise(self, cycle: DirectedCycle) -> DirectedCycle:
        """Direct a simple cycle clockwise.

        A directed edge (u, v) runs clockwise along the cycle exactly when
        the face whose walk traverses u -> v lies inside the cycle.  All
        edges must agree; a mixed verdict would contradict map validity.
        """
        interior = self.interior_faces(cycle)
        verdicts = {self.face_of_directed[(u, v)] in interior for u, v in cycle.directed_edges()}
        if len(verdicts) != 1:
            raise InternalContractViolation("cycle edges disagree on clockwise direction")
        return cycle if verdicts.pop() else cycle.reversed()

    def delete_handle(self, path: tuple[int, ...]) -> "PlaneBipartiteGraph":
        """Remove a handle's internal vertices and edges.

        The path must lie on the periphery with all internal vertices of
        degree 2.  The finite face bounded partly by the path merges with the
        infinite face; every other face survives with its walk and id intact,
        and the merged face inherits the infinite face's id.
        """
        path = tuple(path)
        if len(path) < 2 or len(set(path)) != len(path):
            raise NotAHandle(f"not a simple path: {path}")
        for u, v in zip(path, path[1:]):
            if not self.has_edge(u, v):
                raise NotAHandle(f"({u},{v}) is not an edge")
        peri_keys = self.periphery().edge_keys()
        path_keys = [edge_key(u, v) for u, v in zip(path, path[1:])]
        for k in path_keys:
            if k not in peri_keys:
                raise HandleNotOnPeriphery(f"edge {k} is not on the periphery")
        for w in path[1:-1]:
            if self.degree(w) != 2:
                raise NotAHandle(f"internal vertex {w} has degree {self.degree(w)}")
        whole_graph_is_cycle = all(self.degree(v) == 2 for v in self.vertices)
        for end in (path[0], path[-1]):
            if self.degree(end) < 3 and not whole_graph_is_cycle:
                raise NotAHandle(f"end vertex {end} has degree {self.degree(end)}")

        # Every handle edge separates the infinite face from one finite face,
        # constant along the handle.
        side_faces = {f for k in path_keys for f in self.edge_faces(k) if f != self.infinite_face}
        if len(side_faces) != 1:
            raise NotAHandle(f"path borders finite faces {sorted(side_faces)}")
        merged_finite = side_faces.pop()

        internal = set(path[1:-1])
        removed_keys = set(path_keys)
        new_vertices = tuple(v for v in self.vertices if v not in internal)
        new_edges = tuple(k for k in self.edges if k not in removed_keys)
        new_rotation = {
            v: tuple(w for w in self.rotation[v] if edge_key(v, w) not in removed_keys)
            for v in new_vertices
        }

        surviving = {
            _canonical_walk(w): f
            for f, w in self.faces.items()
            if f not in (merged_finite, self.infinite_face)
        }
        new_faces: dict[int, tuple[int, ...]] = {}
        merged_walks = []
        for walk in trace_faces(new_rotation):
            f = surviving.pop(_canonical_walk(walk), None)
            if f is None:
                merged_walks.append(walk)
            else:
                new_faces[f] = walk
        if surviving or len(merged_walks) != 1:
            raise InternalContractViolation(
                "handle removal merged faces other than the side face and the infinite face"
            )
        new_faces[self.infinite_face] = merged_walks[0]
        colors = {v: self.colors[v] for v in new_vertices}
        return PlaneBipartiteGraph(new_vertices, colors, new_edges, new_faces, self.infinite_face)

    # ------------------------------------------------------------------
    # equality and serialization
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneBipartiteGraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.colors == other.colors
            and self.edges == other.edges
            and self.infinite_face == other.infinite_face
            and set(self.faces) == set(other.faces)
            and all(
                _canonical_walk(self.faces[f]) == _canonical_walk(other.faces[f])
                for f in self.faces
            )
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges, self.infinite_face))

    def __repr__(self) -> str:
        return (
            f"PlaneBipartiteGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, "
            f"|F|={len(self.faces)})"
        )

    def to_document(self) -> dict:
        return {
            "vertices": [
                {"id": v, "color": self.colors[v]} for v in sorted(self.vertices)
            ],
            "edges": [[u, v] for u, v in self.edges],
            "faces": [
                {"id": f, "walk": list(self.faces[f])} for f in sorted(self.faces)
            ],
            "infinite_face": self.infinite_face,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=1) + "\n"


def trace_faces(rotation: dict[int, tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Orbits of the next-edge map of a counterclockwise rotation system.

    From a directed edge (u, v), the walk continues to the counterclockwise
    successor of u around v.  Returns one closed walk per face; bounded
    faces come out clockwise, the unbounded face counterclockwise.
    """
    succ: dict[int, dict[int, int]] = {}
    for v, nbrs in rotation.items():
        succ[v] = {nbrs[i]: nbrs[(i + 1) % len(nbrs)] for i in range(len(nbrs))}
    unvisited = {(u, v) for u, nbrs in rotation.items() for v in nbrs}
    walks = []
    while unvisited:
        start = min(unvisited)
        walk = []
        u, v = start
        while True:
            unvisited.discard((u, v))
            walk.append(u)
            u, v = v, succ[v][u]
            if (u, v) == start:
                break
        walks.append(tuple(walk))
    return walks


# ----------------------------------------------------------------------
# document parsing and validation
# ----------------------------------------------------------------------


def from_document(doc: dict) -> PlaneBipartiteGraph:
    """Build a graph from a plane-graph document (parsed JSON)."""
    try:
        vertices = tuple(int(v["id"]) for v in doc["vertices"])
        colors = {int(v["id"]): str(v["color"]) for v in doc["vertices"]}
        edges = tuple(edge_key(int(u), int(v)) for u, v in doc["edges"])
        faces = {int(f["id"]): tuple(int(w) for w in f["walk"]) for f in doc["faces"]}
        infinite = int(doc["infinite_face"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed document: {exc}") from exc
    if len({int(f["id"]) for f in doc["faces"]}) != len(doc["faces"]):
        raise ParseError("duplicate face id")
    return PlaneBipartiteGraph(vertices, colors, edges, faces, infinite)


def parse_graph(text: str) -> PlaneBipartiteGraph:
    """Parse a JSON plane-graph document into a validated graph."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    return from_document(doc)


def validate_document(doc: dict) -> ValidationReport:
    """Run the full invariant battery without raising.

    Hard violations (structure, bipartiteness, map validity, Euler,
    connectivity) come from the constructor; soft ones (degree < 2 in a
    graph larger than a single edge) are appended afterwards.
    """
    violations: list[tuple[str, str]] = []
    graph = None
    try:
        graph = from_document(doc)
    except ParseError as exc:
        violations.append(("PARSE", str(exc)))
    except NotBipartite as exc:
        violations.append(("NOT_BIPARTITE", str(exc)))
    except InvalidEmbedding as exc:
        violations.append(("INVALID_EMBEDDING", str(exc)))
    if graph is not None and len(graph.vertices) > 2:
        for v in sorted(graph.vertices):
            if graph.degree(v) < 2:
                violations.append(("LOW_DEGREE", f"vertex {v} has degree {graph.degree(v)}"))
    return ValidationReport(tuple(violations))
