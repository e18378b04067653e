"""Reducible faces and reducible face decompositions.

A handle is a periphery path whose internal vertices all have degree 2 and
whose ends have degree at least 3.  A finite face is reducible when its
common boundary with the periphery is a single odd-length handle whose
removal leaves an elementary graph.  Peeling reducible faces down to a bare
even cycle and recording the steps in construction order yields the
decomposition that drives the coder.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import NoReducibleFace, NotElementary, PeripheryNotCycle
from .matching import is_elementary
from .planegraph import BLACK, WHITE, DirectedCycle, PlaneBipartiteGraph, edge_key


class Orientation(Enum):
    """End colors of a handle along the clockwise periphery."""

    WHITE_TO_BLACK = "white-to-black"
    BLACK_TO_WHITE = "black-to-white"


@dataclass(frozen=True)
class RfdStep:
    """One peel step: face, its handle, and what the coder needs to know.

    ``handle`` runs in clockwise-periphery order, so its first vertex is the
    entry end; ``cohandle`` is the rest of the facial cycle, sharing exactly
    the two end vertices.  ``adjacent_faces`` are the finite faces of the
    previous (smaller) graph sharing an edge with this face.
    """

    face: int
    handle: tuple[int, ...]
    cohandle: tuple[int, ...]
    orientation: Orientation
    adjacent_faces: frozenset[int]

    @property
    def handle_edge_count(self) -> int:
        return len(self.handle) - 1


@dataclass(frozen=True)
class RfdSequence:
    """Reducible face decomposition G_1 c G_2 c ... c G_n.

    ``graphs[i]`` is G_{i+1}; ``face_order`` lists the faces in construction
    order (the base cycle's face first); ``steps[i-1]`` attaches
    ``face_order[i]``.  Deleting a step's handle from its graph yields the
    previous snapshot exactly.
    """

    graphs: tuple[PlaneBipartiteGraph, ...]
    face_order: tuple[int, ...]
    steps: tuple[RfdStep, ...]

    @property
    def graph(self) -> PlaneBipartiteGraph:
        return self.graphs[-1]

    @property
    def base(self) -> PlaneBipartiteGraph:
        return self.graphs[0]

    def __len__(self) -> int:
        return len(self.face_order)


def handles_on_periphery(graph: PlaneBipartiteGraph) -> list[tuple[int, ...]]:
    """Maximal degree-2 chains of the periphery, as vertex paths.

    Chains are delimited by vertices of degree >= 3 and listed in clockwise
    order starting from the smallest such vertex.  Empty when the whole
    periphery has degree 2 (single finite face).
    """
    cycle = graph.periphery()
    vs = cycle.vertices
    anchors = [i for i, v in enumerate(vs) if graph.degree(v) >= 3]
    if not anchors:
        return []
    start = min(anchors, key=lambda i: vs[i])
    order = sorted(range(len(anchors)), key=lambda j: (anchors[j] - start) % len(vs))
    anchors = [anchors[j] for j in order]
    out = []
    for j, i in enumerate(anchors):
        nxt = anchors[(j + 1) % len(anchors)]
        span = (nxt - i) % len(vs)
        if span == 0:
            span = len(vs)
        path = tuple(vs[(i + t) % len(vs)] for t in range(span + 1))
        out.append(path)
    return out


def _periphery_arc(graph: PlaneBipartiteGraph, shared: set[tuple[int, int]]) -> tuple[int, ...] | None:
    """Contiguous clockwise periphery arc covering the shared edges, if any."""
    cycle = graph.periphery()
    vs = cycle.vertices
    n = len(vs)
    flags = [edge_key(vs[i], vs[(i + 1) % n]) in shared for i in range(n)]
    count = sum(flags)
    if count != len(shared) or count == 0 or count == n:
        return None
    # One contiguous run of set flags means one arc; find a start just after
    # a gap and check the run length.
    starts = [i for i in range(n) if flags[i] and not flags[i - 1]]
    if len(starts) != 1:
        return None
    i = starts[0]
    if not all(flags[(i + t) % n] for t in range(count)):
        return None
    return tuple(vs[(i + t) % n] for t in range(count + 1))


def is_reducible_face(graph: PlaneBipartiteGraph, face: int) -> RfdStep | None:
    """The peel step for a reducible face, or None.

    Requires: shared boundary with the periphery is one contiguous arc that
    is a handle, of odd edge count, sharing no further vertices with the
    periphery, and removing it leaves an elementary graph.  The orientation
    records the handle's end colors in clockwise-periphery order.
    """
    if face == graph.infinite_face:
        return None
    try:
        peri = graph.periphery()
    except PeripheryNotCycle:
        return None
    shared = set(graph.face_edge_keys(face)) & peri.edge_keys()
    if not shared:
        return None
    handle = _periphery_arc(graph, shared)
    if handle is None:
        return None
    if (len(handle) - 1) % 2 == 0:
        return None
    face_vertices = set(graph.faces[face])
    if face_vertices & set(peri.vertices) != set(handle):
        return None
    if any(graph.degree(w) != 2 for w in handle[1:-1]):
        return None
    if graph.degree(handle[0]) < 3 or graph.degree(handle[-1]) < 3:
        return None
    smaller = graph.delete_handle(handle)
    if not is_elementary(smaller):
        return None

    cohandle = _cohandle(graph.faces[face], handle)

    adjacent = set()
    for key in graph.face_edge_keys(face):
        for f in graph.edge_faces(key):
            if f != face and f != graph.infinite_face:
                adjacent.add(f)
    orientation = (
        Orientation.WHITE_TO_BLACK
        if graph.colors[handle[0]] == WHITE
        else Orientation.BLACK_TO_WHITE
    )
    return RfdStep(face, handle, cohandle, orientation, frozenset(adjacent))


def _cohandle(walk: tuple[int, ...], handle: tuple[int, ...]) -> tuple[int, ...]:
    """Facial-cycle arc complementary to the handle, end to end."""
    internal = set(handle[1:-1])
    k = len(walk)
    rest = [v for v in walk if v not in internal]
    # rest is the cohandle read cyclically; rotate so it runs end-to-end.
    m = len(rest)
    for i, v in enumerate(rest):
        if v in (handle[0], handle[-1]):
            rotated = [rest[(i + t) % m] for t in range(m)]
            if rotated[-1] in (handle[0], handle[-1]):
                return tuple(rotated)
    raise AssertionError("handle ends not found on facial walk")


def find_rfd(
    graph: PlaneBipartiteGraph, order: tuple[int, ...] | None = None
) -> RfdSequence:
    """Peel reducible faces down to an even cycle.

    Greedy by default: at each stage remove the reducible face with the
    smallest id.  An explicit ``order`` (construction order, first face =
    base cycle) forces the peel to follow it and fails loudly when a forced
    face is not reducible at its turn.
    """
    if len(graph.vertices) <= 2:
        raise NotElementary("graph must have more than two vertices")
    if not is_elementary(graph):
        raise NotElementary("graph has forbidden edges or no perfect matching")
    finite = graph.finite_faces
    if order is not None:
        if sorted(order) != sorted(finite):
            raise NoReducibleFace(
                f"order {order} does not list the finite faces {finite} exactly once"
            )
        peel_plan = list(reversed(order[1:]))
    else:
        peel_plan = None

    snapshots = [graph]
    steps_reversed: list[RfdStep] = []
    cur = graph
    while len(cur.finite_faces) > 1:
        if peel_plan is not None:
            target = peel_plan[len(steps_reversed)]
            step = is_reducible_face(cur, target)
            if step is None:
                raise NoReducibleFace(
                    f"face {target} is not reducible with {len(cur.finite_faces)} faces left"
                )
        else:
            step = next(
                (s for f in cur.finite_faces if (s := is_reducible_face(cur, f))), None
            )
            if step is None:
                raise NoReducibleFace(
                    f"no reducible face among {cur.finite_faces}; invalid input or bug"
                )
        cur = cur.delete_handle(step.handle)
        snapshots.append(cur)
        steps_reversed.append(step)

    base = cur
    if any(base.degree(v) != 2 for v in base.vertices):
        raise NoReducibleFace("peel did not terminate at an even cycle")
    base_face = base.finite_faces[0]
    if order is not None and base_face != order[0]:
        raise NoReducibleFace(
            f"peel terminated at face {base_face}, but order starts with {order[0]}"
        )
    face_order = (base_face,) + tuple(s.face for s in reversed(steps_reversed))
    return RfdSequence(
        tuple(reversed(snapshots)), face_order, tuple(reversed(steps_reversed))
    )
