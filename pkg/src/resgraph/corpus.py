"""Deterministic builders for the canonical test instances.

Benzenoids are assembled from axial hexagon coordinates (q, r) on the unit
hex lattice.  Internally each vertex gets scaled integer coordinates
(X, Y) = (x / (sqrt(3)/2), y / (1/2)) so that all positions are exact:

    hexagon center (q, r)  ->  (2q + r, -3r)
    corner offsets, clockwise from the top vertex:
        (0, 2), (1, 1), (1, -1), (0, -2), (-1, -1), (-1, 1)

Vertex color follows the lattice parity: Y = 1 (mod 3) is black,
Y = 2 (mod 3) is white.  Finite facial walks run clockwise, matching the
embedding convention of :mod:`resgraph.planegraph`.  A mirror image of the
input would swap white and black and complement every generated code; the
builder's orientation is the authoritative one.

Vertex ids are dense integers in lexicographic coordinate order; hexagon
faces get ids 1..k in spec order and the infinite face is id 0.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from math import atan2

from .errors import DisconnectedSpec, ParseError, UnknownInstance
from .planegraph import (
    BLACK,
    WHITE,
    PlaneBipartiteGraph,
    _canonical_walk,
    edge_key,
    from_document,
    trace_faces,
)

HexSpec = tuple[tuple[int, int], ...]

_CORNERS = ((0, 2), (1, 1), (1, -1), (0, -2), (-1, -1), (-1, 1))
_AXIAL_NEIGHBORS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def _hex_center(q: int, r: int) -> tuple[int, int]:
    return (2 * q + r, -3 * r)


def _color_of(coord: tuple[int, int]) -> str:
    return BLACK if coord[1] % 3 == 1 else WHITE


def _shoelace(coords: list[tuple[int, int]]) -> int:
    total = 0
    for i in range(len(coords)):
        x1, y1 = coords[i]
        x2, y2 = coords[(i + 1) % len(coords)]
        total += x1 * y2 - x2 * y1
    return total


def benzenoid(spec: HexSpec) -> PlaneBipartiteGraph:
    """Build the benzenoid graph for a set of hexagon coordinates.

    Face i+1 corresponds to spec[i]; duplicates are rejected.  Specs with
    holes are allowed: hole faces get ids after the hexagons.
    """
    hexes = list(spec)
    if not hexes:
        raise ParseError("empty hexagon spec")
    if len(set(hexes)) != len(hexes):
        raise ParseError("duplicate hexagon coordinate")
    placed = set(hexes)
    seen = {hexes[0]}
    stack = [hexes[0]]
    while stack:
        q, r = stack.pop()
        for dq, dr in _AXIAL_NEIGHBORS:
            n = (q + dq, r + dr)
            if n in placed and n not in seen:
                seen.add(n)
                stack.append(n)
    if seen != placed:
        missing = sorted(placed - seen)
        raise DisconnectedSpec(f"hexagons not reachable from {hexes[0]}: {missing}")

    hex_corner_coords = []
    for q, r in hexes:
        cx, cy = _hex_center(q, r)
        hex_corner_coords.append([(cx + dx, cy + dy) for dx, dy in _CORNERS])

    all_coords = sorted({c for ring in hex_corner_coords for c in ring})
    vid = {c: i for i, c in enumerate(all_coords)}
    coord_of = {i: c for c, i in vid.items()}

    edge_set = set()
    for ring in hex_corner_coords:
        for i in range(6):
            edge_set.add(edge_key(vid[ring[i]], vid[ring[(i + 1) % 6]]))
    edges = tuple(sorted(edge_set))

    neighbor_map: dict[int, list[int]] = {i: [] for i in range(len(all_coords))}
    for u, v in edges:
        neighbor_map[u].append(v)
        neighbor_map[v].append(u)

    def ccw_angle(v: int, w: int) -> float:
        (vx, vy), (wx, wy) = coord_of[v], coord_of[w]
        return atan2(wy - vy, wx - vx)

    # Counterclockwise neighbor order: tracing then yields the hexagon walks
    # clockwise and the outer boundary counterclockwise.
    rotation = {
        v: tuple(sorted(ws, key=lambda w: ccw_angle(v, w))) for v, ws in neighbor_map.items()
    }

    orbits = {_canonical_walk(w): w for w in trace_faces(rotation)}
    faces: dict[int, tuple[int, ...]] = {}
    for i, ring in enumerate(hex_corner_coords):
        walk = tuple(vid[c] for c in ring)
        key = _canonical_walk(walk)
        if key not in orbits:
            raise DisconnectedSpec(f"hexagon {hexes[i]} is not a face of the traced embedding")
        faces[i + 1] = orbits.pop(key)
    leftovers = sorted(orbits.values(), key=lambda w: _shoelace([coord_of[v] for v in w]))
    # Clockwise walks have negative signed area; the counterclockwise outer
    # boundary is the unique walk with the largest (positive) area.
    faces[0] = leftovers[-1]
    for extra, walk in enumerate(leftovers[:-1]):
        faces[len(hexes) + 1 + extra] = walk

    colors = {i: _color_of(coord_of[i]) for i in range(len(all_coords))}
    return PlaneBipartiteGraph(
        tuple(range(len(all_coords))), colors, edges, faces, infinite_face=0
    )


def chain(k: int) -> PlaneBipartiteGraph:
    """Linear chain of k fused hexagons; chain(1) is the hexagon."""
    if k < 1:
        raise ParseError("chain length must be >= 1")
    return benzenoid(tuple((i, 0) for i in range(k)))


def k2() -> PlaneBipartiteGraph:
    """Single matched edge; the degenerate two-vertex component."""
    return PlaneBipartiteGraph(
        (0, 1), {0: WHITE, 1: BLACK}, ((0, 1),), {0: (0, 1)}, infinite_face=0
    )


def bridge_graphs(
    g: PlaneBipartiteGraph, a: int, h: PlaneBipartiteGraph, b: int
) -> PlaneBipartiteGraph:
    """Join two graphs by one new edge between periphery vertices a and b.

    The bridge is drawn in the shared infinite region, so both infinite
    walks splice into one and every finite face survives.  The bridge edge
    lies in no perfect matching of the result whenever either side has odd
    order without its end; that is how forbidden-edge instances are built.
    h's vertices are renumbered after g's; h's finite faces after g's.
    """
    if g.colors[a] == h.colors[b]:
        raise ParseError("bridge ends must have opposite colors")
    offset = max(g.vertices) + 1
    vmap = {v: offset + i for i, v in enumerate(sorted(h.vertices))}
    foffset = max(g.faces) + 1
    vertices = g.vertices + tuple(vmap[v] for v in sorted(h.vertices))
    colors = dict(g.colors)
    colors.update({vmap[v]: h.colors[v] for v in h.vertices})
    edges = tuple(
        sorted(g.edges + tuple(edge_key(vmap[u], vmap[v]) for u, v in h.edges)
               + (edge_key(a, vmap[b]),))
    )
    faces: dict[int, tuple[int, ...]] = {
        f: walk for f, walk in g.faces.items() if f != g.infinite_face
    }
    for i, f in enumerate(sorted(fh for fh in h.faces if fh != h.infinite_face)):
        faces[foffset + i] = tuple(vmap[v] for v in h.faces[f])

    g_walk = g.faces[g.infinite_face]
    if a not in g_walk:
        raise ParseError(f"vertex {a} is not on the periphery")
    h_walk = tuple(vmap[v] for v in h.faces[h.infinite_face])
    b2 = vmap[b]
    if b2 not in h_walk:
        raise ParseError(f"vertex {b} is not on the periphery")
    ia = g_walk.index(a)
    g_rot = g_walk[ia:] + g_walk[:ia]
    ib = h_walk.index(b2)
    h_rot = h_walk[ib:] + h_walk[:ib]
    faces[g.infinite_face] = (a, b2) + h_rot[1:] + (b2, a) + g_rot[1:]
    return PlaneBipartiteGraph(vertices, colors, edges, faces, g.infinite_face)


def attach_pendant(g: PlaneBipartiteGraph, v: int) -> PlaneBipartiteGraph:
    """Attach a pendant matched edge outside the periphery at vertex v."""
    pendant = k2()
    anchor = 1 if g.colors[v] == WHITE else 0
    return bridge_graphs(g, v, pendant, anchor)


FIGURE1_HEXES: HexSpec = ((0, 0), (0, 1), (1, 1), (2, 0), (-1, 2))
FIGURE3_HEXES: HexSpec = ((0, 0), (1, 0), (-1, 2), (0, 2), (0, 1))
CORONENE_HEXES: HexSpec = ((0, 0),) + _AXIAL_NEIGHBORS


@dataclass(frozen=True)
class NamedInstance:
    name: str
    graph: PlaneBipartiteGraph
    forced_order: tuple[int, ...] | None = None


_CHAIN_RE = re.compile(r"^chain\(?(\d+)\)?$")


def named(name: str) -> NamedInstance:
    """Return a canonical instance by name.

    figure1 ships the face order matching its published coding; figure3 is
    the weakly elementary two-component example with a forbidden-edge face.
    """
    if name == "hexagon":
        return NamedInstance(name, chain(1))
    if name == "naphthalene":
        return NamedInstance(name, chain(2))
    m = _CHAIN_RE.match(name)
    if m:
        return NamedInstance(name, chain(int(m.group(1))))
    if name == "figure1":
        return NamedInstance(name, benzenoid(FIGURE1_HEXES), forced_order=(1, 2, 3, 4, 5))
    if name == "figure3":
        return NamedInstance(name, benzenoid(FIGURE3_HEXES))
    if name == "coronene":
        return NamedInstance(name, benzenoid(CORONENE_HEXES))
    if name == "bridged-hexagons":
        g = chain(1)
        white = min(v for v in g.periphery().vertices if g.colors[v] == WHITE)
        h = chain(1)
        black = min(v for v in h.periphery().vertices if h.colors[v] == BLACK)
        return NamedInstance(name, bridge_graphs(g, white, h, black))
    raise UnknownInstance(
        f"unknown instance {name!r}; try hexagon, naphthalene, chain(K), "
        f"figure1, figure3, coronene, bridged-hexagons"
    )

INSTANCE_NAMES = (
    "hexagon",
    "naphthalene",
    "chain(K)",
    "figure1",
    "figure3",
    "coronene",
    "bridged-hexagons",
)

_SHIPPED = ("hexagon", "naphthalene", "figure1", "figure3", "coronene")


def load_document(name: str) -> PlaneBipartiteGraph:
    """Parse the checked-in plane-graph document for a shipped instance."""
    if name not in _SHIPPED:
        raise UnknownInstance(f"no shipped document for {name!r}")
    text = resources.files("resgraph.data").joinpath(f"{name}.json").read_text()
    return from_document(json.loads(text))
