"""Binary coding of all perfect matchings, generated without enumerating them.

Given a reducible face decomposition of a plane elementary bipartite graph
whose infinite face is forcing, the generator starts from the two codes of
the base cycle and extends one digit per decomposition step:

* handle entered white / left black along the clockwise periphery: every
  old code takes digit 0, and codes whose digits are 1 on every face
  adjacent to the new face also reappear with digit 1;
* entered black / left white: dual, with 0 and 1 swapped.

The resulting code of a matching equals its flip-count vector over the
decomposition's face order, so decoding walks the construction in reverse:
extend across each handle with the forced internal matching and flip the
step's facial cycle exactly when the digit sits on the filtered branch.

Codes of a weakly elementary graph are the concatenations of its elementary
components' codes; finite faces carrying forbidden edges contribute no digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    CodeNotInList,
    InfiniteFaceNotForcing,
    InternalContractViolation,
    NoPerfectMatching,
    NotWeaklyElementary,
)
from .matching import (
    ElementaryDecomposition,
    Matching,
    elementary_decomposition,
    has_perfect_matching,
    is_forcing_infinite_face,
    minimum_matching,
    symmetric_difference_cycles,
)
from .planegraph import BLACK, WHITE, PlaneBipartiteGraph, edge_key
from .rfd import Orientation, RfdSequence, find_rfd


@dataclass(frozen=True)
class CodingList:
    """Codes in generation order; digit i belongs to ``face_order[i]``."""

    codes: tuple[str, ...]
    face_order: tuple[int, ...]
    rfd: RfdSequence
    intermediates: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.codes)

    def in_face_order(self, faces: tuple[int, ...]) -> tuple[str, ...]:
        """Codes with digits permuted to the given face order."""
        pos = {f: i for i, f in enumerate(self.face_order)}
        perm = [pos[f] for f in faces]
        return tuple("".join(code[i] for i in perm) for code in self.codes)


def generate_coding(rfd: RfdSequence) -> CodingList:
    """Run the digit-extension algorithm over a decomposition.

    Requires the graph's infinite face to be forcing; that is what makes
    every flip count binary and the filtered branch exact.
    """
    graph = rfd.graph
    if not is_forcing_infinite_face(graph):
        raise InfiniteFaceNotForcing(
            "cannot code: removing the periphery leaves more than one matching"
        )
    codes = ["0", "1"]
    intermediates = [tuple(codes)]
    for i, step in enumerate(rfd.steps, start=1):
        positions = [rfd.face_order.index(f) for f in sorted(step.adjacent_faces)]
        if step.orientation is Orientation.WHITE_TO_BLACK:
            grown = [c + "0" for c in codes]
            grown += [c + "1" for c in codes if all(c[p] == "1" for p in positions)]
        else:
            grown = [c + "1" for c in codes]
            grown += [c + "0" for c in codes if all(c[p] == "0" for p in positions)]
        codes = grown
        intermediates.append(tuple(codes))
    return CodingList(tuple(codes), rfd.face_order, rfd, tuple(intermediates))


def flip_counts(
    graph: PlaneBipartiteGraph,
    m: Matching,
    faces: tuple[int, ...] | None = None,
    _minimum: Matching | None = None,
) -> tuple[int, ...]:
    """Nested-cycle count of m over each finite face.

    Entry f counts the cycles of the symmetric difference with the lattice
    minimum that enclose f; equivalently the net number of times f is
    flipped on a path down to the minimum.  Binary exactly when the
    infinite face is forcing.
    """
    if faces is None:
        faces = graph.finite_faces
    if not has_perfect_matching(graph):
        raise NoPerfectMatching("graph has no perfect matching")
    m0 = minimum_matching(graph) if _minimum is None else _minimum
    counts = {f: 0 for f in faces}
    for cycle in symmetric_difference_cycles(graph, m, m0):
        for f in graph.interior_faces(cycle):
            if f in counts:
                counts[f] += 1
    return tuple(counts[f] for f in faces)


def code_of(
    graph: PlaneBipartiteGraph,
    m: Matching,
    faces: tuple[int, ...],
    _minimum: Matching | None = None,
) -> str:
    """Flip counts rendered as a bit string; counts must be binary."""
    counts = flip_counts(graph, m, faces, _minimum)
    if any(c > 1 for c in counts):
        raise InternalContractViolation(f"flip counts {counts} are not binary")
    return "".join(str(c) for c in counts)


def _base_matching(cycle_graph: PlaneBipartiteGraph, digit: str) -> Matching:
    """The even cycle's matching with flip count equal to the digit.

    Digit 0 is the lattice minimum: matched edges run black -> white along
    the clockwise facial walk.
    """
    face = cycle_graph.finite_faces[0]
    walk = cycle_graph.faces[face]
    tail = BLACK if digit == "0" else WHITE
    n = len(walk)
    return frozenset(
        edge_key(walk[i], walk[(i + 1) % n])
        for i in range(n)
        if cycle_graph.colors[walk[i]] == tail
    )


def _handle_interior_matching(handle: tuple[int, ...]) -> Matching:
    """The unique matching of a handle's internal vertices: every second
    edge, skipping both end edges."""
    keys = [edge_key(u, v) for u, v in zip(handle, handle[1:])]
    return frozenset(keys[1::2])


def _is_alternating(graph: PlaneBipartiteGraph, face: int, m: Matching) -> bool:
    walk = graph.faces[face]
    n = len(walk)
    flags = [edge_key(walk[i], walk[(i + 1) % n]) in m for i in range(n)]
    return all(flags[i] != flags[(i + 1) % n] for i in range(n))


def decode(rfd: RfdSequence, code: str, coding: CodingList | None = None) -> Matching:
    """Matching whose flip-count vector over the decomposition's face order
    equals the code.

    Rebuilds the matching along the construction: the base cycle fixes the
    first digit, each later digit either keeps the handle extension (the
    unfiltered branch) or additionally flips the new facial cycle.
    """
    if coding is None:
        coding = generate_coding(rfd)
    if code not in coding.codes:
        raise CodeNotInList(f"code {code!r} is not one of the {len(coding)} codes")
    m = _base_matching(rfd.base, code[0])
    for i, step in enumerate(rfd.steps, start=1):
        graph = rfd.graphs[i]
        m = m | _handle_interior_matching(step.handle)
        flip_digit = "1" if step.orientation is Orientation.WHITE_TO_BLACK else "0"
        if code[i] == flip_digit:
            if not _is_alternating(graph, step.face, m):
                raise InternalContractViolation(
                    f"facial cycle of {step.face} is not alternating before flip"
                )
            m = m ^ graph.face_edge_keys(step.face)
    return m


@dataclass(frozen=True)
class ComponentCoding:
    """Concatenated coding of a weakly elementary graph.

    ``face_order`` lists the coded faces in digit order: components sorted
    by smallest face id, digits within a component in ascending face order.
    ``excluded_faces`` are the finite faces with forbidden edges on their
    peripheries; they carry no digit (their flip count is identically 0).
    """

    codes: tuple[str, ...]
    face_order: tuple[int, ...]
    component_codings: tuple[CodingList, ...]
    decomposition: ElementaryDecomposition
    excluded_faces: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.face_order)

    def __len__(self) -> int:
        return len(self.codes)


def code_weakly_elementary(graph: PlaneBipartiteGraph) -> ComponentCoding:
    """Code every perfect matching of a weakly elementary graph.

    Each elementary component with more than two vertices is decomposed and
    coded independently; the graph's codes are all concatenations.  Trivial
    two-vertex components contribute no digit but stay in the report.
    """
    decomp = elementary_decomposition(graph)
    if not decomp.weakly_elementary:
        merged = [
            sorted(fs)
            for fs in _new_finite_faces(decomp, graph)
        ]
        raise NotWeaklyElementary(
            f"removing forbidden edges merges finite faces {merged}"
        )
    big = sorted(
        decomp.big_components(), key=lambda c: min(c.graph.finite_faces)
    )
    codings = []
    for comp in big:
        if not is_forcing_infinite_face(comp.graph):
            raise InfiniteFaceNotForcing(
                f"component with faces {comp.graph.finite_faces} is not forcing"
            )
        codings.append(generate_coding(find_rfd(comp.graph)))

    face_order = tuple(f for c in codings for f in sorted(c.face_order))
    rendered = [c.in_face_order(tuple(sorted(c.face_order))) for c in codings]
    codes = tuple("".join(parts) for parts in product(*rendered)) if rendered else ()
    boundary_forbidden = tuple(
        f
        for f in graph.finite_faces
        if graph.face_edge_keys(f) & decomp.forbidden
    )
    return ComponentCoding(codes, face_order, tuple(codings), decomp, boundary_forbidden)


def _new_finite_faces(decomp, graph):
    from .matching import _face_classes

    classes = _face_classes(graph, set(decomp.forbidden))
    return [
        fs for fs in classes.values() if graph.infinite_face not in fs and len(fs) > 1
    ]
