"""Executable verification: every structural claim the coder relies on,
checked exhaustively against the oracle at desk scale.

All checks are total scans (no sampling); a global size guard refuses
graphs whose matching count exceeds the oracle cap.  Each failing check
carries a concrete witness.  Checks are pure functions over the immutable
oracle structures, aggregated into a deterministic report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .coder import CodingList, code_weakly_elementary, decode, flip_counts, generate_coding
from .errors import ResgraphError, ThetaNotTransitive
from .matching import (
    Matching,
    elementary_decomposition,
    enumerate_matchings,
    is_elementary,
    is_forcing_infinite_face,
    minimum_matching,
    symmetric_difference_cycles,
)
from .planegraph import PlaneBipartiteGraph, edge_key
from .resonance import (
    DEFAULT_CAP,
    LatticeView,
    ResonanceDigraph,
    build_resonance,
    cover_pairs,
    distributivity_witness,
    lattice,
    signed_flip_counts,
)
from .rfd import RfdSequence, find_rfd


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        suffix = f"  ({self.witness})" if self.witness and not self.passed else ""
        return f"{status}  {self.name}{suffix}"


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)
    quantities: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: str = "") -> None:
        self.checks.append(CheckResult(name, passed, witness))

    def to_text(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append("")
        for k in sorted(self.quantities):
            lines.append(f"{k} = {self.quantities[k]}")
        lines.append("")
        lines.append("all checks passed" if self.passed else "SOME CHECKS FAILED")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "checks": [
                    {"name": c.name, "passed": c.passed, "witness": c.witness}
                    for c in self.checks
                ],
                "quantities": self.quantities,
                "passed": self.passed,
            },
            indent=1,
        )


# ----------------------------------------------------------------------
# partial-cube machinery
# ----------------------------------------------------------------------


def theta_classes(digraph: ResonanceDigraph) -> list[frozenset[int]]:
    """Equivalence classes of the Djokovic-Winkler edge relation.

    Edges ab and cd are related when d(a,c) + d(b,d) != d(a,d) + d(b,c).
    On a partial cube the relation is transitive and the class count is the
    isometric dimension; non-transitivity raises with a witness.
    """
    dist = digraph.distances
    m = len(digraph.edges)
    related = [[False] * m for _ in range(m)]
    for p in range(m):
        a, b, _ = digraph.edges[p]
        for q in range(p, m):
            c, d, _ = digraph.edges[q]
            rel = dist[a][c] + dist[b][d] != dist[a][d] + dist[b][c]
            related[p][q] = related[q][p] = rel

    unassigned = set(range(m))
    classes = []
    while unassigned:
        seed = min(unassigned)
        members = {q for q in range(m) if related[seed][q]}
        for p, q in combinations(sorted(members), 2):
            if not related[p][q]:
                raise ThetaNotTransitive(
                    f"edges {digraph.edges[seed]}, {digraph.edges[p]}, "
                    f"{digraph.edges[q]} break transitivity"
                )
        if not members <= unassigned:
            raise ThetaNotTransitive(f"class of edge {digraph.edges[seed]} overlaps another")
        classes.append(frozenset(members))
        unassigned -= members
    return classes


def check_isometric(
    digraph: ResonanceDigraph, codes_by_node: dict[int, str]
) -> CheckResult:
    """Hamming distance between codes must equal resonance-graph distance."""
    dist = digraph.distances
    for i in range(len(digraph)):
        for j in range(i + 1, len(digraph)):
            hamming = sum(a != b for a, b in zip(codes_by_node[i], codes_by_node[j]))
            if hamming != dist[i][j]:
                return CheckResult(
                    "isometric-embedding",
                    False,
                    f"codes {codes_by_node[i]},{codes_by_node[j]}: "
                    f"hamming {hamming} != distance {dist[i][j]}",
                )
    return CheckResult("isometric-embedding", True)


def check_median(
    digraph: ResonanceDigraph, codes_by_node: dict[int, str] | None = None
) -> CheckResult:
    """Unique median vertex for every triple; with codes also the closure of
    componentwise majority."""
    dist = digraph.distances
    n = len(digraph)

    def interval(x: int, y: int) -> set[int]:
        return {z for z in range(n) if dist[x][z] + dist[z][y] == dist[x][y]}

    for x in range(n):
        for y in range(x, n):
            ixy = interval(x, y)
            for z in range(y, n):
                med = ixy & interval(y, z) & interval(x, z)
                if len(med) != 1:
                    return CheckResult(
                        "median-property",
                        False,
                        f"triple (M{x},M{y},M{z}) has {len(med)} medians",
                    )
    if codes_by_node is not None:
        codeset = set(codes_by_node.values())
        for x in range(n):
            for y in range(x + 1, n):
                for z in range(y + 1, n):
                    maj = "".join(
                        max(bits, key=bits.count)
                        for bits in zip(
                            codes_by_node[x], codes_by_node[y], codes_by_node[z]
                        )
                    )
                    if maj not in codeset:
                        return CheckResult(
                            "median-property",
                            False,
                            f"majority({codes_by_node[x]},{codes_by_node[y]},"
                            f"{codes_by_node[z]}) = {maj} is not a code",
                        )
    return CheckResult("median-property", True)


# ----------------------------------------------------------------------
# component product
# ----------------------------------------------------------------------


def check_product(graph: PlaneBipartiteGraph, cap: int = DEFAULT_CAP) -> CheckResult:
    """R(G) is the Cartesian product of the components' resonance graphs.

    Uses the restriction bijection: a matching corresponds to the tuple of
    its restrictions to the elementary components.  Also checks that the
    isometric dimension is the sum over components.
    """
    decomp = elementary_decomposition(graph)
    if not decomp.weakly_elementary:
        return CheckResult("component-product", False, "graph is not weakly elementary")
    whole = build_resonance(graph, cap)
    comps = decomp.big_components()
    comp_digraphs = [build_resonance(c.graph, cap) for c in comps]
    comp_index: list[dict[Matching, int]] = [
        {m: i for i, m in enumerate(d.matchings)} for d in comp_digraphs
    ]

    def restriction_tuple(m: Matching) -> tuple[int, ...]:
        out = []
        for comp, index in zip(comps, comp_index):
            edges = frozenset(k for k in m if k in comp.graph.edge_index)
            if edges not in index:
                return ()
            out.append(index[edges])
        return tuple(out)

    tuples = [restriction_tuple(m) for m in whole.matchings]
    if any(t == () for t in tuples):
        return CheckResult(
            "component-product", False, "restriction is not a component matching"
        )
    if len(set(tuples)) != len(tuples):
        return CheckResult("component-product", False, "restriction map is not injective")
    expected = 1
    for d in comp_digraphs:
        expected *= len(d)
    if len(tuples) != expected:
        return CheckResult(
            "component-product",
            False,
            f"{len(tuples)} matchings but component product has {expected}",
        )

    comp_edgesets = [
        {(i, j) for i, j, _ in d.edges} | {(j, i) for i, j, _ in d.edges}
        for d in comp_digraphs
    ]

    def product_adjacent(t1: tuple[int, ...], t2: tuple[int, ...]) -> bool:
        diff = [k for k in range(len(t1)) if t1[k] != t2[k]]
        return len(diff) == 1 and (t1[diff[0]], t2[diff[0]]) in comp_edgesets[diff[0]]

    whole_edges = {(i, j) for i, j, _ in whole.edges}
    for i in range(len(whole)):
        for j in range(i + 1, len(whole)):
            lhs = (i, j) in whole_edges or (j, i) in whole_edges
            rhs = product_adjacent(tuples[i], tuples[j])
            if lhs != rhs:
                return CheckResult(
                    "component-product",
                    False,
                    f"pair (M{i},M{j}): resonance edge={lhs}, product edge={rhs}",
                )

    idim_whole = len(theta_classes(whole))
    idim_sum = sum(len(theta_classes(d)) for d in comp_digraphs)
    if idim_whole != idim_sum:
        return CheckResult(
            "component-product",
            False,
            f"idim {idim_whole} != sum of component idims {idim_sum}",
        )
    return CheckResult("component-product", True)


# ----------------------------------------------------------------------
# forcing equivalences
# ----------------------------------------------------------------------


def _binary_embedding_holds(
    graph: PlaneBipartiteGraph, digraph: ResonanceDigraph
) -> tuple[bool, str]:
    """Flip counts are 0/1, injective, and Hamming-isometric."""
    m0 = minimum_matching(graph)
    vectors = [flip_counts(graph, m, None, m0) for m in digraph.matchings]
    for m, vec in zip(digraph.matchings, vectors):
        if any(x > 1 for x in vec):
            return False, f"flip counts {vec} not binary"
    if len(set(vectors)) != len(vectors):
        return False, "flip-count vectors collide"
    dist = digraph.distances
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            hamming = sum(a != b for a, b in zip(vectors[i], vectors[j]))
            if hamming != dist[i][j]:
                return False, f"hamming {hamming} != distance {dist[i][j]} for (M{i},M{j})"
    return True, ""


def _disjoint_interiors_hold(
    graph: PlaneBipartiteGraph, digraph: ResonanceDigraph
) -> tuple[bool, str]:
    """Vertex-disjoint cycle pairs from matching differences have disjoint
    interiors.

    The scan covers exactly the disjoint-cycle nice subgraphs reachable as
    components of a symmetric difference of two perfect matchings, which is
    every such pair realized by the matchings themselves.
    """
    ms = digraph.matchings
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            cycles = symmetric_difference_cycles(graph, ms[i], ms[j])
            interiors = [graph.interior_faces(c) for c in cycles]
            for a in range(len(cycles)):
                for b in range(a + 1, len(cycles)):
                    if interiors[a] & interiors[b]:
                        return False, (
                            f"cycles of M{i}^M{j} share interior faces "
                            f"{sorted(interiors[a] & interiors[b])}"
                        )
    return True, ""


def _peripheral_expansion_holds(
    graph: PlaneBipartiteGraph, rfd: RfdSequence
) -> tuple[bool, str]:
    """Every step's handle-saturating matchings leave the new face resonant.

    For each snapshot, the matchings containing both end edges of the handle
    must make the whole facial cycle alternating; that is the condition for
    the step to be a peripheral convex expansion of the resonance graph.
    """
    for idx, step in enumerate(rfd.steps, start=1):
        g = rfd.graphs[idx]
        handle_keys = [edge_key(u, v) for u, v in zip(step.handle, step.handle[1:])]
        end_keys = {handle_keys[0], handle_keys[-1]}
        for m in enumerate_matchings(g):
            if not end_keys <= m:
                continue
            if not all((k in m) == (t % 2 == 0) for t, k in enumerate(handle_keys)):
                continue
            walk = g.faces[step.face]
            n = len(walk)
            keys = [edge_key(walk[t], walk[(t + 1) % n]) in m for t in range(n)]
            if not all(keys[t] != keys[(t + 1) % n] for t in range(n)):
                return False, (
                    f"step {idx} (face {step.face}): a handle-saturating matching "
                    f"misses the facial cycle"
                )
    return True, ""


def forcing_equivalence_suite(
    graph: PlaneBipartiteGraph,
    digraph: ResonanceDigraph,
    rfd: RfdSequence,
) -> CheckResult:
    """The four equivalent forcing characterizations must agree.

    (i) binary flip-count embedding, (ii) disjoint interiors of disjoint
    nice cycles, (iii) forcing infinite face, (iv) peripheral expansions
    along the decomposition.
    """
    s1, w1 = _binary_embedding_holds(graph, digraph)
    s2, w2 = _disjoint_interiors_hold(graph, digraph)
    s3 = is_forcing_infinite_face(graph)
    s4, w4 = _peripheral_expansion_holds(graph, rfd)
    if len({s1, s2, s3, s4}) == 1:
        return CheckResult("forcing-equivalences", True)
    detail = (
        f"binary-embedding={s1} ({w1}), disjoint-interiors={s2} ({w2}), "
        f"forcing-face={s3}, peripheral-expansions={s4} ({w4})"
    )
    return CheckResult("forcing-equivalences", False, detail)


# ----------------------------------------------------------------------
# full report
# ----------------------------------------------------------------------


def run_verify(graph: PlaneBipartiteGraph, cap: int = DEFAULT_CAP) -> VerificationReport:
    """Run every applicable check on one graph and aggregate a report."""
    report = VerificationReport()
    decomp = elementary_decomposition(graph)
    digraph = build_resonance(graph, cap)
    n = len(graph.finite_faces)
    d = sum(
        len(c.graph.finite_faces) for c in decomp.big_components()
    )
    report.quantities.update(
        {
            "finite_faces_n": n,
            "coded_faces_d": d,
            "matchings": len(digraph),
            "components": len(decomp.components),
            "weakly_elementary": decomp.weakly_elementary,
        }
    )

    report.add(
        "connected-iff-weakly-elementary",
        digraph.is_connected == decomp.weakly_elementary,
        f"connected={digraph.is_connected}, weakly_elementary={decomp.weakly_elementary}",
    )
    if not digraph.is_connected:
        return report

    view = lattice(digraph)
    report.quantities["height"] = view.height
    report.quantities["diameter"] = digraph.diameter

    report.add(
        "hasse-is-flip-digraph",
        cover_pairs(view) == {(i, j) for i, j, _ in digraph.edges},
    )
    report.add(
        "unique-sink-is-minimum",
        digraph.matchings[view.minimum] == minimum_matching(graph),
    )
    witness = distributivity_witness(view)
    report.add(
        "lattice-distributive",
        witness is None,
        "" if witness is None else f"triple {witness}",
    )

    m0 = minimum_matching(graph)
    vectors = [flip_counts(graph, m, None, m0) for m in digraph.matchings]
    ok = True
    wit = ""
    for i in range(len(digraph)):
        for j in range(len(digraph)):
            psi = signed_flip_counts(graph, digraph.matchings[i], digraph.matchings[j])
            if tuple(a - b for a, b in zip(vectors[i], vectors[j])) != psi:
                ok, wit = False, f"pair (M{i},M{j})"
                break
        if not ok:
            break
    report.add("flip-count-difference-identity", ok, wit)

    ok, wit = True, ""
    faces = graph.finite_faces
    for i, j, face in digraph.edges:
        delta = tuple(a - b for a, b in zip(vectors[i], vectors[j]))
        expect = tuple(1 if f == face else 0 for f in faces)
        if delta != expect:
            ok, wit = False, f"edge M{i}->M{j} labeled s{face} has delta {delta}"
            break
    report.add("edge-direction-follows-counts", ok, wit)

    try:
        classes = theta_classes(digraph)
        report.quantities["idim"] = len(classes)
        report.add("theta-transitive", True)
    except ThetaNotTransitive as exc:
        report.add("theta-transitive", False, str(exc))
        return report
    report.add(
        "idim-equals-height-and-diameter",
        len(classes) == view.height == digraph.diameter,
        f"idim={len(classes)}, height={view.height}, diameter={digraph.diameter}",
    )

    elementary_graph = is_elementary(graph) and len(graph.vertices) > 2
    codes_by_node: dict[int, str] | None = None

    if elementary_graph:
        forcing = is_forcing_infinite_face(graph)
        report.quantities["forcing_infinite_face"] = forcing
        report.add(
            "idim-meets-face-count-iff-forcing",
            (len(classes) == n) == forcing and len(classes) >= n,
            f"idim={len(classes)}, n={n}, forcing={forcing}",
        )
        rfd = find_rfd(graph)
        report.checks.append(forcing_equivalence_suite(graph, digraph, rfd))

        labels: dict[int, set[int]] = {}
        for k, (i, j, face) in enumerate(digraph.edges):
            labels.setdefault(face, set()).add(k)
        from .rfd import is_reducible_face

        ok, wit = True, ""
        for face in faces:
            if is_reducible_face(graph, face) is None:
                continue
            if frozenset(labels.get(face, set())) not in classes:
                ok, wit = False, f"edges labeled s{face} are not a theta class"
                break
        report.add("reducible-face-labels-are-theta-classes", ok, wit)

        ok, wit = True, ""
        for face in faces:
            if not any(
                _face_resonant(graph, face, m) for m in digraph.matchings
            ):
                ok, wit = False, f"face s{face} is never resonant"
                break
        if ok:
            peri = graph.periphery()
            if not any(
                _cycle_alternating(graph, peri.vertices, m) for m in digraph.matchings
            ):
                ok, wit = False, "infinite face is never resonant"
        report.add("every-face-resonant", ok, wit)

        if forcing:
            coding = generate_coding(rfd)
            rendered = {c: k for k, c in enumerate(coding.codes)}
            report.add("coding-has-no-duplicates", len(rendered) == len(coding.codes))
            oracle_codes = {
                "".join(str(x) for x in flip_counts(graph, m, coding.face_order, m0))
                for m in digraph.matchings
            }
            report.add(
                "coding-matches-oracle-counts",
                oracle_codes == set(coding.codes),
                f"{len(oracle_codes)} oracle codes vs {len(coding.codes)} generated",
            )
            decoded = {}
            ok, wit = True, ""
            for code in coding.codes:
                m = decode(rfd, code, coding)
                if m not in digraph.matchings:
                    ok, wit = False, f"decode({code}) is not a perfect matching of the graph"
                    break
                back = "".join(
                    str(x) for x in flip_counts(graph, m, coding.face_order, m0)
                )
                if back != code:
                    ok, wit = False, f"decode({code}) has counts {back}"
                    break
                decoded[digraph.index_of(m)] = code
            if ok and len(decoded) != len(digraph):
                ok, wit = False, "decode is not onto the matching set"
            report.add("decode-bijective-roundtrip", ok, wit)
            if ok:
                codes_by_node = decoded
    else:
        try:
            cc = code_weakly_elementary(graph)
            report.quantities["coded_faces_d"] = cc.width
            order = cc.face_order
            codes_by_node = {
                i: "".join(
                    str(x)
                    for x in flip_counts(graph, m, order, m0)
                )
                for i, m in enumerate(digraph.matchings)
            }
            report.add(
                "component-coding-matches-oracle-counts",
                set(codes_by_node.values()) == set(cc.codes),
                f"{len(set(codes_by_node.values()))} oracle vs {len(cc.codes)} generated",
            )
        except ResgraphError as exc:
            report.add(
                "component-coding-skipped",
                True,
                f"not codable: {exc}",
            )
            codes_by_node = None

    if codes_by_node is not None:
        report.checks.append(check_isometric(digraph, codes_by_node))
        hamming_one = {
            frozenset((i, j))
            for i in range(len(digraph))
            for j in range(i + 1, len(digraph))
            if sum(a != b for a, b in zip(codes_by_node[i], codes_by_node[j])) == 1
        }
        resonance_pairs = {frozenset((i, j)) for i, j, _ in digraph.edges}
        report.add(
            "hamming-one-pairs-are-edges",
            hamming_one == resonance_pairs,
        )
    report.checks.append(check_median(digraph, codes_by_node))

    report.checks.append(check_product(graph, cap))
    return report


def _face_resonant(graph: PlaneBipartiteGraph, face: int, m: Matching) -> bool:
    return _cycle_alternating(graph, graph.faces[face], m)


def _cycle_alternating(
    graph: PlaneBipartiteGraph, walk: tuple[int, ...], m: Matching
) -> bool:
    n = len(walk)
    flags = [edge_key(walk[i], walk[(i + 1) % n]) in m for i in range(n)]
    return all(flags[i] != flags[(i + 1) % n] for i in range(n))
