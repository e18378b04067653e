import pytest

from resgraph.corpus import attach_pendant, named
from resgraph.errors import NoPerfectMatching
from resgraph.matching import (
    CycleType,
    alternating_cycle_type,
    elementary_decomposition,
    enumerate_matchings,
    find_perfect_matching,
    forbidden_edges,
    is_elementary,
    is_forcing_infinite_face,
    matching_covers,
    maximum_matching,
    minimum_matching,
    symmetric_difference_cycles,
)
from resgraph.planegraph import from_document

# Path on three vertices: smallest valid embedding without a perfect matching.
PATH3_DOC = {
    "vertices": [
        {"id": 0, "color": "white"},
        {"id": 1, "color": "black"},
        {"id": 2, "color": "white"},
    ],
    "edges": [[0, 1], [1, 2]],
    "faces": [{"id": 0, "walk": [0, 1, 2, 1]}],
    "infinite_face": 0,
}

EXPECTED_COUNTS = {
    "hexagon": 2,
    "naphthalene": 3,
    "chain(3)": 4,
    "chain(8)": 9,
    "figure1": 14,
    "figure3": 9,
    "coronene": 20,
    "bridged-hexagons": 4,
}


class TestEnumeration:
    @pytest.mark.parametrize("name,count", sorted(EXPECTED_COUNTS.items()))
    def test_counts(self, instances, name, count):
        ms = enumerate_matchings(instances[name])
        assert len(ms) == count
        for m in ms:
            assert matching_covers(instances[name], m)
        assert len(set(ms)) == count

    def test_path3_has_none(self):
        g = from_document(PATH3_DOC)
        assert enumerate_matchings(g) == []
        assert find_perfect_matching(g) is None

    def test_limit_stops_early(self, figure1):
        assert len(enumerate_matchings(figure1, limit=5)) == 5

    def test_deterministic_order(self, figure1):
        assert enumerate_matchings(figure1) == enumerate_matchings(figure1)

    def test_find_returns_a_perfect_matching(self, instances):
        for name, g in instances.items():
            m = find_perfect_matching(g)
            assert m is not None and matching_covers(g, m), name


class TestForbiddenEdges:
    def test_hexagon_and_figure1_have_none(self, hexagon, figure1):
        assert forbidden_edges(hexagon) == frozenset()
        assert forbidden_edges(figure1) == frozenset()

    def test_figure3_forbidden_are_the_unshared_face5_edges(self, figure3):
        shared_with_others = set()
        for f in (1, 2, 3, 4):
            shared_with_others |= figure3.face_edge_keys(5) & figure3.face_edge_keys(f)
        expected = figure3.face_edge_keys(5) - shared_with_others
        assert forbidden_edges(figure3) == expected
        assert len(expected) == 2

    def test_forbidden_iff_absent_from_all_matchings(self, instances):
        for name in ("figure1", "figure3", "coronene", "bridged-hexagons"):
            g = instances[name]
            used = set().union(*enumerate_matchings(g))
            assert forbidden_edges(g) == set(g.edges) - used, name

    def test_requires_a_perfect_matching(self):
        g = from_document(PATH3_DOC)
        with pytest.raises(NoPerfectMatching):
            forbidden_edges(g)


class TestDecomposition:
    def test_figure3_two_naphthalenes(self, figure3):
        d = elementary_decomposition(figure3)
        assert d.weakly_elementary
        assert len(d.components) == 2
        faces = sorted(c.graph.finite_faces for c in d.components)
        assert faces == [(1, 2), (3, 4)]
        for c in d.components:
            assert len(c.graph.vertices) == 10
            assert is_elementary(c.graph)

    def test_elementary_graph_is_single_component(self, figure1):
        d = elementary_decomposition(figure1)
        assert d.weakly_elementary
        assert len(d.components) == 1
        assert d.components[0].graph == figure1

    def test_pendant_splits_off_single_edge(self, hexagon):
        g = attach_pendant(hexagon, 0)
        d = elementary_decomposition(g)
        assert d.weakly_elementary
        sizes = sorted(len(c.graph.vertices) for c in d.components)
        assert sizes == [2, 6]
        assert len(d.forbidden) == 1

    def test_component_face_sets_point_back(self, figure3):
        d = elementary_decomposition(figure3)
        for c in d.components:
            for f in c.graph.finite_faces:
                assert c.face_sets[f] == {f}


class TestExtremalMatchings:
    def test_hexagon_minimum_is_the_improper_one(self, hexagon):
        m0 = minimum_matching(hexagon)
        cycle = hexagon.facial_cycle(1)
        assert alternating_cycle_type(hexagon, cycle, m0) is CycleType.IMPROPER
        m1 = maximum_matching(hexagon)
        assert alternating_cycle_type(hexagon, cycle, m1) is CycleType.PROPER
        assert m0 != m1

    def test_extremes_admit_no_further_flip(self, instances):
        for name in ("figure1", "figure3", "coronene"):
            g = instances[name]
            m0 = minimum_matching(g)
            m1 = maximum_matching(g)
            for f in g.finite_faces:
                c = g.facial_cycle(f)
                assert alternating_cycle_type(g, c, m0) is not CycleType.PROPER
                assert alternating_cycle_type(g, c, m1) is not CycleType.IMPROPER


class TestAlternatingCycles:
    def test_hexagon_one_proper_one_improper(self, hexagon):
        cycle = hexagon.facial_cycle(1)
        kinds = {alternating_cycle_type(hexagon, cycle, m) for m in enumerate_matchings(hexagon)}
        assert kinds == {CycleType.PROPER, CycleType.IMPROPER}

    def test_chord_makes_not_alternating(self, instances):
        nap = instances["naphthalene"]
        peri = nap.periphery()
        chord = next(k for k in nap.edges if k not in peri.edge_keys())
        m = next(m for m in enumerate_matchings(nap) if chord in m)
        assert alternating_cycle_type(nap, peri, m) is CycleType.NOT_ALTERNATING

    def test_direction_independent(self, figure1):
        m = find_perfect_matching(figure1)
        for f in figure1.finite_faces:
            c = figure1.facial_cycle(f)
            assert alternating_cycle_type(figure1, c, m) is alternating_cycle_type(
                figure1, c.reversed(), m
            )


class TestSymmetricDifference:
    def test_equal_matchings_give_nothing(self, figure1):
        m = find_perfect_matching(figure1)
        assert symmetric_difference_cycles(figure1, m, m) == []

    def test_hexagon_pair_gives_the_six_cycle(self, hexagon):
        m1, m2 = enumerate_matchings(hexagon)
        cycles = symmetric_difference_cycles(hexagon, m1, m2)
        assert len(cycles) == 1
        assert len(cycles[0]) == 6
        assert hexagon.clockwise(cycles[0]) == cycles[0]

    def test_cycles_are_vertex_disjoint(self, coronene):
        ms = enumerate_matchings(coronene)
        for i in range(0, len(ms), 5):
            for j in range(i + 1, len(ms), 7):
                seen: set[int] = set()
                for c in symmetric_difference_cycles(coronene, ms[i], ms[j]):
                    assert not (set(c.vertices) & seen)
                    seen |= set(c.vertices)


class TestForcingInfiniteFace:
    @pytest.mark.parametrize(
        "name,expected",
        [
            ("hexagon", True),
            ("naphthalene", True),
            ("chain(8)", True),
            ("figure1", True),
            ("coronene", False),
            ("figure3", False),
        ],
    )
    def test_corpus(self, instances, name, expected):
        assert is_forcing_infinite_face(instances[name]) is expected
