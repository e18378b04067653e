import pytest

from resgraph.coder import (
    code_of,
    code_weakly_elementary,
    decode,
    flip_counts,
    generate_coding,
)
from resgraph.corpus import attach_pendant, named
from resgraph.errors import (
    CodeNotInList,
    InfiniteFaceNotForcing,
    NotElementary,
)
from resgraph.matching import (
    enumerate_matchings,
    matching_covers,
    maximum_matching,
    minimum_matching,
)
from resgraph.rfd import find_rfd

FIGURE1_PANELS = [
    {"0", "1"},
    {"00", "10", "11"},
    {"000", "100", "001", "101", "111"},
    {"0010", "1010", "1110", "0000", "1000", "0011", "1011", "1111"},
    {
        "00000", "10000", "00100", "10100", "00110", "10110", "00001",
        "10001", "00101", "10101", "11101", "00111", "10111", "11111",
    },
]

FIGURE3_CODES = {
    "0000", "0001", "0100", "0101", "1101", "0011", "0111", "1100", "1111",
}


@pytest.fixture(scope="module")
def figure1_coding():
    seq = find_rfd(named("figure1").graph, order=(1, 2, 3, 4, 5))
    return generate_coding(seq)


class TestGenerateCoding:
    def test_base_cycle_codes(self, hexagon):
        coding = generate_coding(find_rfd(hexagon))
        assert set(coding.codes) == {"0", "1"}

    def test_figure1_reproduces_every_panel(self, figure1_coding):
        assert [set(level) for level in figure1_coding.intermediates] == FIGURE1_PANELS

    def test_figure1_generation_order_is_stable(self, figure1_coding):
        again = generate_coding(find_rfd(named("figure1").graph, order=(1, 2, 3, 4, 5)))
        assert again.codes == figure1_coding.codes

    def test_no_duplicates_and_matching_count(self, instances):
        for name in ("hexagon", "naphthalene", "chain(6)", "figure1"):
            g = instances[name]
            coding = generate_coding(find_rfd(g))
            assert len(set(coding.codes)) == len(coding.codes)
            assert len(coding.codes) == len(enumerate_matchings(g))

    def test_non_forcing_rejected(self, coronene):
        with pytest.raises(InfiniteFaceNotForcing):
            generate_coding(find_rfd(coronene))

    def test_order_invariance_up_to_digit_permutation(self, figure1):
        forced = generate_coding(find_rfd(figure1, order=(1, 2, 3, 4, 5)))
        greedy = generate_coding(find_rfd(figure1))
        ascending = tuple(sorted(forced.face_order))
        assert set(forced.in_face_order(ascending)) == set(greedy.in_face_order(ascending))


class TestFlipCounts:
    def test_minimum_is_all_zero(self, instances):
        for name in ("hexagon", "figure1", "figure3", "coronene"):
            g = instances[name]
            assert set(flip_counts(g, minimum_matching(g))) == {0}

    def test_figure1_maximum_is_all_one(self, figure1):
        assert flip_counts(figure1, maximum_matching(figure1)) == (1, 1, 1, 1, 1)

    def test_coronene_exceeds_one_somewhere(self, coronene):
        m0 = minimum_matching(coronene)
        tops = [
            max(flip_counts(coronene, m, None, m0))
            for m in enumerate_matchings(coronene)
        ]
        assert max(tops) >= 2

    def test_counts_are_binary_on_forcing_instances(self, instances):
        for name in ("hexagon", "naphthalene", "chain(8)", "figure1"):
            g = instances[name]
            m0 = minimum_matching(g)
            for m in enumerate_matchings(g):
                assert set(flip_counts(g, m, None, m0)) <= {0, 1}, name


class TestDecode:
    def test_hexagon_zero_is_minimum(self, hexagon):
        seq = find_rfd(hexagon)
        assert decode(seq, "0") == minimum_matching(hexagon)
        assert decode(seq, "1") == maximum_matching(hexagon)

    def test_figure1_all_zero_is_minimum(self, figure1, figure1_coding):
        assert decode(figure1_coding.rfd, "00000", figure1_coding) == minimum_matching(
            figure1
        )

    def test_round_trip_all_codes(self, figure1, figure1_coding):
        m0 = minimum_matching(figure1)
        seen = set()
        for code in figure1_coding.codes:
            m = decode(figure1_coding.rfd, code, figure1_coding)
            assert matching_covers(figure1, m)
            assert code_of(figure1, m, figure1_coding.face_order, m0) == code
            seen.add(m)
        assert seen == set(enumerate_matchings(figure1))

    def test_unknown_code_rejected(self, figure1_coding):
        with pytest.raises(CodeNotInList):
            decode(figure1_coding.rfd, "11011", figure1_coding)

    def test_flip_direction_example(self, figure1, figure1_coding):
        # Face 1 is proper alternating for the matching coded 10000, so the
        # flip edge points from 10000 down to the all-zero minimum, where the
        # same cycle is improper.
        from resgraph.matching import CycleType, alternating_cycle_type

        m = decode(figure1_coding.rfd, "10000", figure1_coding)
        cycle = figure1.facial_cycle(1)
        assert alternating_cycle_type(figure1, cycle, m) is CycleType.PROPER
        flipped = m ^ figure1.face_edge_keys(1)
        assert flipped == decode(figure1_coding.rfd, "00000", figure1_coding)
        assert alternating_cycle_type(figure1, cycle, flipped) is CycleType.IMPROPER


class TestComponentCoding:
    def test_figure3_reproduces_published_codes(self, figure3):
        cc = code_weakly_elementary(figure3)
        assert cc.width == 4
        assert cc.face_order == (1, 2, 3, 4)
        assert set(cc.codes) == FIGURE3_CODES
        assert cc.excluded_faces == (5,)

    def test_excluded_face_has_constant_zero_count(self, figure3):
        m0 = minimum_matching(figure3)
        for m in enumerate_matchings(figure3):
            assert flip_counts(figure3, m, (5,), m0) == (0,)

    def test_elementary_graph_matches_plain_coding(self, instances):
        nap = instances["naphthalene"]
        cc = code_weakly_elementary(nap)
        plain = generate_coding(find_rfd(nap))
        ascending = tuple(sorted(plain.face_order))
        assert set(cc.codes) == set(plain.in_face_order(ascending))
        assert cc.face_order == ascending

    def test_bridged_hexagons_full_product(self, instances):
        cc = code_weakly_elementary(instances["bridged-hexagons"])
        assert cc.width == 2
        assert set(cc.codes) == {"00", "01", "10", "11"}

    def test_coronene_component_rejected(self, coronene):
        with pytest.raises(InfiniteFaceNotForcing) as exc:
            code_weakly_elementary(coronene)
        assert "1, 2, 3, 4, 5, 6, 7" in str(exc.value)

    def test_pendant_coronene_rejected_naming_component(self, coronene):
        g = attach_pendant(coronene, int(coronene.periphery().vertices[0]))
        with pytest.raises(InfiniteFaceNotForcing):
            code_weakly_elementary(g)

    def test_trivial_components_carry_no_digit(self, hexagon):
        g = attach_pendant(hexagon, 0)
        cc = code_weakly_elementary(g)
        assert cc.width == 1
        assert set(cc.codes) == {"0", "1"}
        assert len(cc.decomposition.components) == 2
