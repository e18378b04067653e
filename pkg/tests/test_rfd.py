import pytest

from resgraph.corpus import named
from resgraph.errors import NoReducibleFace, NotElementary
from resgraph.matching import is_elementary, is_forcing_infinite_face
from resgraph.planegraph import edge_key
from resgraph.rfd import (
    Orientation,
    find_rfd,
    handles_on_periphery,
    is_reducible_face,
)


class TestHandles:
    def test_naphthalene_has_two_five_edge_handles(self, instances):
        handles = handles_on_periphery(instances["naphthalene"])
        assert sorted(len(h) - 1 for h in handles) == [5, 5]

    def test_figure1_inventory_contains_s5_handle(self, figure1):
        handles = handles_on_periphery(figure1)
        step = is_reducible_face(figure1, 5)
        assert step.handle in handles or tuple(reversed(step.handle)) in handles
        assert step.handle_edge_count == 5

    def test_even_cycle_has_no_handles(self, hexagon):
        assert handles_on_periphery(hexagon) == []

    def test_handle_interiors_have_degree_two(self, coronene):
        for h in handles_on_periphery(coronene):
            assert all(coronene.degree(v) == 2 for v in h[1:-1])
            assert coronene.degree(h[0]) >= 3 and coronene.degree(h[-1]) >= 3


class TestReducibleFaces:
    def test_naphthalene_both_faces_reducible(self, instances):
        nap = instances["naphthalene"]
        for f in nap.finite_faces:
            step = is_reducible_face(nap, f)
            assert step is not None
            assert step.handle_edge_count == 5

    def test_figure1_s5(self, figure1):
        step = is_reducible_face(figure1, 5)
        assert step is not None
        assert step.adjacent_faces == {2}
        smaller = figure1.delete_handle(step.handle)
        assert smaller.finite_faces == (1, 2, 3, 4)

    def test_coronene_central_not_reducible(self, coronene):
        assert is_reducible_face(coronene, 1) is None

    def test_handle_and_cohandle_partition_facial_cycle(self, figure1):
        for f in figure1.finite_faces:
            step = is_reducible_face(figure1, f)
            if step is None:
                continue
            walk_keys = figure1.face_edge_keys(f)
            hk = {edge_key(u, v) for u, v in zip(step.handle, step.handle[1:])}
            jk = {edge_key(u, v) for u, v in zip(step.cohandle, step.cohandle[1:])}
            assert hk | jk == walk_keys
            assert not hk & jk
            assert (len(step.handle) - 1) % 2 == 1
            assert (len(step.cohandle) - 1) % 2 == 1
            assert {step.handle[0], step.handle[-1]} == {
                step.cohandle[0],
                step.cohandle[-1],
            }

    def test_orientation_reads_end_colors_clockwise(self, figure1):
        # The handle tuple is stored in clockwise-periphery order, so the
        # orientation must match its first vertex's color.
        for f in figure1.finite_faces:
            step = is_reducible_face(figure1, f)
            if step is None:
                continue
            expected = (
                Orientation.WHITE_TO_BLACK
                if figure1.colors[step.handle[0]] == "white"
                else Orientation.BLACK_TO_WHITE
            )
            assert step.orientation is expected


class TestFindRfd:
    def test_even_cycle_is_the_base(self, hexagon):
        seq = find_rfd(hexagon)
        assert len(seq) == 1
        assert seq.steps == ()
        assert seq.face_order == (1,)

    def test_naphthalene_two_steps(self, instances):
        seq = find_rfd(instances["naphthalene"])
        assert len(seq) == 2
        assert len(seq.steps) == 1

    def test_figure1_forced_order(self, figure1):
        seq = find_rfd(figure1, order=(1, 2, 3, 4, 5))
        assert seq.face_order == (1, 2, 3, 4, 5)
        assert [s.orientation for s in seq.steps] == [
            Orientation.WHITE_TO_BLACK,
            Orientation.BLACK_TO_WHITE,
            Orientation.WHITE_TO_BLACK,
            Orientation.BLACK_TO_WHITE,
        ]
        assert [sorted(s.adjacent_faces) for s in seq.steps] == [[1], [2], [3], [2]]

    def test_snapshots_chain_by_handle_deletion(self, figure1):
        seq = find_rfd(figure1, order=(1, 2, 3, 4, 5))
        for i, step in enumerate(seq.steps, start=1):
            assert seq.graphs[i].delete_handle(step.handle) == seq.graphs[i - 1]
            assert len(seq.graphs[i].faces) == len(seq.graphs[i - 1].faces) + 1

    def test_intermediates_stay_elementary_and_forcing(self, instances):
        for name in ("figure1", "chain(5)", "naphthalene"):
            g = instances[name]
            assert is_forcing_infinite_face(g)
            seq = find_rfd(g)
            for snapshot in seq.graphs:
                assert is_elementary(snapshot)
                assert is_forcing_infinite_face(snapshot)

    def test_greedy_works_on_all_elementary_instances(self, instances):
        for name in ("hexagon", "naphthalene", "chain(8)", "figure1", "coronene"):
            seq = find_rfd(instances[name])
            assert sorted(seq.face_order) == list(instances[name].finite_faces)

    def test_non_elementary_rejected(self, figure3):
        with pytest.raises(NotElementary):
            find_rfd(figure3)

    def test_bad_forced_order_rejected(self, figure1):
        # Peeling face 2 while faces 1 and 3 are still present leaves its
        # periphery contact split into two arcs, so it is not reducible.
        with pytest.raises(NoReducibleFace):
            find_rfd(figure1, order=(1, 3, 2, 4, 5))

    def test_order_must_cover_faces(self, figure1):
        with pytest.raises(NoReducibleFace):
            find_rfd(figure1, order=(1, 2, 3))
