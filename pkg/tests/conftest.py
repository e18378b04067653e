import pytest

from resgraph.corpus import bridge_graphs, named
from resgraph.planegraph import BLACK, WHITE, PlaneBipartiteGraph


def enclosed_perylene() -> PlaneBipartiteGraph:
    """The two-naphthalene graph drawn inside a hexagonal ring.

    Combinatorially this is the bridged union of figure3 and a hexagon with
    the hexagon's interior re-designated as the infinite face, which turns
    the old outer region into a finite ring face.  The forbidden edges of
    the inner graph then separate two finite faces, so removing them merges
    finite faces: the graph is plane bipartite with perfect matchings but
    not weakly elementary, and its resonance graph is disconnected.
    """
    inner = named("figure3").graph
    ring = named("hexagon").graph
    a = min(v for v in inner.periphery().vertices if inner.colors[v] == WHITE)
    b = min(v for v in ring.periphery().vertices if ring.colors[v] == BLACK)
    side_by_side = bridge_graphs(inner, a, ring, b)
    hex_face = max(side_by_side.faces)
    return PlaneBipartiteGraph(
        side_by_side.vertices,
        side_by_side.colors,
        side_by_side.edges,
        side_by_side.faces,
        infinite_face=hex_face,
    )


@pytest.fixture(scope="session")
def enclosed():
    return enclosed_perylene()


@pytest.fixture(scope="session")
def instances() -> dict[str, PlaneBipartiteGraph]:
    names = [
        "hexagon",
        "naphthalene",
        "chain(3)",
        "chain(4)",
        "chain(5)",
        "chain(6)",
        "chain(7)",
        "chain(8)",
        "figure1",
        "figure3",
        "coronene",
        "bridged-hexagons",
    ]
    return {n: named(n).graph for n in names}


@pytest.fixture(scope="session")
def figure1(instances):
    return instances["figure1"]


@pytest.fixture(scope="session")
def figure3(instances):
    return instances["figure3"]


@pytest.fixture(scope="session")
def hexagon(instances):
    return instances["hexagon"]


@pytest.fixture(scope="session")
def coronene(instances):
    return instances["coronene"]
