import numpy as np
import pytest

from combinatorics.quiver import Arrow, build_qp, gentle_relations, render_qp, signed_adjacency
from combinatorics.surface import polygon
from utils.errors import QuiverError


def _pairs(qp):
    return [(arrow.source, arrow.target) for arrow in qp.arrows]


def test_annulus_arrows(annulus):
    qp = build_qp(annulus)
    assert _pairs(qp) == [("t1", "t2"), ("t2", "t3"), ("t3", "t1"), ("t3", "t1")]
    assert len(qp.potential_cycles) == 1


def test_annulus_exchange_matrix(annulus):
    matrix = signed_adjacency(build_qp(annulus))
    assert matrix.tolist() == [[0, -1, 2], [1, 0, -1], [-2, 1, 0]]


def test_octagon_arrows(octagon):
    qp = build_qp(octagon)
    assert _pairs(qp) == [("t2", "t1"), ("t3", "t2"), ("t3", "t5"), ("t4", "t3"), ("t5", "t4")]
    cycle = qp.potential_cycles[0]
    assert [arrow.source for arrow in cycle] == ["t4", "t3", "t5"]


def test_octagon_exchange_matrix(octagon):
    matrix = signed_adjacency(build_qp(octagon))
    assert matrix.tolist() == [
        [0, 1, 0, 0, 0],
        [-1, 0, 1, 0, 0],
        [0, -1, 0, 1, -1],
        [0, 0, -1, 0, 1],
        [0, 0, 1, -1, 0],
    ]
    assert np.array_equal(matrix, -matrix.T)
    assert int(np.abs(matrix[2]).sum()) == 3


def test_single_diagonal_has_no_arrows():
    qp = build_qp(polygon(4))
    assert qp.arrows == ()
    assert qp.potential_cycles == ()
    assert signed_adjacency(qp).tolist() == [[0]]


def test_fan_is_a_line():
    matrix = signed_adjacency(build_qp(polygon(6)))
    assert matrix.tolist() == [
        [0, 1, 0],
        [-1, 0, 1],
        [0, -1, 0],
    ]


def test_gentle_relations(annulus, octagon):
    annulus_relations = gentle_relations(build_qp(annulus))
    assert len(annulus_relations) == 3
    assert (Arrow("t2", "t3", 1), Arrow("t3", "t1", 1)) in annulus_relations
    assert (Arrow("t3", "t1", 2), Arrow("t1", "t2", 1)) not in annulus_relations
    assert len(gentle_relations(build_qp(octagon))) == 3


def test_render(annulus):
    lines = render_qp(build_qp(annulus))
    assert lines[0] == "vertices t1 t2 t3"
    assert lines[1] == "arrow t1 -> t2 (triangle 2)"
    assert lines[-1] == "cycle t2 -> t3 -> t1 (triangle 2)"


@pytest.mark.parametrize("label", ["t4", "missing"])
def test_index_of_rejects_non_vertices(annulus, label):
    qp = build_qp(annulus)
    assert qp.index_of("t3") == 3
    with pytest.raises(QuiverError) as excinfo:
        qp.index_of(label)
    assert excinfo.value.code == "quiver.unknown-vertex"
