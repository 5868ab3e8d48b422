import pytest

from qmatcount.errors import ApexMissing, NotNested, OutOfRange
from qmatcount.support import (FANO_LINES, Partition, SupportSet, complement,
                               complete_graph_edges, diagonal_prefix, fano_support, graph_support,
                               partitions_in_box, skew_shape, straight_shape)


def test_diagonal_prefix():
    S = diagonal_prefix(5, 3)
    assert S.forbidden == {(1, 1), (2, 2), (3, 3)}
    assert S.free_count == 22
    with pytest.raises(OutOfRange):
        diagonal_prefix(3, 4)


def test_straight_and_skew():
    S = straight_shape((4, 3, 2), 5)
    assert len(S.forbidden) == 9 and S.is_forbidden(1, 4) and S.is_free(2, 4)
    K = skew_shape((5, 5, 4, 3, 1), (2, 2, 1), 5)
    assert len(K.forbidden) == 18 - 5
    assert K.is_free(1, 1) and K.is_forbidden(1, 3)
    with pytest.raises(NotNested):
        skew_shape((1,), (2,), 3)
    with pytest.raises(OutOfRange):
        straight_shape((4,), 3)


def test_fano():
    S = fano_support()
    assert S.free_count == 21
    for i, line in enumerate(FANO_LINES, start=1):
        assert {j for j in range(1, 8) if S.is_free(i, j)} == set(line)
    # every pair of points lies on exactly one line
    for a in range(1, 8):
        for b in range(a + 1, 8):
            assert sum(1 for line in FANO_LINES if a in line and b in line) == 1


def test_complement_and_transforms():
    S = diagonal_prefix(3, 2)
    C = complement(S)
    assert C.free_count == 2 and complement(C) == S
    assert straight_shape((2, 1), 3).transpose() == straight_shape((2, 1), 3)
    assert S.rotate180().forbidden == {(3, 3), (2, 2)}


def test_graph_support():
    S = graph_support(4, complete_graph_edges(4))
    assert S == SupportSet.of(3, 3)
    S = graph_support(4, [(1, 4), (2, 4), (3, 4), (1, 2)])
    assert S.forbidden == {(1, 3), (3, 1), (2, 3), (3, 2)}
    assert S.is_symmetric() and not S.contains_diagonal()
    with pytest.raises(ApexMissing):
        graph_support(3, [(1, 2), (1, 3)])


def test_partitions_in_box():
    parts = list(partitions_in_box(2, 2))
    assert len(parts) == 6  # C(4, 2)
    assert Partition((2, 1)).size == 3
    assert len(list(partitions_in_box(4, 4))) == 70
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_bad_positions():
    with pytest.raises(OutOfRange):
        SupportSet.of(2, 2, [(3, 1)])
