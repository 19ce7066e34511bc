import numpy as np
import pytest

from peisert.field import FieldTable
from peisert.graphs import (
    adjacency_matrix,
    generalized,
    is_connected,
    laplacian,
    matrix_market_string,
    spectrum_closed_form,
    srg_check,
    write_matrix_market,
)


def test_adjacency_basic(field9):
    A = adjacency_matrix(field9, "peisert")
    assert A.shape == (9, 9)
    assert np.array_equal(A, A.T)
    assert not A.diagonal().any()
    assert set(A.sum(axis=1)) == {4}


def test_adjacency_edge_rule(field9):
    A = adjacency_matrix(field9, "peisert")
    conn = set(field9.connection_set("peisert"))
    for u in range(9):
        for v in range(9):
            assert A[u, v] == (1 if field9.sub(v, u) in conn else 0)


def test_adjacency_regularity(field49, field81):
    for F, kind in ((field49, "peisert"), (field49, "paley"), (field81, "peisert")):
        A = adjacency_matrix(F, kind)
        assert set(A.sum(axis=1)) == {(F.q - 1) // 2}
        assert is_connected(A)


def test_laplacian(field9):
    A = adjacency_matrix(field9, "peisert")
    L = laplacian(A)
    assert list(L.diagonal()) == [4] * 9
    assert not L.sum(axis=1).any()
    assert L.trace() == 9 * 8 // 2


def test_laplacian_rejects_malformed():
    with pytest.raises(ValueError):
        laplacian(np.array([[1, 0], [0, 0]]))
    with pytest.raises(ValueError):
        laplacian(np.array([[0, 2], [2, 0]]))
    with pytest.raises(ValueError):
        laplacian(np.array([[0, 1], [0, 0]]))


def test_generalized(field9):
    A = adjacency_matrix(field9, "peisert")
    assert np.array_equal(generalized(A, 1, 0, 0), A)
    k = (field9.q - 1) // 2
    assert np.array_equal(generalized(A, -1, k, 0), laplacian(A))
    seidel = generalized(A, -2, -1, 1)
    assert np.array_equal(seidel, np.ones((9, 9), dtype=int) - np.eye(9, dtype=int) - 2 * A)


def test_generalized_big_weights(field9):
    A = adjacency_matrix(field9, "peisert")
    big = 10**30
    M = generalized(A, big, 1, -big)
    assert M.dtype == object
    assert M[0, 0] == 1 - big  # diagonal: b + c (no loop edge)


def test_srg_parameters(field9, field49, field81):
    for F in (field9, field49, field81):
        q = F.q
        expected = ((q - 1) // 2, (q - 5) // 4, (q - 1) // 4)
        for kind in ("peisert", "paley"):
            assert srg_check(adjacency_matrix(F, kind)) == expected


def test_srg_check_failures():
    # complete graph: no non-edge, mu undefined
    K4 = np.ones((4, 4), dtype=np.int64) - np.eye(4, dtype=np.int64)
    assert srg_check(K4) is None
    # path on 3 vertices: not regular
    P3 = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.int64)
    assert srg_check(P3) is None


def test_spectrum_closed_form():
    assert spectrum_closed_form(9) == {4: 1, 1: 4, -2: 4}
    assert spectrum_closed_form(49) == {24: 1, 3: 24, -4: 24}
    assert spectrum_closed_form(81) == {40: 1, 4: 40, -5: 40}
    with pytest.raises(ValueError):
        spectrum_closed_form(13)


def test_spectrum_consistent_with_matrix(field9):
    """The certified relations force the closed-form spectrum; for q = 9
    double-check against an actual eigendecomposition."""
    A = adjacency_matrix(field9, "peisert")
    eigs = np.linalg.eigvalsh(A.astype(float))
    counts = {}
    for ev in eigs:
        counts[round(ev)] = counts.get(round(ev), 0) + 1
    assert counts == spectrum_closed_form(9)


def test_connectivity_detects_split():
    two_edges = np.zeros((4, 4), dtype=np.int64)
    two_edges[0, 1] = two_edges[1, 0] = 1
    two_edges[2, 3] = two_edges[3, 2] = 1
    assert not is_connected(two_edges)


def test_matrix_market_format(field9, tmp_path):
    A = adjacency_matrix(field9, "peisert")
    text = matrix_market_string(A)
    lines = text.splitlines()
    assert lines[0] == "%%MatrixMarket matrix coordinate integer symmetric"
    n, m, nnz = map(int, lines[1].split())
    assert (n, m) == (9, 9)
    assert nnz == len(lines) - 2 == 18  # lower triangle of 36 edges
    total = np.zeros((9, 9), dtype=np.int64)
    for line in lines[2:]:
        i, j, v = map(int, line.split())
        assert i > j  # zero diagonal here, strictly lower storage
        total[i - 1, j - 1] = v
        total[j - 1, i - 1] = v
    assert np.array_equal(total, A)
    path = tmp_path / "graph.mtx"
    write_matrix_market(A, path)
    assert path.read_text(encoding="ascii") == text


def test_matrix_market_rejects_asymmetric():
    with pytest.raises(ValueError):
        matrix_market_string(np.array([[0, 1], [0, 0]]))
