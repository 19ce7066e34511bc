"""Integer matrices of Peisert and Paley graphs.

Vertices are the field elements in encoding order 0..q-1.  Matrices are
dense numpy arrays; int64 is used while entries provably fit, otherwise
dtype=object keeps the arithmetic exact.
"""

from __future__ import annotations

from collections import deque
from math import isqrt

import numpy as np

from peisert.field import FieldTable

_INT64_SAFE = 2**31


def adjacency_matrix(field: FieldTable, kind: str) -> np.ndarray:
    """q x q 0/1 adjacency matrix: entry (u, v) = 1 iff v - u lies in the
    connection set."""
    q = field.q
    conn = field.connection_set(kind)
    A = np.zeros((q, q), dtype=np.int64)
    idx = np.arange(q)
    for s in conn:
        targets = np.fromiter((field.add(x, s) for x in range(q)), dtype=np.int64, count=q)
        A[idx, targets] = 1
    return A


def _check_adjacency(A):
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("adjacency matrix must be square")
    if np.any(A.diagonal()):
        raise ValueError("adjacency matrix must have zero diagonal")
    if not np.array_equal(A, A.T):
        raise ValueError("adjacency matrix must be symmetric")
    if not np.all((A == 0) | (A == 1)):
        raise ValueError("adjacency matrix must be 0/1")


def laplacian(A: np.ndarray) -> np.ndarray:
    """Degree matrix minus adjacency; every row sums to zero."""
    _check_adjacency(A)
    return np.diag(A.sum(axis=1)) - A


def generalized(A: np.ndarray, a: int, b: int, c: int) -> np.ndarray:
    """The combination a*A + b*I + c*J, exact for any integer weights."""
    n = A.shape[0]
    if max(abs(a), abs(b), abs(c)) >= _INT64_SAFE:
        A = A.astype(object)
    return a * A + b * np.eye(n, dtype=A.dtype) + c * np.ones((n, n), dtype=A.dtype)


def srg_check(A: np.ndarray):
    """Parameters (k, lam, mu) of a strongly regular graph, or None.

    Checks the defining counts exactly: constant degree k, every edge in
    lam common neighbours, every non-edge in mu.  Graphs without a
    non-edge (complete) or without an edge fail, as mu or lam is
    undefined.
    """
    _check_adjacency(A)
    n = A.shape[0]
    degrees = A.sum(axis=1)
    k = int(degrees[0])
    if not np.all(degrees == k):
        return None
    A2 = A @ A
    off = ~np.eye(n, dtype=bool)
    edge_counts = np.unique(A2[(A == 1) & off])
    nonedge_counts = np.unique(A2[(A == 0) & off])
    if len(edge_counts) != 1 or len(nonedge_counts) != 1:
        return None
    lam, mu = int(edge_counts[0]), int(nonedge_counts[0])
    lhs = A2 + (mu - lam) * A + (mu - k) * np.eye(n, dtype=np.int64)
    if not np.array_equal(lhs, mu * np.ones((n, n), dtype=np.int64)):
        return None
    return k, lam, mu


def spectrum_closed_form(q: int) -> dict[int, int]:
    """Exact adjacency spectrum of a conference graph on a square number
    of vertices: (q-1)/2 once and (-1 +- sqrt(q))/2 each (q-1)/2 times."""
    s = isqrt(q)
    if s * s != q:
        raise ValueError(f"q = {q} is not a perfect square")
    half = (q - 1) // 2
    return {half: 1, (-1 + s) // 2: half, (-1 - s) // 2: half}


def is_connected(A: np.ndarray) -> bool:
    n = A.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in np.nonzero(A[u])[0]:
            if not seen[v]:
                seen[v] = True
                queue.append(int(v))
    return bool(seen.all())


def matrix_market_string(M: np.ndarray) -> str:
    """Matrix Market coordinate integer text for a symmetric matrix.

    Stores the lower triangle with 1-based indices, per the format spec.
    """
    if not np.array_equal(M, M.T):
        raise ValueError("matrix market export here is for symmetric matrices")
    n = M.shape[0]
    lines = ["%%MatrixMarket matrix coordinate integer symmetric"]
    entries = []
    for i in range(n):
        row = M[i]
        for j in range(i + 1):
            v = row[j]
            if v:
                entries.append(f"{i + 1} {j + 1} {int(v)}")
    lines.append(f"{n} {n} {len(entries)}")
    lines.extend(entries)
    return "\n".join(lines) + "\n"


def write_matrix_market(M: np.ndarray, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(matrix_market_string(M))
