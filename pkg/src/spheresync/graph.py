"""Weighted digraphs, Laplacians and the positive left null vector.

Convention: a_ij > 0 means oscillator i receives the state of oscillator j.
All downstream coupling sums index the adjacency matrix this way.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotStronglyConnected, NumericalFailure
from .linalg import FloatArray


@dataclass(frozen=True)
class Digraph:
    """Weighted digraph on m agents given by a nonnegative adjacency matrix."""

    adjacency: FloatArray

    def __post_init__(self) -> None:
        a = np.asarray(self.adjacency, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if a.shape[0] < 1:
            raise ValueError("graph needs at least one agent")
        if np.any(a < 0):
            raise ValueError("adjacency weights must be nonnegative")
        if np.any(np.diag(a) != 0):
            raise ValueError("adjacency diagonal must be zero (no self-loops)")
        object.__setattr__(self, "adjacency", a)

    @property
    def m(self) -> int:
        return self.adjacency.shape[0]


@dataclass(frozen=True)
class Laplacian:
    """Graph Laplacian: zero row sums, nonpositive off-diagonal."""

    matrix: FloatArray

    def __post_init__(self) -> None:
        l = np.asarray(self.matrix, dtype=np.float64)
        if l.ndim != 2 or l.shape[0] != l.shape[1]:
            raise ValueError(f"Laplacian must be square, got shape {l.shape}")
        scale = np.abs(l).max()
        if np.abs(l.sum(axis=1)).max() > 1e-12 * scale:
            raise ValueError("Laplacian row sums are not zero")
        off = l - np.diag(np.diag(l))
        if off.max(initial=0.0) > 1e-12 * scale:
            raise ValueError("Laplacian off-diagonal entries must be nonpositive")
        object.__setattr__(self, "matrix", l)

    @property
    def m(self) -> int:
        return self.matrix.shape[0]


def laplacian(g: Digraph) -> Laplacian:
    """L = diag(row sums of A) - A."""
    a = g.adjacency
    return Laplacian(np.diag(a.sum(axis=1)) - a)


def strongly_connected_components(g: Digraph) -> list[list[int]]:
    """Tarjan's algorithm; components in reverse topological order.

    Traversal follows the receive convention: a_ij > 0 puts an edge j -> i.
    """
    m = g.m
    successors = [np.nonzero(g.adjacency[:, j] > 0)[0].tolist() for j in range(m)]
    index = [-1] * m
    lowlink = [0] * m
    on_stack = [False] * m
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in range(m):
        if index[root] != -1:
            continue
        work = [(root, iter(successors[root]))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            descended = False
            for w in it:
                if index[w] == -1:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(successors[w])))
                    descended = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
    return components


def is_strongly_connected(g: Digraph) -> bool:
    """True iff every agent can reach every other through directed edges."""
    return len(strongly_connected_components(g)) == 1


def left_null_vector(lap: Laplacian, strongly_connected: bool) -> FloatArray:
    """Positive vector beta with beta^T L = 0, normalized to sum 1.

    Computed as the right-singular vector of L^T for the smallest singular
    value.  Strong connectivity guarantees the null space is 1-dimensional
    and strictly positive; both are checked.
    """
    if not strongly_connected:
        raise NotStronglyConnected(
            "left null vector requires a strongly connected digraph"
        )
    l = lap.matrix
    _, _, vt = np.linalg.svd(l.T)
    beta = vt[-1]
    if beta[0] < 0:
        beta = -beta
    tol = 1e-8 * np.abs(beta).max()
    if beta.min() < -tol:
        raise NumericalFailure("null vector of L^T has entries of mixed sign")
    if beta.min() <= 0:
        raise NumericalFailure("null vector of L^T is not strictly positive")
    residual = np.linalg.norm(beta @ l)
    norm_l = np.linalg.norm(l, 2)
    if norm_l > 0 and residual > 1e-10 * norm_l:
        raise NumericalFailure(
            f"left null vector residual {residual:g} exceeds tolerance"
        )
    return beta / beta.sum()
