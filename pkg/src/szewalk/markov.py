"""Finite-state Markov chains.

Construction from edge lists or explicit matrices, structural
classification (irreducibility, period, ergodicity, reversibility), and
stationary distributions via a dense nullspace solve.  External file
formats are 1-indexed to match the usual way small chains are drawn;
arrays are 0-indexed internally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import DomainError, ParseError
from .tolerances import TOL


class ZeroOutDegree(DomainError):
    """A vertex with no outgoing edge has no transition row."""

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex + 1} has out-degree 0")


class NonUniqueStationary(DomainError):
    """The eigenvalue-1 left-eigenspace has dimension greater than one."""


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic matrix ``entries[j, k] = p_jk`` over ``n`` vertices.

    Rows must sum to 1 within ``TOL.row_sum`` and entries must lie in
    [0, 1]; construction fails otherwise.
    """

    n: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.shape != (self.n, self.n):
            raise ValueError(f"expected a {self.n}x{self.n} matrix, got {entries.shape}")
        if np.any(entries < -TOL.row_sum) or np.any(entries > 1 + TOL.row_sum):
            raise ValueError("transition probabilities must lie in [0, 1]")
        row_sums = entries.sum(axis=1)
        if np.max(np.abs(row_sums - 1.0)) > TOL.row_sum:
            worst = int(np.argmax(np.abs(row_sums - 1.0)))
            raise ValueError(
                f"row {worst + 1} sums to {row_sums[worst]!r}, expected 1"
            )
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def support(self) -> np.ndarray:
        """Boolean adjacency of nonzero transitions."""
        return self.entries > 0.0


@dataclass(frozen=True)
class ChainProfile:
    """Structural classification of a chain.

    ``reversible`` is None when no unique stationary distribution exists to
    test detailed balance against; ``stationary`` is None in the same case.
    """

    irreducible: bool
    period: int
    aperiodic: bool
    ergodic: bool
    reversible: bool | None
    stationary: np.ndarray | None


def from_adjacency(edges, n: int) -> TransitionMatrix:
    """Build the chain of a directed graph: each vertex moves to a uniformly
    random out-neighbour.

    Parameters
    ----------
    edges : iterable of (j, k)
        Directed edges, 0-indexed.  Duplicates collapse.
    n : int
        Vertex count.

    Raises
    ------
    ZeroOutDegree
        If some vertex has no outgoing edge (its row would be 0/0).
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    adj = np.zeros((n, n), dtype=float)
    for j, k in edges:
        if not (0 <= j < n and 0 <= k < n):
            raise ValueError(f"edge ({j}, {k}) outside vertex range [0, {n})")
        adj[j, k] = 1.0
    out_degree = adj.sum(axis=1)
    for j in range(n):
        if out_degree[j] == 0:
            raise ZeroOutDegree(j)
    return TransitionMatrix(n, adj / out_degree[:, None])


def _nullspace_of_transpose_minus_identity(p_entries: np.ndarray):
    """Nullspace basis of (P^T - I) by Gaussian elimination with partial
    pivoting; pivots below TOL.rank are treated as zero."""
    n = p_entries.shape[0]
    m = p_entries.T - np.eye(n)
    pivot_cols: list[int] = []
    row = 0
    for col in range(n):
        pivot = row + int(np.argmax(np.abs(m[row:, col]))) if row < n else None
        if pivot is None or np.abs(m[pivot, col]) <= TOL.rank:
            continue
        m[[row, pivot]] = m[[pivot, row]]
        m[row] = m[row] / m[row, col]
        others = [r for r in range(n) if r != row]
        m[others] -= np.outer(m[others, col], m[row])
        pivot_cols.append(col)
        row += 1
    free_cols = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        x = np.zeros(n)
        x[free] = 1.0
        for r, col in enumerate(pivot_cols):
            x[col] = -m[r, free]
        basis.append(x)
    return basis


def stationary_distribution(p: TransitionMatrix) -> np.ndarray:
    """Unique probability vector with ``pi P = pi``.

    Solves (P^T - I) x = 0 by dense elimination; uniqueness is decided by
    the dimension of the nullspace, not by irreducibility (a reducible
    chain with a single recurrent class still has a unique pi).

    Raises
    ------
    NonUniqueStationary
        If the eigenvalue-1 left-eigenspace has dimension != 1.
    """
    basis = _nullspace_of_transpose_minus_identity(np.asarray(p.entries))
    if len(basis) != 1:
        raise NonUniqueStationary(
            f"stationary space has dimension {len(basis)}"
        )
    pi = basis[0]
    total = pi.sum()
    if abs(total) < TOL.rank:
        raise NonUniqueStationary("stationary vector has zero total mass")
    pi = pi / total
    pi[np.abs(pi) < 1e-14] = 0.0  # transient states come out as roundoff dust
    return pi / pi.sum()


def _reachable(support: np.ndarray, start: int) -> np.ndarray:
    seen = np.zeros(support.shape[0], dtype=bool)
    seen[start] = True
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.nonzero(support[u])[0]:
                if not seen[v]:
                    seen[v] = True
                    nxt.append(int(v))
        frontier = nxt
    return seen


def _recurrent_class_from(support: np.ndarray, start: int) -> np.ndarray:
    """Vertices of the first closed communicating class reachable from
    ``start`` (smallest member index breaks ties)."""
    n = support.shape[0]
    reach = [_reachable(support, v) for v in range(n)]
    for v in range(n):
        if not reach[start][v]:
            continue
        members = np.array([reach[v][u] and reach[u][v] for u in range(n)])
        closed = all(
            reach[v][u] and reach[u][v]
            for u in np.nonzero(reach[v])[0]
        )
        if closed:
            return members
    raise AssertionError("a finite chain always has a reachable closed class")


def _period_of_class(support: np.ndarray, members: np.ndarray) -> int:
    """gcd of directed cycle lengths via BFS level differences."""
    start = int(np.nonzero(members)[0][0])
    level = {start: 0}
    frontier = [start]
    g = 0
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.nonzero(support[u])[0]:
                v = int(v)
                if not members[v]:
                    continue
                if v in level:
                    g = gcd(g, abs(level[u] + 1 - level[v]))
                else:
                    level[v] = level[u] + 1
                    nxt.append(v)
        frontier = nxt
    return g if g > 0 else 1


def classify(p: TransitionMatrix) -> ChainProfile:
    """Structural profile of the chain.

    The period is computed on the recurrent class reachable from vertex 0
    (for an irreducible chain, the whole graph).  Reversibility is detailed
    balance against the unique stationary distribution; when that
    distribution is not unique both fields are reported as None.
    """
    support = p.support
    n = p.n
    forward = _reachable(support, 0)
    backward = _reachable(support.T, 0)
    irreducible = bool(forward.all() and backward.all())

    members = _recurrent_class_from(support, 0)
    period = _period_of_class(support, members)
    aperiodic = period == 1
    ergodic = irreducible and aperiodic

    try:
        pi = stationary_distribution(p)
    except NonUniqueStationary:
        pi = None
    if pi is None:
        reversible = None
    else:
        flux = pi[:, None] * p.entries
        reversible = bool(np.max(np.abs(flux - flux.T)) <= TOL.detailed_balance)
    return ChainProfile(
        irreducible=irreducible,
        period=period,
        aperiodic=aperiodic,
        ergodic=ergodic,
        reversible=reversible,
        stationary=pi,
    )


def parse_edge_file(text: str) -> TransitionMatrix:
    """Parse the edge-list format: a header ``n <count>`` followed by one
    1-indexed ``j k`` pair per line.  ``#`` starts a comment.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise ParseError("expected header 'n <count>'", line=lineno)
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(f"bad vertex count {fields[1]!r}", line=lineno) from None
            if n < 1:
                raise ParseError("vertex count must be positive", line=lineno)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'j k', got {line!r}", line=lineno)
        try:
            j, k = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer edge {line!r}", line=lineno) from None
        if not (1 <= j <= n and 1 <= k <= n):
            raise ParseError(f"edge ({j}, {k}) outside 1..{n}", line=lineno)
        edges.append((j - 1, k - 1))
    if n is None:
        raise ParseError("empty input: missing 'n <count>' header")
    return from_adjacency(edges, n)  # ZeroOutDegree propagates as a domain error


def parse_matrix_file(text: str) -> TransitionMatrix:
    """Parse the explicit-matrix format: a JSON object with integer ``n``
    and ``rows``, a list of n rows of n non-negative reals."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(obj, dict) or "n" not in obj or "rows" not in obj:
        raise ParseError("expected an object with fields 'n' and 'rows'")
    n = obj["n"]
    rows = obj["rows"]
    if not isinstance(n, int):
        raise ParseError("'n' must be an integer")
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"'rows' must be a list of {n} rows")
    for i, row in enumerate(rows, start=1):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} must be a list of {n} numbers")
        if not all(isinstance(x, (int, float)) for x in row):
            raise ParseError(f"row {i} contains a non-numeric entry")
    # value-level problems (bad row sums, negative entries) are domain errors
    return TransitionMatrix(n, np.array(rows, dtype=float))
