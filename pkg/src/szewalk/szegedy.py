"""Szegedy quantization of a finite Markov chain.

A row-stochastic ``P`` over ``n`` vertices is lifted to the n^2-dimensional
edge space spanned by ``|jk>`` (index ``j*n + k``).  The walk operator is

    U = S (2 Pi - 1),

where ``Pi`` projects onto the span of the row states
``psi_j = sum_k sqrt(p_jk) |jk>`` and ``S`` swaps the two tensor factors.
All asymptotic information lives in the bridge matrix
``d_jk = sqrt(p_jk p_kj)``: its symmetric eigendecomposition yields every
eigenvector of ``U`` on the invariant subspace spanned by ``{psi_j, S psi_j}``,
and from those the exact time-averaged vertex distribution.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .errors import DomainError
from .markov import TransitionMatrix
from .tolerances import TOL


class DegenerateNormalization(DomainError):
    """An eigenvalue slipped within roundoff of +-1 without being routed to
    the +-1 branches; the pair normalization 1/sqrt(2 - 2 lambda^2) would
    blow up.  Cannot occur with the default threshold ordering; defensive."""


class StateOutsideInvariantSubspace(DomainError):
    """The analytic limiting distribution is only defined for initial states
    inside the invariant subspace spanned by the walk's eigenbasis."""


class PreconditionViolation(DomainError):
    """An identity check that requires a symmetric chain was requested for a
    non-symmetric one."""


@dataclass(eq=False)
class EdgeState:
    """Wave function on the edge space: ``amplitudes[j*n + k] = <jk|state>``."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.n * self.n,):
            raise ValueError(
                f"expected {self.n * self.n} amplitudes, got shape {amps.shape}"
            )
        self.amplitudes = amps

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(eq=False)
class QuantizedWalk:
    """Edge-space operators derived from a transition matrix.

    Attributes
    ----------
    P : TransitionMatrix
    A : (n^2, n) real isometry mapping ``|j>`` to ``psi_j`` (column j).
    D : (n, n) bridge matrix ``sqrt(p_jk p_kj)``; symmetric.
    """

    P: TransitionMatrix
    A: np.ndarray = field(repr=False)
    D: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.P.n

    @property
    def psi(self) -> np.ndarray:
        """Row states as rows: ``psi[j] = psi_j`` in edge-space coordinates."""
        return self.A.T

    def swap(self, x: np.ndarray) -> np.ndarray:
        """Apply S: ``|jk> -> |kj>``."""
        n = self.n
        return np.ascontiguousarray(x.reshape(n, n).T).reshape(n * n)

    def apply(self, x: np.ndarray) -> np.ndarray:
        """One walk step, matrix-free: ``U x = S (2 A (A^T x) - x)``, O(n^2)."""
        y = 2.0 * (self.A @ (self.A.T @ x)) - x
        return self.swap(y)

    @cached_property
    def U(self) -> np.ndarray:
        """Dense walk operator; real orthogonal.  Cached; O(n^4) memory, so
        intended for the desk-scale regime (n up to a few dozen)."""
        n = self.n
        reflect = 2.0 * (self.A @ self.A.T) - np.eye(n * n)
        # left-multiplying by S permutes rows: row (j,k) <- row (k,j)
        return np.ascontiguousarray(
            reflect.reshape(n, n, n * n).transpose(1, 0, 2).reshape(n * n, n * n)
        )


@dataclass(eq=False)
class SpectralBasis:
    """Eigenpairs of U on the invariant subspace.

    ``vectors[l]`` is the eigenvector for ``eigenvalues[l]``; ``groups``
    partitions indices into classes of equal eigenvalue (tolerance
    ``TOL.eigenvalue_group``); ``m = len(eigenvalues) <= 2n``.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray = field(repr=False)
    groups: list[list[int]]

    @property
    def m(self) -> int:
        return len(self.eigenvalues)


def quantize(P: TransitionMatrix) -> QuantizedWalk:
    """Build the edge-space operators for a chain.

    Returns a :class:`QuantizedWalk` whose isometry satisfies
    ``A^T A = I``, ``A A^T = Pi`` and ``A^T S A = D``.
    """
    n = P.n
    sqrt_p = np.sqrt(np.asarray(P.entries))
    a = np.zeros((n * n, n))
    for j in range(n):
        a[j * n:(j + 1) * n, j] = sqrt_p[j]
    d = np.sqrt(np.asarray(P.entries) * np.asarray(P.entries).T)
    return QuantizedWalk(P=P, A=a, D=d)


def uniform_initial_state(walk: QuantizedWalk) -> EdgeState:
    """Equal-weight superposition of the row states: ``n^(-1/2) sum_j psi_j``."""
    n = walk.n
    return EdgeState(n, walk.A @ np.full(n, 1.0 / np.sqrt(n)) + 0j)


def spectral_basis(walk: QuantizedWalk) -> SpectralBasis:
    """Eigenpairs of U on the invariant subspace, from the bridge matrix.

    For each eigenpair (lambda, w) of D:

    * ``|lambda - 1| <= tol``  ->  eigenvalue 1 with vector ``A w``;
    * ``|lambda + 1| <= tol``  ->  eigenvalue -1 with vector ``A w``;
    * otherwise the conjugate pair ``exp(+-i arccos lambda)`` with vectors
      ``(A w - exp(+-i arccos lambda) S A w) / sqrt(2 - 2 lambda^2)``.

    Entries are grouped by equal eigenvalue for the limiting-distribution
    sum.  Raises :class:`DegenerateNormalization` if an eigenvalue sits
    within 1e-12 of modulus one yet was not routed to the +-1 branches.
    """
    spec = linalg.symmetric_eig(walk.D)
    one = complex(1.0)
    entries: list[tuple[complex, np.ndarray]] = []
    for lam, w in zip(spec.eigenvalues, spec.eigenvectors.T):
        aw = walk.A @ w
        if abs(lam - 1.0) <= TOL.eigenvalue_classify:
            entries.append((one, aw.astype(complex)))
            continue
        if abs(lam + 1.0) <= TOL.eigenvalue_classify:
            entries.append((-one, aw.astype(complex)))
            continue
        if abs(abs(lam) - 1.0) <= TOL.degenerate_guard:
            raise DegenerateNormalization(
                f"eigenvalue {lam!r} at modulus one escaped +-1 classification"
            )
        clamped = min(1.0, max(-1.0, lam))  # roundoff can push |lambda| past 1
        theta = np.arccos(clamped)
        saw = walk.swap(aw)
        scale = 1.0 / np.sqrt(2.0 - 2.0 * lam * lam)
        for mu in (np.exp(1j * theta), np.exp(-1j * theta)):
            entries.append((mu, (aw - mu * saw) * scale))

    eigenvalues = np.array([mu for mu, _ in entries])
    vectors = np.array([vec for _, vec in entries])

    # group equal eigenvalues (union-find over pairwise complex distance)
    m = len(entries)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(eigenvalues[i] - eigenvalues[j]) <= TOL.eigenvalue_group:
                parent[find(i)] = find(j)
    buckets: dict[int, list[int]] = {}
    for i in range(m):
        buckets.setdefault(find(i), []).append(i)
    groups = sorted(buckets.values(), key=lambda g: g[0])
    return SpectralBasis(eigenvalues=eigenvalues, vectors=vectors, groups=groups)


def evolve(walk: QuantizedWalk, state: EdgeState, t: int) -> EdgeState:
    """Apply ``U^t`` by repeated multiplication (t >= 0)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    x = state.amplitudes.copy()
    if walk.n <= 48:
        u = walk.U  # dense pays off for the small sizes used here
        for _ in range(t):
            x = u @ x
    else:
        for _ in range(t):
            x = walk.apply(x)
    return EdgeState(walk.n, x)


def position_distribution(state: EdgeState) -> np.ndarray:
    """Vertex marginal: ``out[j] = sum_k |<jk|state>|^2``."""
    n = state.n
    p = np.abs(state.amplitudes.reshape(n, n)) ** 2
    return p.sum(axis=1)


def cesaro_average(walk: QuantizedWalk, alpha0: EdgeState, T: int) -> np.ndarray:
    """Time-averaged vertex distribution ``(1/T) sum_{t=1..T} P_t``.

    The sum starts at t = 1, so the initial distribution itself is not
    included.
    """
    if T < 1:
        raise ValueError("T must be positive")
    n = walk.n
    x = alpha0.amplitudes.copy()
    acc = np.zeros(n)
    u = walk.U if n <= 48 else None
    for _ in range(T):
        x = u @ x if u is not None else walk.apply(x)
        acc += (np.abs(x.reshape(n, n)) ** 2).sum(axis=1)
    return acc / T


def limiting_distribution(
    walk: QuantizedWalk, basis: SpectralBasis, alpha0: EdgeState
) -> np.ndarray:
    """Exact asymptotic time-averaged vertex distribution.

    Expands the initial state in the eigenbasis and sums, per vertex, the
    squared amplitudes of its projections onto each equal-eigenvalue group:
    cross terms between distinct eigenvalues average to zero, terms inside a
    group survive.

    Raises
    ------
    StateOutsideInvariantSubspace
        If ``alpha0`` has a component outside the basis span (residual above
        ``TOL.basis_residual``); the expansion presumes membership.
    """
    n = walk.n
    coeffs = basis.vectors.conj() @ alpha0.amplitudes
    residual = float(np.linalg.norm(alpha0.amplitudes - basis.vectors.T @ coeffs))
    if residual > TOL.basis_residual:
        raise StateOutsideInvariantSubspace(
            f"initial state has residual {residual:.3e} outside the basis span"
        )
    out = np.zeros(n)
    for group in basis.groups:
        block = basis.vectors[group].T @ coeffs[group]  # projection onto the group
        out += (np.abs(block.reshape(n, n)) ** 2).sum(axis=1)
    return out


def complement_basis(walk: QuantizedWalk) -> np.ndarray:
    """Orthonormal basis (rows) of the orthogonal complement of
    ``span{psi_j, S psi_j}`` inside the edge space."""
    n = walk.n
    span = np.vstack([walk.A.T, np.array([walk.swap(c) for c in walk.A.T])])
    q = linalg.orthonormalize(span.astype(complex))
    out = linalg.orthonormalize(np.eye(n * n, dtype=complex), against=q)
    return out


@dataclass(frozen=True)
class IdentityCheck:
    """Result of one spectral identity check."""

    index: int
    name: str
    applicable: bool
    max_deviation: float | None
    passed: bool | None
    detail: str


@dataclass(frozen=True)
class LemmaReport:
    checks: tuple[IdentityCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)


def verify_lemma_identities(
    walk: QuantizedWalk, lemmas=None, tol: float | None = None
) -> LemmaReport:
    """Check the three spectral identities behind the limiting distribution.

    1. *overlap*: for every eigenpair (lambda, w) of D,
       ``<A^T S alpha0, w> = lambda * sum_j w_j / sqrt(n)``.
    2. *zero sum* (symmetric P only): eigenvectors with lambda != 1 satisfy
       ``sum_j w_j = 0``.
    3. *flat orthogonality* (symmetric P only): eigenvalue-1 eigenvectors u
       orthogonal to the flat vector satisfy ``<alpha0, A u> = 0``.

    ``lemmas`` selects a subset (default: all applicable).  Requesting 2 or
    3 explicitly on a non-symmetric chain raises
    :class:`PreconditionViolation`; with the default selection they are
    reported as skipped instead.
    """
    tol = TOL.lemma if tol is None else tol
    explicit = lemmas is not None
    wanted = set(lemmas) if explicit else {1, 2, 3}
    if not wanted <= {1, 2, 3}:
        raise ValueError(f"unknown identity selection {sorted(wanted)}")

    n = walk.n
    p = np.asarray(walk.P.entries)
    symmetric = bool(np.max(np.abs(p - p.T)) <= TOL.symmetry)
    if explicit and not symmetric and wanted & {2, 3}:
        raise PreconditionViolation(
            "identities 2 and 3 require a symmetric transition matrix"
        )

    spec = linalg.symmetric_eig(walk.D)
    alpha0 = uniform_initial_state(walk)
    s_alpha0 = walk.swap(alpha0.amplitudes)
    lhs_all = walk.A.T @ s_alpha0  # A^T S alpha0, length n
    checks: list[IdentityCheck] = []

    if 1 in wanted:
        dev = 0.0
        for lam, w in zip(spec.eigenvalues, spec.eigenvectors.T):
            lhs = np.vdot(w, lhs_all)
            rhs = lam * w.sum() / np.sqrt(n)
            dev = max(dev, abs(lhs - rhs))
        checks.append(
            IdentityCheck(1, "overlap", True, dev, dev <= tol,
                          f"{len(spec.eigenvalues)} eigenpairs")
        )

    if 2 in wanted:
        if symmetric:
            devs = [
                abs(w.sum())
                for lam, w in zip(spec.eigenvalues, spec.eigenvectors.T)
                if abs(lam - 1.0) > TOL.eigenvalue_classify
            ]
            dev = max(devs, default=0.0)
            checks.append(
                IdentityCheck(2, "zero sum", True, dev, dev <= tol,
                              f"{len(devs)} eigenpairs with eigenvalue != 1")
            )
        else:
            checks.append(
                IdentityCheck(2, "zero sum", False, None, None,
                              "skipped: P not symmetric")
            )

    if 3 in wanted:
        if symmetric:
            flat = np.full(n, 1.0 / np.sqrt(n))
            ones_eigvecs = [
                w for lam, w in zip(spec.eigenvalues, spec.eigenvectors.T)
                if abs(lam - 1.0) <= TOL.eigenvalue_classify
            ]
            perp = linalg.orthonormalize(
                np.array(ones_eigvecs), against=flat[None, :].astype(complex)
            ) if ones_eigvecs else np.zeros((0, n))
            dev = 0.0
            for u in perp:
                dev = max(dev, abs(np.vdot(alpha0.amplitudes, walk.A @ u)))
            checks.append(
                IdentityCheck(3, "flat orthogonality", True, dev, dev <= tol,
                              f"{len(perp)} eigenvalue-1 vectors orthogonal to flat")
            )
        else:
            checks.append(
                IdentityCheck(3, "flat orthogonality", False, None, None,
                              "skipped: P not symmetric")
            )

    return LemmaReport(tuple(checks))


def distribution_csv(probabilities) -> str:
    """Vertex-distribution CSV: header ``vertex,probability``, 1-indexed
    vertices, 12 significant digits."""
    lines = ["vertex,probability"]
    for j, p in enumerate(np.asarray(probabilities), start=1):
        lines.append(f"{j},{p:.12g}")
    return "\n".join(lines) + "\n"


def spectral_report(basis: SpectralBasis, alpha0: EdgeState) -> str:
    """Structured-text spectral report: one JSON list of
    ``{eigenvalue, group_id, overlap_with_alpha0}`` entries."""
    group_of = {}
    for gid, group in enumerate(basis.groups):
        for l in group:
            group_of[l] = gid
    items = []
    for l, mu in enumerate(basis.eigenvalues):
        overlap = complex(np.vdot(basis.vectors[l], alpha0.amplitudes))
        items.append({
            "eigenvalue": [float(mu.real), float(mu.imag)],
            "group_id": group_of[l],
            "overlap_with_alpha0": [float(overlap.real), float(overlap.imag)],
        })
    return json.dumps(items, indent=2) + "\n"
