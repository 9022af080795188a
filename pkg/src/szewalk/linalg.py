"""Dense numerical kernels: cyclic-Jacobi symmetric eigensolver, unitarity
defect, and Gram-Schmidt orthonormalization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .tolerances import TOL


class NotSymmetric(DomainError):
    pass


class NoConvergence(DomainError):
    pass


@dataclass(frozen=True)
class SymmetricSpectrum:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column l pairs with eigenvalues[l]


def _offdiag_frobenius(a):
    # summed directly over off-diagonal entries: the subtraction form
    # sqrt(sum(a^2) - sum(diag^2)) cancels to rounding noise near
    # convergence and can report 0 while entries ~1e-9 survive
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def symmetric_eig(m) -> SymmetricSpectrum:
    """Diagonalize a real symmetric matrix by cyclic Jacobi rotations.

    Raises NotSymmetric when ||M - M^T||_max exceeds the admission tolerance
    and NoConvergence if the off-diagonal mass has not dropped below
    TOL.jacobi_offdiag after TOL.jacobi_sweeps full sweeps.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {m.shape}")
    if m.size and np.max(np.abs(m - m.T)) > TOL.symmetry:
        raise NotSymmetric("matrix is not symmetric within tolerance")

    n = m.shape[0]
    a = m.copy()
    v = np.eye(n)
    if n < 2:
        return SymmetricSpectrum(np.diag(a).copy(), v)

    for sweep in range(TOL.jacobi_sweeps + 1):
        if _offdiag_frobenius(a) <= TOL.jacobi_offdiag:
            break
        if sweep == TOL.jacobi_sweeps:
            raise NoConvergence(
                f"Jacobi sweeps exhausted with off-diagonal norm "
                f"{_offdiag_frobenius(a):.3e}"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # symmetric Schur 2x2: pick tan(phi) of smaller magnitude
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    order = np.argsort(np.diag(a), kind="stable")
    return SymmetricSpectrum(np.diag(a)[order].copy(), v[:, order].copy())


def unitarity_defect(u) -> float:
    """||U^dag U - I||_max for a square complex matrix."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {u.shape}")
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def orthonormalize(rows, against=None, drop_tol=1e-10):
    """Modified Gram-Schmidt on the rows of `rows`.

    Vectors are orthogonalized against the (assumed orthonormal) rows of
    `against` first; anything whose remainder norm falls below drop_tol is
    discarded.  Two passes keep the result orthonormal to machine precision.
    """
    rows = np.atleast_2d(np.asarray(rows))
    kept: list[np.ndarray] = []
    for row in rows:
        w = row.astype(complex).copy()
        for _ in range(2):
            if against is not None and len(against):
                w -= np.asarray(against).conj() @ w @ np.asarray(against)
            for u in kept:
                w -= np.vdot(u, w) * u
        norm = np.linalg.norm(w)
        if norm > drop_tol:
            kept.append(w / norm)
    if not kept:
        return np.zeros((0, rows.shape[1]), dtype=complex)
    return np.array(kept)
