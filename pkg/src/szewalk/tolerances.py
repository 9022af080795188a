"""Central numeric tolerances.

Every hard-coded tolerance used by the library lives in this one record so
that the test suite and the CLI share identical thresholds.  Values are
absolute unless noted; all matrices handled here are O(1)-scaled
(probabilities and unit vectors), so absolute thresholds are meaningful.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # Markov chains
    row_sum: float = 1e-12            # row-stochasticity of P
    stationary_residual: float = 1e-10  # ||pi P - pi||_inf
    rank: float = 1e-10               # pivot threshold in the nullspace solve
    detailed_balance: float = 1e-10   # |pi_j p_jk - pi_k p_kj|

    # Symmetric eigensolver (cyclic Jacobi)
    symmetry: float = 1e-12           # ||M - M^T||_max admission check
    jacobi_offdiag: float = 1e-12     # off-diagonal Frobenius norm at exit
    jacobi_sweeps: int = 100

    # Quantized-walk construction and spectral basis
    psi_orthonormal: float = 1e-12    # |<psi_a, psi_b> - delta_ab|
    operator_identity: float = 1e-10  # A^T A = I, A A^T = Pi, A^T S A = D
    unitarity: float = 1e-10          # ||U^dag U - I||_max
    eigen_residual: float = 1e-9      # ||U phi - mu phi||
    eigenvalue_classify: float = 1e-10  # |lambda -+ 1| routing to the +-1 branches
    degenerate_guard: float = 1e-12   # defensive check before 1/sqrt(2-2 lambda^2)
    eigenvalue_group: float = 1e-8    # complex distance defining "equal eigenvalue"
    basis_residual: float = 1e-9      # span/membership residuals in H_(psi,S)
    lemma: float = 1e-9               # spectral identity checks

    # Walk on the line
    singular_k: float = 1e-12         # 1 - cos k guard for the eigenvector formulas
    velocity_singular_k: float = 1e-14  # 2 - cos^2 k - cos k guard for h(k, j)
    quad_local: float = 1e-8          # adaptive-Simpson local tolerance
    quad_depth: int = 40              # adaptive-Simpson recursion cap
    cdf_total: float = 1e-6           # |cdf(sup) - 1|

    # Reporting
    probe_candidate: float = 1e-6     # conjecture-probe counterexample threshold


TOL = Tolerances()
