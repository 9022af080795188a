# Spectral anatomy of a quantized walk
#
# The walk operator acts nontrivially only on a small invariant subspace
# of the n^2-dimensional edge space.  This script builds that subspace
# for one chain, prints the eigenvalue groups, checks the operator
# identities numerically, and shows the orthogonal complement is just a
# sign flip of the swap.

import numpy as np

from szewalk import (
    TransitionMatrix,
    quantize,
    spectral_basis,
    uniform_initial_state,
    verify_lemma_identities,
)
from szewalk.szegedy import complement_basis

tm = TransitionMatrix(3, [[0.0, 0.5, 0.5], [1.0, 0.0, 0.0], [0.5, 0.5, 0.0]])
walk = quantize(tm)
basis = spectral_basis(walk)

print(f"edge space dimension : {tm.n ** 2}")
print(f"invariant subspace   : {basis.m}")
print()

print("eigenvalue groups (walk operator restricted to the subspace):")
for gid, group in enumerate(basis.groups):
    lam = basis.eigenvalues[group[0]]
    theta = np.angle(lam)
    print(f"  group {gid}: lambda = {lam:.6f}  (theta = {theta:+.6f} rad,"
          f" multiplicity {len(group)})")
print()

# eigenvector quality: U v = lambda v for every basis vector
U = walk.U
worst = 0.0
for lam, v in zip(basis.eigenvalues, basis.vectors):
    worst = max(worst, np.abs(U @ v - lam * v).max())
print(f"worst eigen-residual |Uv - lambda v| = {worst:.2e}")

# the standard launch state lies inside the subspace
alpha0 = uniform_initial_state(walk)
coeffs = basis.vectors.conj() @ alpha0.amplitudes
print(f"launch-state overlap total |<v|alpha0>|^2 = {np.abs(coeffs**2).sum():.12f}")
print()

# operator identities, reported the same way the CLI does
report = verify_lemma_identities(walk)
for check in report.checks:
    status = "n/a " if not check.applicable else ("PASS" if check.passed else "FAIL")
    dev = "" if check.max_deviation is None else f"  dev {check.max_deviation:.2e}"
    print(f"  identity {check.index}: {status}  {check.name}{dev}")
print()

# on the orthogonal complement the walk is -swap
comp = complement_basis(walk)
if comp.shape[0]:
    block = comp.conj() @ U @ comp.T
    swap_block = comp.conj() @ np.array([walk.swap(row) for row in comp]).T
    print(f"complement dimension {comp.shape[0]};"
          f" max |U + swap| on it = {np.abs(block + swap_block).max():.2e}")
else:
    print("complement is empty for this chain")
