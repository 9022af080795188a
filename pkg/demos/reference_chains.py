# Four small reference chains
#
# Walks through the quantization pipeline on the four 2- and 3-state
# chains used throughout the test suite: classify each chain, quantize
# it, compute the exact limiting vertex distribution from the spectral
# basis, and confirm that a long Cesaro time-average lands on the same
# numbers.  The punch line is that the limiting distribution of the
# quantum walk generally differs from the stationary distribution of
# the classical chain it was built from.

import numpy as np

from szewalk import (
    EdgeState,
    TransitionMatrix,
    cesaro_average,
    classify,
    limiting_distribution,
    quantize,
    spectral_basis,
)

CHAINS = {
    "two-state, one vertex absorbing": TransitionMatrix(
        2, [[1.0, 0.0], [1.0, 0.0]]
    ),
    "two-state lazy/bounce": TransitionMatrix(2, [[0.5, 0.5], [1.0, 0.0]]),
    "three-state one-way detour": TransitionMatrix(
        3, [[0.0, 0.5, 0.5], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
    ),
    "three-state birth-death (periodic)": TransitionMatrix(
        3, [[0.0, 1.0, 0.0], [0.5, 0.0, 0.5], [0.0, 1.0, 0.0]]
    ),
}

T = 20000  # Cesaro horizon; convergence is O(1/T) so this gives ~1e-4


def describe(profile):
    bits = []
    bits.append("irreducible" if profile.irreducible else "reducible")
    bits.append("aperiodic" if profile.aperiodic else f"period {profile.period}")
    if profile.reversible is None:
        bits.append("reversibility undefined (no unique stationary)")
    elif profile.reversible:
        bits.append("reversible")
    else:
        bits.append("not reversible")
    return ", ".join(bits)


for name, tm in CHAINS.items():
    print(f"=== {name} ===")
    profile = classify(tm)
    print(f"  chain: {describe(profile)}")
    if profile.stationary is not None:
        print(f"  stationary pi        : {np.round(profile.stationary, 6)}")

    walk = quantize(tm)
    basis = spectral_basis(walk)
    print(f"  invariant subspace dim: {basis.m} of {tm.n ** 2} edge dims")

    # launch from the standard superposition of the edge states
    alpha0 = EdgeState(
        tm.n, walk.psi.sum(axis=0) / np.sqrt(tm.n)
    )
    exact = limiting_distribution(walk, basis, alpha0)
    avg = cesaro_average(walk, alpha0, T)
    print(f"  limiting (analytic)  : {np.round(exact, 6)}")
    print(f"  Cesaro average T={T}: {np.round(avg, 6)}")
    print(f"  max |analytic - Cesaro| = {np.abs(exact - avg).max():.2e}")
    if profile.stationary is not None:
        gap = np.abs(exact - profile.stationary).max()
        print(f"  max |limiting - pi|     = {gap:.3f}"
              + ("  <- walk remembers more than the chain" if gap > 1e-6 else ""))
    print()
