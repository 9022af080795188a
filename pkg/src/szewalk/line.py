"""Quantum walk induced by the lazy random walk on the integer line.

Real-space evolution uses the three local scattering rules directly on a
truncated lattice (exact light cone, no aliasing).  Momentum space supplies
the dispersion analysis: a 3x3 one-step operator ``U(k)``, its eigensystem,
and the group velocities whose range fixes the support of the closed-form
weak limit.  The weak limit itself is a point mass of weight ``c`` at the
origin plus the continuous density

    (a0 + a1 y + a2 y^2) / (2 pi (1 - y^2) sqrt(2 - 3 y^2))

on (-sqrt(6)/3, sqrt(6)/3), with all four coefficients determined by the
initial amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .tolerances import TOL

SUPPORT_RADIUS = math.sqrt(6.0) / 3.0


class LightConeOverflow(DomainError):
    """The walker support would touch the truncation boundary."""


class SingularK(DomainError):
    """Momentum too close to the k = 0 singularity of the eigenvector
    formulas (factor 1/(1 - cos k))."""


class QuadratureFailure(DomainError):
    """Adaptive refinement exceeded the depth cap before local tolerance."""


@dataclass(frozen=True)
class LineInitialState:
    """Amplitudes of ``|0>|-1>``, ``|0>|0>``, ``|0>|1>`` at t = 0."""

    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self):
        total = abs(self.alpha) ** 2 + abs(self.beta) ** 2 + abs(self.gamma) ** 2
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"amplitudes have squared norm {total!r}, expected 1")

    @classmethod
    def normalized(cls, alpha, beta, gamma) -> "LineInitialState":
        """Build from unnormalized amplitudes (rejecting the zero vector)."""
        norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2 + abs(gamma) ** 2)
        if norm == 0.0:
            raise ValueError("cannot normalize zero amplitudes")
        return cls(alpha / norm, beta / norm, gamma / norm)


@dataclass(eq=False)
class LineState:
    """Truncated-lattice wave function.

    ``amps[L + x, c]`` is the amplitude of channel ``c`` at site ``x`` for
    ``x`` in ``-L..L``; channels are ordered ``[(x, x-1), (x, x), (x, x+1)]``.
    """

    L: int
    t: int
    amps: np.ndarray

    @classmethod
    def initial(cls, init: LineInitialState, L: int) -> "LineState":
        if L < 2:
            raise ValueError("truncation radius must be at least 2")
        amps = np.zeros((2 * L + 1, 3), dtype=complex)
        amps[L] = (init.alpha, init.beta, init.gamma)
        return cls(L=L, t=0, amps=amps)

    @property
    def positions(self) -> np.ndarray:
        return np.arange(-self.L, self.L + 1)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(eq=False)
class LinePositionDistribution:
    """Probabilities ``p[i]`` at sites ``x[i]`` (a full −L..L window)."""

    x: np.ndarray
    p: np.ndarray
    t: int


def step(state: LineState) -> LineState:
    """One walk step via the local rules, gather form.

    Each site drains into its neighbours with coefficients -1/3 and 2/3;
    reading the rules backwards, channel (x, x-1) is fed entirely by site
    x-1, channel (x, x) by site x itself, and channel (x, x+1) by site x+1.
    Amplitude moves at most one site per step, so the update is exact as
    long as the support stays off the boundary.
    """
    if state.t + 1 > state.L - 1:
        raise LightConeOverflow(
            f"step to t={state.t + 1} would reach the boundary at L={state.L}"
        )
    a = state.amps
    new = np.zeros_like(a)
    new[1:, 0] = (2.0 * a[:-1, 0] + 2.0 * a[:-1, 1] - a[:-1, 2]) / 3.0
    new[:, 1] = (2.0 * a[:, 0] - a[:, 1] + 2.0 * a[:, 2]) / 3.0
    new[:-1, 2] = (-a[1:, 0] + 2.0 * a[1:, 1] + 2.0 * a[1:, 2]) / 3.0
    return LineState(L=state.L, t=state.t + 1, amps=new)


def simulate(init: LineInitialState, t: int, L: int | None = None) -> LinePositionDistribution:
    """Evolve ``t`` steps and return the position distribution
    ``p_t(x) = sum_c |amp(x, c)|^2``.

    ``L`` defaults to ``t + 2``, the smallest radius with a one-site safety
    margin inside the light cone.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if L is None:
        L = t + 2
    if L < t + 2:
        raise ValueError(f"truncation radius {L} too small for t={t}; need >= t + 2")
    state = LineState.initial(init, L)
    for _ in range(t):
        state = step(state)
    p = np.sum(np.abs(state.amps) ** 2, axis=1)
    return LinePositionDistribution(x=state.positions, p=p, t=t)


# --- momentum space ---------------------------------------------------------

_GROVER = np.array([[-1.0, 2.0, 2.0], [2.0, -1.0, 2.0], [2.0, 2.0, -1.0]]) / 3.0


def u_of_k(k: float) -> np.ndarray:
    """One-step operator at momentum k: channel-shift phases times the
    Grover-style scattering matrix."""
    shift = np.array(
        [
            [0.0, 0.0, np.exp(1j * k)],
            [0.0, 1.0, 0.0],
            [np.exp(-1j * k), 0.0, 0.0],
        ],
        dtype=complex,
    )
    return shift @ _GROVER


@dataclass(eq=False)
class MomentumPoint:
    """Eigensystem of ``U(k)``: columns of ``eigenvectors`` pair with
    ``eigenvalues``; ``velocities[j]`` is the group velocity of branch j."""

    k: float
    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    velocities: np.ndarray


def _one_minus_cos(k: float) -> float:
    # stable form of 1 - cos k; the naive difference loses ~half the digits
    # near k = 0 and the eigenvector formulas divide by this quantity
    s = math.sin(0.5 * k)
    return 2.0 * s * s


def eigen_line(k: float) -> MomentumPoint:
    """Closed-form eigensystem of ``U(k)``.

    The flat branch has eigenvalue -1 for every k; the two moving branches
    carry ``1/3 + (2/3) cos k +- (2/3) i sqrt((1 - cos k)(2 + cos k))``.
    Eigenvector components contain ``1/(1 - cos k)``, so momenta inside the
    guard band around k = 0 are rejected.
    """
    omc = _one_minus_cos(k)
    if omc <= TOL.singular_k:
        raise SingularK(f"k={k!r} is inside the 1 - cos k guard band")
    c = math.cos(k)
    s = math.sin(k)
    root = math.sqrt(omc * (2.0 + c))  # sqrt(2 - cos^2 k - cos k), factored
    lam1 = -1.0 + 0.0j
    lam2 = 1.0 / 3.0 + (2.0 / 3.0) * c + (2.0 / 3.0) * root * 1j
    lam3 = lam2.conjugate()

    phase = complex(math.cos(k), math.sin(k))
    v1 = np.array([phase, -1.0 - phase, 1.0]) / math.sqrt(4.0 + 2.0 * c)

    s_over = s / omc
    c2 = (
        12.0 + 4.0 * math.cos(2.0 * k) + 12.0 * c - 8.0 * s * root
        + (16.0 * s * s + 24.0 * s * root) / omc
    )
    c3 = (
        12.0 + 4.0 * math.cos(2.0 * k) + 12.0 * c + 8.0 * s * root
        + (16.0 * s * s - 24.0 * s * root) / omc
    )
    v2 = np.array(
        [
            phase * (-3.0 - 2.0 * c - 2.0 * root * s_over),
            (-s - root) * (s_over + 1j),
            1.0,
        ]
    ) / math.sqrt(c2)
    v3 = np.array(
        [
            phase * (-3.0 - 2.0 * c + 2.0 * root * s_over),
            (-s + root) * (s_over + 1j),
            1.0,
        ]
    ) / math.sqrt(c3)

    h2 = group_velocity(k, 2)
    return MomentumPoint(
        k=k,
        matrix=u_of_k(k),
        eigenvalues=np.array([lam1, lam2, lam3]),
        eigenvectors=np.column_stack([v1, v2, v3]),
        velocities=np.array([0.0, h2, -h2]),
    )


def group_velocity(k: float, j: int) -> float:
    """Group velocity of branch j at momentum k.

    Branch 1 is flat.  Branch 2 carries
    ``sin k / sqrt(2 - cos^2 k - cos k)``; branch 3 is its negative.
    Evaluated as ``sqrt(2) cos(k/2) / sqrt(2 + cos k)`` (identical for
    k in (0, 2 pi)), which stays fully accurate as k -> 0 where the naive
    quotient loses the supremum.
    """
    if j == 1:
        return 0.0
    if j not in (2, 3):
        raise ValueError(f"branch must be 1, 2 or 3, got {j}")
    kk = k % (2.0 * math.pi)
    omc = _one_minus_cos(kk)
    c = math.cos(kk)
    if omc * (2.0 + c) <= TOL.velocity_singular_k:
        raise SingularK(f"group velocity undefined this close to k=0 (k={k!r})")
    h = math.sqrt(2.0) * math.cos(0.5 * kk) / math.sqrt(2.0 + c)
    return h if j == 2 else -h


def max_group_speed(j: int = 2, grid_points: int = 1024) -> float:
    """max_k |h(k, j)| by coarse grid plus golden-section refinement.

    The maximizer sits at the k -> 0 edge of the admissible band, so the
    refinement is clamped to the guard boundary.
    """
    if j == 1:
        return 0.0
    k_lo = 1e-7  # just above the velocity guard band
    k_hi = 2.0 * math.pi - k_lo
    ks = np.linspace(k_lo, k_hi, grid_points)
    values = [abs(group_velocity(float(k), j)) for k in ks]
    i = int(np.argmax(values))
    a = ks[max(0, i - 1)]
    b = ks[min(grid_points - 1, i + 1)]

    phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - phi * (b - a)
    x2 = a + phi * (b - a)
    f1 = abs(group_velocity(float(x1), j))
    f2 = abs(group_velocity(float(x2), j))
    for _ in range(120):
        if b - a < 1e-13:
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = abs(group_velocity(float(x1), j))
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = abs(group_velocity(float(x2), j))
    best = max(values[i], f1, f2)
    return float(best)


# --- weak limit --------------------------------------------------------------


@dataclass(frozen=True)
class WeakLimitDensity:
    """Point mass ``c`` at 0 plus the continuous part
    ``(a0 + a1 y + a2 y^2) / (2 pi (1 - y^2) sqrt(2 - 3 y^2))`` on the open
    support interval."""

    c: float
    a0: float
    a1: float
    a2: float

    @property
    def support(self) -> tuple[float, float]:
        return (-SUPPORT_RADIUS, SUPPORT_RADIUS)


def density_coefficients(init: LineInitialState) -> WeakLimitDensity:
    """Closed-form coefficients of the weak limit for a given launch state.

    All four are fixed quadratic forms in the amplitudes; the total-mass
    identity ``c + integral of the continuous part = 1`` is the built-in
    transcription check (exercised by the tests).
    """
    alpha, beta, gamma = init.alpha, init.beta, init.gamma
    s3 = math.sqrt(3.0)
    rab = (alpha * beta.conjugate()).real
    rag = (alpha * gamma.conjugate()).real
    rbg = (beta * gamma.conjugate()).real
    b2 = abs(beta) ** 2
    c = (
        s3 / 6.0
        + (s3 - 3.0) / 3.0 * rab
        + (3.0 - 2.0 * s3) / 3.0 * rag
        + (s3 - 3.0) / 3.0 * rbg
        + (2.0 - s3) / 2.0 * b2
    )
    a0 = 1.0 + b2 + 2.0 * rag
    a1 = 2.0 * abs(alpha) ** 2 - 2.0 * abs(gamma) ** 2 + 2.0 * rab - 2.0 * rbg
    a2 = 1.0 - 3.0 * b2 + 2.0 * rab - 4.0 * rag + 2.0 * rbg
    return WeakLimitDensity(c=c, a0=a0, a1=a1, a2=a2)


def density(d: WeakLimitDensity, y: float) -> float:
    """Continuous part of the weak-limit density at y.

    Returns 0 outside the open support interval and a flagged infinity
    where ``2 - 3 y^2`` falls below 1e-12 (the integrable edge
    singularity); the point mass is never folded in.
    """
    if abs(y) >= SUPPORT_RADIUS:
        return 0.0
    denom_sq = 2.0 - 3.0 * y * y
    if denom_sq <= 1e-12:
        return math.inf
    num = d.a0 + y * (d.a1 + y * d.a2)
    return num / (2.0 * math.pi * (1.0 - y * y) * math.sqrt(denom_sq))


def _theta_integrand(d: WeakLimitDensity):
    # substitution y = SUPPORT_RADIUS * sin(theta) absorbs the edge
    # singularity: sqrt(2 - 3 y^2) = sqrt(2) cos(theta) cancels dy
    scale = SUPPORT_RADIUS / (2.0 * math.sqrt(2.0) * math.pi)

    def g(theta: float) -> float:
        y = SUPPORT_RADIUS * math.sin(theta)
        return scale * (d.a0 + y * (d.a1 + y * d.a2)) / (1.0 - y * y)

    return g


_FORCED_SPLITS = 5  # always refine this deep before trusting the error estimate


def _adaptive_simpson(f, a: float, b: float, tol: float, depth: int) -> float:
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_branch(f, a, fa, b, fb, m, fm, whole, tol, depth, _FORCED_SPLITS)


def _simpson_branch(f, a, fa, b, fb, m, fm, whole, tol, depth, force):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    # the delta test alone is unsafe: an even integrand on a symmetric
    # interval can make the halves agree exactly with a wrong whole, so the
    # first few splits are unconditional
    if force <= 0 and abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureFailure(
            f"adaptive refinement exceeded depth cap on [{a:.6g}, {b:.6g}]"
        )
    return _simpson_branch(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, force - 1) + \
        _simpson_branch(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, force - 1)


def _theta_of(y: float) -> float:
    clipped = min(1.0, max(-1.0, y / SUPPORT_RADIUS))
    return math.asin(clipped)


def _continuous_cdf(d: WeakLimitDensity, y: float) -> float:
    theta = _theta_of(y)
    if theta <= -0.5 * math.pi:
        return 0.0
    return _adaptive_simpson(
        _theta_integrand(d), -0.5 * math.pi, theta, TOL.quad_local, TOL.quad_depth
    )


def cdf(d: WeakLimitDensity, y: float) -> float:
    """Analytic CDF ``c H(y) + integral of the continuous part up to y``
    with ``H`` the right-continuous Heaviside step (H(0) = 1)."""
    atom = d.c if y >= 0.0 else 0.0
    return _continuous_cdf(d, y) + atom


def _continuous_cdf_grid(d: WeakLimitDensity, ys: np.ndarray) -> np.ndarray:
    """Continuous CDF part at many points, integrating each consecutive
    segment once instead of restarting from the left edge."""
    ys = np.asarray(ys, dtype=float)
    thetas = np.array([_theta_of(float(y)) for y in ys])
    order = np.argsort(thetas, kind="stable")
    g = _theta_integrand(d)
    out = np.empty(len(ys))
    acc = 0.0
    prev = -0.5 * math.pi
    for idx in order:
        theta = thetas[idx]
        if theta > prev + 1e-15:
            acc += _adaptive_simpson(g, prev, theta, TOL.quad_local, TOL.quad_depth)
            prev = theta
        out[idx] = acc
    return out


def cdf_grid(d: WeakLimitDensity, ys) -> np.ndarray:
    """Analytic CDF at many points (vector version of :func:`cdf`)."""
    ys = np.asarray(ys, dtype=float)
    return _continuous_cdf_grid(d, ys) + np.where(ys >= 0.0, d.c, 0.0)


@dataclass(eq=False)
class EmpiricalCDF:
    """Step function ``F_t(y) = sum_{x <= y t} p_t(x)`` over ``y = x/t``."""

    ys: np.ndarray
    values: np.ndarray  # right-continuous values at the jump points

    def __call__(self, y: float) -> float:
        i = int(np.searchsorted(self.ys, y, side="right")) - 1
        return float(self.values[i]) if i >= 0 else 0.0


def empirical_rescaled_cdf(dist: LinePositionDistribution, t: int) -> EmpiricalCDF:
    """Empirical CDF of the rescaled position ``X_t / t``.

    For t = 0 the rescaling degenerates; the distribution is a point mass,
    so jumps are placed at x directly.
    """
    xs = np.asarray(dist.x, dtype=float)
    ys = xs / t if t > 0 else xs
    return EmpiricalCDF(ys=ys, values=np.cumsum(dist.p))


def kolmogorov_distance(
    dist: LinePositionDistribution, t: int, d: WeakLimitDensity
) -> float:
    """Exact sup-distance between the empirical rescaled CDF and the
    analytic CDF.

    Both functions are monotone and piecewise constant/continuous, so the
    supremum over all of R is attained at a one-sided limit of some jump
    point; evaluating left and right values at every empirical jump (the
    atom's jump at y = 0 coincides with the x = 0 jump) is exhaustive.
    """
    emp = empirical_rescaled_cdf(dist, t)
    cont = _continuous_cdf_grid(d, emp.ys)
    analytic_right = cont + np.where(emp.ys >= 0.0, d.c, 0.0)
    analytic_left = cont + np.where(emp.ys > 0.0, d.c, 0.0)
    emp_right = emp.values
    emp_left = emp.values - np.asarray(dist.p)
    return float(
        max(
            np.max(np.abs(emp_right - analytic_right)),
            np.max(np.abs(emp_left - analytic_left)),
        )
    )


def moment(dist: LinePositionDistribution, t: int, r: int) -> float:
    """r-th moment of the rescaled position: ``sum_x (x/t)^r p_t(x)``."""
    if t <= 0:
        raise ValueError("moments of the rescaled position need t >= 1")
    return float(np.sum((dist.x / t) ** r * dist.p))


def density_moment(d: WeakLimitDensity, r: int) -> float:
    """Quadrature oracle for the r-th moment of the weak limit.

    The atom at 0 contributes only to r = 0 (0^0 = 1 by the usual
    convention for moments).
    """
    g = _theta_integrand(d)

    def integrand(theta: float) -> float:
        y = SUPPORT_RADIUS * math.sin(theta)
        return (y ** r) * g(theta)

    cont = _adaptive_simpson(
        integrand, -0.5 * math.pi, 0.5 * math.pi, TOL.quad_local, TOL.quad_depth
    )
    return cont + (d.c if r == 0 else 0.0)


# --- text output -------------------------------------------------------------


def position_csv(dist: LinePositionDistribution) -> str:
    """CSV ``x,probability`` over the full simulated window."""
    lines = ["x,probability"]
    for x, p in zip(dist.x, dist.p):
        lines.append(f"{int(x)},{p:.12g}")
    return "\n".join(lines) + "\n"


def cdf_comparison_csv(
    dist: LinePositionDistribution, t: int, d: WeakLimitDensity
) -> str:
    """CSV ``y,F_empirical,F_analytic`` at the empirical jump points."""
    emp = empirical_rescaled_cdf(dist, t)
    analytic = cdf_grid(d, emp.ys)
    lines = ["y,F_empirical,F_analytic"]
    for y, fe, fa in zip(emp.ys, emp.values, analytic):
        lines.append(f"{y:.12g},{fe:.12g},{fa:.12g}")
    return "\n".join(lines) + "\n"


def density_csv(d: WeakLimitDensity, ys) -> str:
    """CSV of the continuous density on a caller-specified grid, with the
    point mass recorded in a one-line header."""
    lines = [f"point_mass_at_zero={d.c:.12g}", "y,f_continuous"]
    for y in np.asarray(ys, dtype=float):
        lines.append(f"{y:.12g},{density(d, float(y)):.12g}")
    return "\n".join(lines) + "\n"
