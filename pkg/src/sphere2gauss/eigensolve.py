"""Sturm-Liouville eigenvalue solvers for caps and Gaussian half-lines.

Two boundary-value problems are handled:

* the geodesic cap of aperture theta on an N-sphere of radius a, with
  angular index k (regular singular point at the pole, Frobenius start);
* the half-line (alpha*R, infinity) under the 1-D Gaussian measure, with
  the k/alpha^2 angular shift (truncated domain, inward integration).

Eigenvalues are located by oscillation-count bisection followed by a
root-find on the terminal boundary value, which is derivative-free in the
spectral parameter and selects the branch j deterministically.  Counting
passes run at a coarse integrator tolerance; the root-find and the final
dense solve run at tol/1e4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .geometry import GaussSpec, SphereSpec
from .quadrature import cap_volume_fraction


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class SturmLiouvilleSpec:
    """One of the radial boundary-value problems behind the Dirichlet spectra."""

    kind: str  # "cap" | "halfline"
    spec: SphereSpec | GaussSpec
    boundary: float  # theta in (0, pi) for cap; R for halfline
    angular_k: int = 0
    branch_j: int = 1

    def __post_init__(self):
        if self.kind not in ("cap", "halfline"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "cap" and not 0 < self.boundary < math.pi:
            raise ValueError("cap aperture must lie in (0, pi)")
        if self.angular_k < 0 or self.branch_j < 1:
            raise ValueError("need k >= 0 and j >= 1")


@dataclass
class EigenResult:
    lam: float
    residual: float
    zeros: int
    samples: np.ndarray  # (abscissa, value) pairs, uniform abscissa
    iterations: int
    profile: Callable[[float], float] = field(repr=False, default=None)


_GRID = 1024  # verification-grid size
_COUNT_GRID = 160  # sampling density used for interior zero counting
_COARSE_RTOL = 3e-7


def _count_sign_changes(values: np.ndarray) -> int:
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.sum(signs[:-1] != signs[1:]))


def _effective_zero_count(values: np.ndarray) -> int:
    """Interior zeros of a shot starting positive, with a boundary-lag fix.

    Just above an eigenvalue the newest zero sits arbitrarily close to the
    terminal endpoint and can hide inside the last grid interval; the parity
    of the interior count must match the terminal sign, so a mismatch means
    exactly one such hidden zero.
    """
    interior = _count_sign_changes(values[:-1])
    last = float(values[-1])
    if last != 0.0:
        parity = 1.0 if interior % 2 == 0 else -1.0
        if math.copysign(1.0, last) != parity:
            interior += 1
    return interior


class _EvalCounter:
    def __init__(self):
        self.n = 0


def _bracket_branch(shoot_count, j: int, lam_hi0: float, counter: _EvalCounter,
                    max_grow: int = 60):
    """Locate adjacent spectral parameters with oscillation counts j-1 and j."""
    lo = 1e-12
    count_lo, end_lo = shoot_count(lo)
    counter.n += 1
    if count_lo >= j:
        raise SolverError("oscillation count at the bottom of the bracket is too high")
    hi = lam_hi0
    count_hi, end_hi = shoot_count(hi)
    counter.n += 1
    grow = 0
    while count_hi < j:
        hi *= 2.0
        grow += 1
        if grow > max_grow:
            raise SolverError(f"no bracket found below lambda = {hi:g}")
        count_hi, end_hi = shoot_count(hi)
        counter.n += 1
    while not (count_lo == j - 1 and count_hi == j):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            raise SolverError("bracket collapsed before isolating the branch")
        count_mid, end_mid = shoot_count(mid)
        counter.n += 1
        if count_mid >= j:
            hi, count_hi, end_hi = mid, count_mid, end_mid
        else:
            lo, count_lo, end_lo = mid, count_mid, end_mid
    # the parity-corrected counts guarantee opposite terminal signs across the
    # bracket; polish the root with cheap coarse shots so that the expensive
    # fine stage starts from a tight interval
    def coarse_end(mu):
        counter.n += 1
        return shoot_count(mu)[1]

    try:
        root = brentq(coarse_end, lo, hi, xtol=3e-6 * hi, rtol=1e-12)
    except ValueError:
        return lo, hi
    delta = 3e-5 * hi  # well above the coarse-integration error in the root
    return max(lo, root - delta), min(hi, root + delta)


def _refine_root(shoot_end, lo: float, hi: float, tol: float,
                 counter: _EvalCounter) -> float:
    """Root of the terminal value inside a count-isolating bracket."""

    def f(mu):
        counter.n += 1
        return shoot_end(mu)

    width = hi - lo
    # the bracket came from a coarser integration; widen if the fine signs agree
    for _ in range(9):
        try:
            return brentq(f, lo, hi, xtol=tol * 1e-3, rtol=8.9e-16)
        except ValueError:
            lo = max(1e-12, lo - 0.5 * width)
            hi = hi + 0.5 * width
    raise SolverError("terminal values do not change sign across the bracket")


def _fd_derivatives(h: np.ndarray, dr: float) -> tuple[np.ndarray, np.ndarray]:
    """Order-4 central first and second differences on the interior."""
    h1 = (h[:-4] - 8 * h[1:-3] + 8 * h[3:-1] - h[4:]) / (12 * dr)
    h2 = (-h[:-4] + 16 * h[1:-3] - 30 * h[2:-2] + 16 * h[3:-1] - h[4:]) / (12 * dr * dr)
    return h1, h2


def ode_residual(result: EigenResult, problem: SturmLiouvilleSpec) -> float:
    """Max scaled ODE residual of the sampled eigenfunction, in the r-coordinate form.

    Uses order-4 finite differences on the uniform verification grid; the
    residual at each point is normalized by 1 + |lambda|*|h|.
    """
    r = result.samples[:, 0]
    h = result.samples[:, 1]
    dr = r[1] - r[0]
    h1, h2 = _fd_derivatives(h, dr)
    ri = r[2:-2]
    hi = h[2:-2]
    lam = result.lam
    k = problem.angular_k
    if problem.kind == "cap":
        N, a = problem.spec.N, problem.spec.a
        s = 1.0 - (ri / a) ** 2
        res = s * h2 - (N * ri / a ** 2) * h1 + (lam - k * (k + N - 2) / (a ** 2 * s)) * hi
    else:
        alpha = problem.spec.alpha
        res = h2 - (ri / alpha ** 2) * h1 + (lam - k / alpha ** 2) * hi
    return float(np.max(np.abs(res) / (1.0 + abs(lam) * np.abs(hi))))


# -- spherical cap -------------------------------------------------------


def _cap_ivp(mu: float, N: int, k: int, theta: float, rtol: float,
             t_eval=None, dense: bool = False):
    """Integrate the unit-radius cap ODE in the colatitude u from the Frobenius start.

    The spectral parameter is mu = a^2 * lambda; the two-term series
    phi = u^k (1 + c2 u^2) supplies initial data past the cot singularity.
    """
    kk = k * (k + N - 2)
    u0 = 1e-6 * theta
    c2 = (k * (k + 2 * N - 3) / 3.0 - mu) / (2 * N + 4 * k)
    y0 = [1.0 + c2 * u0 * u0, (k + (k + 2) * c2 * u0 * u0) / u0]  # scaled by u0^-k

    def rhs(u, y):
        phi, dphi = y
        cot = math.cos(u) / math.sin(u)
        ang = kk / math.sin(u) ** 2 if kk else 0.0
        return [dphi, -(N - 1) * cot * dphi - (mu - ang) * phi]

    # for the dense (verification) solve, cap the step so the order-7
    # interpolant error stays below the finite-difference residual floor
    max_step = theta / 180.0 if dense else np.inf
    sol = solve_ivp(rhs, (u0, theta), y0, method="DOP853", rtol=rtol, atol=1e-14,
                    t_eval=t_eval, dense_output=dense, max_step=max_step)
    if not sol.success:
        raise SolverError(f"cap integration failed: {sol.message}")
    return sol


@lru_cache(maxsize=256)
def _cap_mu_solve(N: int, theta: float, k: int, j: int, tol: float):
    """Unit-radius cap solve in the spectral parameter mu = a^2 * lambda.

    Cached: the mu-problem does not depend on the sphere radius, so callers
    with different radii but the same (N, theta, k, j) reuse the solve.
    """
    fine_rtol = max(tol / 1e3, 1e-13)
    counter = _EvalCounter()
    u0 = 1e-6 * theta
    count_grid = np.linspace(u0, theta, _COUNT_GRID)

    def shoot_count(mu):
        sol = _cap_ivp(mu, N, k, theta, _COARSE_RTOL, t_eval=count_grid)
        return _effective_zero_count(sol.y[0]), float(sol.y[0][-1])

    def shoot_end(mu):
        sol = _cap_ivp(mu, N, k, theta, fine_rtol)
        return sol.y[0][-1]

    hi0 = 4.0 * N * max(1.0, (math.pi / (2 * theta)) ** 2)
    lo, hi = _bracket_branch(shoot_count, j, hi0, counter)
    mu = _refine_root(shoot_end, lo, hi, tol, counter)
    sol = _cap_ivp(mu, N, k, theta, fine_rtol, t_eval=count_grid, dense=True)
    zeros = _count_sign_changes(sol.y[0][:-1])
    return mu, sol, zeros, counter.n


def cap_eigenvalue(N: int, a: float, theta: float, k: int = 0, j: int = 1,
                   tol: float = 1e-8) -> EigenResult:
    """j-th Dirichlet eigenvalue of the cap problem with angular index k.

    Solved at unit radius in the spectral parameter mu = a^2 * lambda; the
    eigenfunction is regular at the pole with indicial behaviour u^k.
    """
    if N < 2 or not a > 0 or not 0 < theta < math.pi or k < 0 or j < 1 or not tol > 0:
        raise ValueError("invalid cap problem parameters")
    u0 = 1e-6 * theta
    mu, sol, zeros, iterations = _cap_mu_solve(N, float(theta), k, j, float(tol))

    lam = mu / (a * a)
    u_lo = max(0.05 * theta, 2 * u0)
    span = a - a * math.cos(theta)
    r_lo = a * math.cos(theta) + 1e-3 * span
    r_hi = a * math.cos(u_lo)
    r_grid = np.linspace(r_lo, r_hi, _GRID)
    u_of_r = np.arccos(np.clip(r_grid / a, -1.0, 1.0))
    h_grid = sol.sol(u_of_r)[0]
    samples = np.column_stack([r_grid, h_grid])

    u_min, u_max = sol.t[0], sol.t[-1]

    def profile(r: float) -> float:
        if r <= a * math.cos(theta) or r > a:
            return 0.0
        u = math.acos(min(1.0, r / a))
        u = min(max(u, u_min), u_max)
        return float(sol.sol(u)[0])

    result = EigenResult(lam=lam, residual=math.nan, zeros=zeros,
                         samples=samples, iterations=iterations, profile=profile)
    problem = SturmLiouvilleSpec("cap", SphereSpec(N, a), theta, k, j)
    result.residual = ode_residual(result, problem)
    if zeros != j - 1:
        raise SolverError(f"converged eigenfunction has {zeros} interior zeros, expected {j - 1}")
    return result


# -- Gaussian half-line ---------------------------------------------------


def _halfline_ivp(mu: float, alpha: float, R: float, L: float, rtol: float,
                  t_eval=None, dense: bool = False):
    """Integrate the Gaussian half-line ODE inward from the truncation point L.

    Inward integration is the stable direction: the unwanted solution grows
    like exp(r^2/(2 alpha^2)) outward.  The boundary condition at L matches
    the recessive branch h ~ r^s (1 + c1/r^2 + c2/r^4 + ...), s = mu alpha^2,
    with coefficients c_{m+1} = -alpha^2 (s-2m)(s-2m-1) c_m / (2(m+1)).
    """
    a2 = alpha * alpha
    s = mu * a2
    c1 = -a2 * s * (s - 1.0) / 2.0
    c2 = -a2 * (s - 2.0) * (s - 3.0) * c1 / 4.0
    c3 = -a2 * (s - 4.0) * (s - 5.0) * c2 / 6.0
    h_L = 1.0 + c1 / L ** 2 + c2 / L ** 4 + c3 / L ** 6
    dh_L = (s + (s - 2.0) * c1 / L ** 2 + (s - 4.0) * c2 / L ** 4
            + (s - 6.0) * c3 / L ** 6) / L
    y0 = [h_L, dh_L]

    def rhs(r, y):
        h, dh = y
        return [dh, (r / a2) * dh - mu * h]

    # pure relative control: the recessive solution decays inward by several
    # orders of magnitude and an absolute-tolerance floor would swamp the
    # terminal value with noise
    # for the dense (verification) solve, cap the step so the order-7
    # interpolant error stays below the finite-difference residual floor
    max_step = (L - alpha * R) / 180.0 if dense else np.inf
    sol = solve_ivp(rhs, (L, alpha * R), y0, method="DOP853", rtol=rtol, atol=0.0,
                    t_eval=t_eval, dense_output=dense, max_step=max_step)
    if not sol.success:
        raise SolverError(f"half-line integration failed: {sol.message}")
    return sol


def _halfline_mu(alpha: float, R: float, j: int, tol: float, cutoff: float,
                 counter: _EvalCounter) -> tuple[float, float, float]:
    L = alpha * R + cutoff * alpha
    fine_rtol = max(tol / 1e3, 1e-13)
    count_grid = np.linspace(L, alpha * R, _COUNT_GRID)

    def shoot_count(mu):
        sol = _halfline_ivp(mu, alpha, R, L, _COARSE_RTOL, t_eval=count_grid)
        return _effective_zero_count(sol.y[0]), float(sol.y[0][-1])

    def shoot_end(mu):
        sol = _halfline_ivp(mu, alpha, R, L, fine_rtol)
        return sol.y[0][-1]

    lo, hi = _bracket_branch(shoot_count, j, 4.0 * j / (alpha * alpha), counter)
    mu = _refine_root(shoot_end, lo, hi, tol, counter)
    return mu, L, fine_rtol


def halfline_eigenvalue(alpha: float, R: float, k: int = 0, j: int = 1,
                        tol: float = 1e-8, cutoff: float = 14.0) -> EigenResult:
    """j-th Dirichlet eigenvalue on (alpha*R, inf) under the 1-D Gaussian measure.

    The angular index enters only as the exact shift k/alpha^2.  The domain
    truncation is re-run with a longer cutoff and must reproduce the
    eigenvalue to tol/10, else the truncation is deemed insufficient.
    """
    if not alpha > 0 or k < 0 or j < 1 or not tol > 0:
        raise ValueError("invalid half-line problem parameters")
    counter = _EvalCounter()
    mu, L, fine_rtol = _halfline_mu(alpha, R, j, tol, cutoff, counter)
    mu_check, L2, _ = _halfline_mu(alpha, R, j, tol, cutoff + 2.0, counter)
    if abs(mu_check - mu) > tol / 10.0 * max(1.0, abs(mu)):
        raise SolverError(
            f"truncation sensitivity {abs(mu_check - mu):.3g} exceeds {tol / 10:.3g}; "
            "increase the cutoff")
    mu, L = mu_check, L2
    count_grid = np.linspace(L, alpha * R, _COUNT_GRID)
    sol = _halfline_ivp(mu, alpha, R, L, fine_rtol, t_eval=count_grid, dense=True)
    zeros = _count_sign_changes(sol.y[0][:-1])

    lam = k / (alpha * alpha) + mu
    span = L - alpha * R
    # keep the verification grid away from the truncation point, where the
    # small admixture of the exponentially growing solution injected by the
    # approximate boundary condition has enormous higher derivatives
    r_hi = L - 2.0 * alpha
    r_grid = np.linspace(alpha * R + 1e-3 * span, r_hi, _GRID)
    h_grid = sol.sol(r_grid)[0]
    samples = np.column_stack([r_grid, h_grid])

    s = mu * alpha * alpha
    hL = float(sol.sol(L - 1e-9 * span)[0])

    def profile(r: float) -> float:
        if r <= alpha * R:
            return 0.0
        if r >= L:
            return hL * (r / L) ** s  # recessive asymptote past the truncation
        return float(sol.sol(r)[0])

    result = EigenResult(lam=lam, residual=math.nan, zeros=zeros,
                         samples=samples, iterations=counter.n, profile=profile)
    problem = SturmLiouvilleSpec("halfline", GaussSpec(1, alpha), R, k, j)
    result.residual = ode_residual(result, problem)
    if zeros != j - 1:
        raise SolverError(f"converged eigenfunction has {zeros} interior zeros, expected {j - 1}")
    return result


# -- Friedland-Hayman exponent -------------------------------------------


def nu_of_s(N: int, s: float, tol: float = 1e-7) -> float:
    """Positive root nu of nu(nu + N - 1) = lambda(cap of volume fraction s)."""
    if not 0 < s < 1:
        raise ValueError("s must lie in (0, 1)")
    theta = brentq(lambda t: cap_volume_fraction(N, t) - s, 1e-9, math.pi - 1e-9,
                   xtol=1e-13, rtol=8.9e-16)
    lam = cap_eigenvalue(N, 1.0, theta, 0, 1, tol).lam
    b = N - 1
    return (-b + math.sqrt(b * b + 4.0 * lam)) / 2.0
