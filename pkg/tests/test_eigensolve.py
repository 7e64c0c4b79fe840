import math

import pytest

from sphere2gauss.eigensolve import (EigenResult, SolverError, SturmLiouvilleSpec,
                                     cap_eigenvalue, halfline_eigenvalue, nu_of_s,
                                     ode_residual)
from sphere2gauss.geometry import SphereSpec


@pytest.mark.parametrize("N", [2, 5, 11])
@pytest.mark.parametrize("a", [1.0, 2.0])
def test_hemisphere_closed_form(N, a):
    # first Dirichlet eigenvalue of the hemisphere is N/a^2
    res = cap_eigenvalue(N, a, math.pi / 2, 0, 1, tol=1e-9)
    assert res.lam == pytest.approx(N / a ** 2, abs=1e-9)
    assert res.residual < 1e-7
    assert res.zeros == 0


@pytest.mark.parametrize("j", [1, 2, 3])
def test_hemisphere_zonal_branches(j, N=5):
    # odd-degree zonal harmonics vanish on the equator: the j-th branch is
    # degree 2j-1 with eigenvalue (2j-1)(2j-2+N)/a^2
    res = cap_eigenvalue(N, 1.0, math.pi / 2, 0, j, tol=1e-8)
    want = (2 * j - 1) * (2 * j - 2 + N)
    assert res.lam == pytest.approx(want, abs=1e-7)
    assert res.zeros == j - 1


def test_hemisphere_angular_branch():
    # degree-2 harmonic x * y vanishes on the equator: k=1 eigenvalue 2(N+1)/a^2
    N = 5
    res = cap_eigenvalue(N, 1.0, math.pi / 2, 1, 1, tol=1e-8)
    assert res.lam == pytest.approx(2 * (N + 1), abs=1e-7)


def test_cap_scales_with_radius():
    r1 = cap_eigenvalue(4, 1.0, 1.0, 0, 1, tol=1e-9)
    r2 = cap_eigenvalue(4, 2.0, 1.0, 0, 1, tol=1e-9)
    assert r2.lam == pytest.approx(r1.lam / 4.0, rel=1e-8)


def test_cap_monotone_in_aperture():
    lams = [cap_eigenvalue(6, 1.0, t, 0, 1, tol=1e-8).lam for t in (0.8, 1.2, 1.6)]
    assert lams[0] > lams[1] > lams[2]


@pytest.mark.parametrize("alpha", [1.0, 2.0])
@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_halfline_hermite_spectrum(alpha, j):
    # at R=0 the eigenfunctions are the odd Hermite functions: mu_j = (2j-1)/alpha^2
    res = halfline_eigenvalue(alpha, 0.0, 0, j, tol=1e-8)
    assert res.lam == pytest.approx((2 * j - 1) / alpha ** 2, abs=1e-8)
    assert res.zeros == j - 1
    assert res.residual < 1e-8


def test_halfline_first_profile_is_linear():
    # R=0, j=1: h(r) proportional to r
    res = halfline_eigenvalue(1.0, 0.0, 0, 1, tol=1e-9)
    h1 = res.profile(1.0)
    for r in (0.25, 0.5, 2.0, 3.5):
        assert res.profile(r) == pytest.approx(h1 * r, rel=1e-7)
    assert res.profile(-1.0) == 0.0


def test_halfline_angular_shift_exact():
    base = halfline_eigenvalue(1.5, 0.3, 0, 1, tol=1e-9)
    shifted = halfline_eigenvalue(1.5, 0.3, 3, 1, tol=1e-9)
    assert shifted.lam == pytest.approx(base.lam + 3 / 1.5 ** 2, abs=1e-8)


def test_halfline_R1_value():
    # known half-space slice: lambda(V_{alpha}) = 2/alpha^2
    res = halfline_eigenvalue(1.0, 1.0, 0, 1, tol=1e-9)
    assert res.lam == pytest.approx(2.0, abs=1e-8)


def test_residual_certificate_rejects_perturbation():
    good = cap_eigenvalue(5, 1.0, math.pi / 2, 0, 1, tol=1e-9)
    assert good.residual < 1e-7
    bad = EigenResult(lam=good.lam + 0.1, residual=math.nan, zeros=good.zeros,
                      samples=good.samples, iterations=0)
    problem = SturmLiouvilleSpec("cap", SphereSpec(5, 1.0), math.pi / 2, 0, 1)
    assert ode_residual(bad, problem) > 1e-3


def test_truncation_sensitivity_guard():
    with pytest.raises(SolverError, match="truncation"):
        halfline_eigenvalue(1.0, 0.0, 0, 4, tol=1e-10, cutoff=2.0)


def test_nu_of_half_is_one():
    for N in (2, 7, 19):
        assert nu_of_s(N, 0.5) == pytest.approx(1.0, abs=1e-7)


def test_nu_monotone_in_N():
    vals = [nu_of_s(N, 0.3) for N in (3, 6, 12)]
    assert vals[0] >= vals[1] >= vals[2]


def test_input_validation():
    with pytest.raises(ValueError):
        cap_eigenvalue(1, 1.0, 1.0)
    with pytest.raises(ValueError):
        cap_eigenvalue(3, 1.0, 4.0)
    with pytest.raises(ValueError):
        halfline_eigenvalue(0.0, 0.0)
    with pytest.raises(ValueError):
        halfline_eigenvalue(1.0, 0.0, k=-1)
    with pytest.raises(ValueError):
        nu_of_s(3, 1.5)
    with pytest.raises(ValueError):
        SturmLiouvilleSpec("disk", SphereSpec(3, 1.0), 1.0)
