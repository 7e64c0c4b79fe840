"""Spectral computations on high-dimensional spheres and their Gaussian limits.

The library computes closed spectra and Dirichlet eigenvalues of spheres
S^N(a) projected to a fixed number n of coordinates, the matching spectra
of the n-dimensional Gaussian space with variance alpha^2, and the exact
and numerical comparisons between the two along the canonical radius
schedule a_N = alpha * sqrt(N - 1).
"""

__version__ = "0.1.0"

from .convergence import (ConvergenceRow, EigenfunctionComparison,
                          closed_spectrum_table, dirichlet_convergence_table,
                          eigenfunction_comparison, proof_identities)
from .eigensolve import (EigenResult, SolverError, SturmLiouvilleSpec,
                         cap_eigenvalue, halfline_eigenvalue, nu_of_s, ode_residual)
from .geometry import (GaussSpec, SphereSpec, WeightProfile, normalization_Z,
                       omega_density, sphere_volume_log, varpi_and_A)
from .harmonics import (HarmonicLiftFamily, build_family, build_P, build_Q_gauss,
                        build_Q_sphere, check_harmonic, hermite, ou_apply,
                        projected_eigenspace_dimension)
from .heatflow import (BasisTag, HeatRow, SpectralCoefficients, energy,
                       gauss_basis, heat_convergence_table, heat_evolve, l2_norm,
                       recovery_sequence, sphere_basis)
from .indices import (MultiIndex, SpectrumIndex, enumerate_multi_indices,
                      gauss_multiplicity, sphere_multiplicity)
from .polyalg import (LiftedPoly, RationalPoly, dumps, euler_pairing, laplacian,
                      lifted_laplacian, rational_rank)
from .quadrature import (QuadratureError, QuadratureRule, cap_volume_fraction,
                         hermite_rule, integrate_gauss, integrate_interval,
                         legendre_rule, lifted_norm_sq_exact, mc_sphere_integral,
                         sample_sphere, sphere_inner_product, sphere_monomial_moment)
