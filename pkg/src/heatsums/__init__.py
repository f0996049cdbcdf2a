"""Exact discrete heat kernels on lattices and twisted tori, and the trigonometric sums they evaluate."""

from .arith import CycloNumber, binomial, cos_sin_of_rational_angle, cyclotomic_polynomial, multinomial, root_of_unity
from .lattice import lattice_kernel, laurent_power, step_polynomial
from .model import (
    DirichletCharacter,
    StepDistribution,
    TorusSpec,
    enumerate_dirichlet_characters,
    gauss_sum,
    is_primitive,
    load_spec,
    make_spec,
    simple_walk,
    validate_spec,
)
from .snf import smith_normal_form, solve_torus_congruences
from .spectral import eigenvalues, spectral_kernel, spectral_power_sum, verify_main_identity
from .torus import evolve_delta, images_kernel, product_kernel, snf_kernel

__version__ = "0.1.0"
