"""Spectral theory and semigroup dynamics of the Laplacian on homogeneous trees."""

from .tree import (
    BoundaryCone,
    ConeFunction,
    RadialSequence,
    ROOT,
    TreeFunction,
    TreeParams,
    Vertex,
    ball_size,
    cone_measure,
    distance,
    enumerate_ball,
    enumerate_sphere,
    horocycle_height,
    integrate_boundary,
    parse_vertex,
    radialize,
    refine_cone_function,
    sphere_size,
)
from .spectral import (
    SpectralPoint,
    SpectrumVerdict,
    c_function,
    canonical_z,
    delta_p,
    ellipse_boundary_points,
    gamma,
    phi,
    phi_p_threshold,
    plancherel_density,
    point_spectrum_contains,
    spectrum_membership,
    strip_contains,
)
from .operators import (
    AffineGenerator,
    GeneratorSpec,
    HeatKernel,
    SeriesGenerator,
    analytic_apply,
    apply_averaging_radial,
    apply_laplacian,
    bessel_I,
    convolve_radial,
    exp_generator,
    generator_symbol,
    heat_kernel,
    lattice_heat_kernel,
    norm_lower_bound,
    semigroup_apply,
)
from .fourier import (
    FourierSlice,
    duality_check,
    hf_transform,
    plancherel_norm,
    poisson_kernel,
    poisson_transform,
    poisson_transform_ball,
)
from .dynamics import (
    ChaosVerdict,
    PeriodicWitness,
    classify_affine,
    classify_analytic,
    find_periodic_witness,
    h_extrema,
    heat_interval,
    orbit_norm_trajectory,
    schrodinger_interval,
)

__all__ = [name for name in dir() if not name.startswith("_")]
