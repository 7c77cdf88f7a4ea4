"""Flat polynomials on compact homogeneous manifolds, at desk scale.

Thin python surface over the C++ core: orthonormal eigenspace systems,
quadrature-backed L_p norms, convex-body oracles with Monte Carlo volumes and
Levy means, the convex-geometry inequality screens, and the subspace ratio
search. Everything is seeded; identical seeds give identical results.
"""

from ._core import (  # noqa: F401
    INF,
    NormBody,
    Spectrum,
    __version__,
    ball_volume,
    check_bourgain_milman,
    check_central_section_max,
    check_polar_containment,
    check_santalo,
    check_urysohn,
    check_volume_lower_bound,
    class_k_verify,
    diameter_of_section,
    induced_norm,
    intersect_subspaces,
    kernel,
    kernel_column,
    levy_mean,
    linf_norm,
    mc_volume,
    moment_check,
    nikolskii_check,
    omega,
    proof_pipeline,
    random_sign_poly,
    random_subspace,
    ratio_minimize,
    rudin_check,
    rudin_shapiro,
    run_cli,
    sign_poly_sup,
    spectrum,
    sphere_sample,
    theorem2_sweep,
    theorem3_experiment,
)
