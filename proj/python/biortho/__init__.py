"""Numerical laboratory for curvature of oriented Riemannian 4-manifolds.

The heavy lifting lives in the compiled extension ``biortho._core``; this
package re-exports its public names.  See ``help(biortho._core)`` for the
operation-level docs.
"""

from ._core import (  # noqa: F401
    CurvatureBlocks,
    SpectralSummary,
    BruteForceResult,
    CurvaturePredicates,
    Model,
    Mesh,
    MinimizeResult,
    SuiteReport,
    compose,
    decompose,
    kperp_spectral,
    kperp_bruteforce,
    predicates,
    sectional_from_span,
    biortho_from_span,
    model_names,
    make_model,
    gauss_bonnet_check,
    euler_bound_check,
    scalar_energy_threshold,
    make_mesh,
    functional_value,
    minimize,
    suite_names,
    run_suite,
)

__all__ = [
    "CurvatureBlocks",
    "SpectralSummary",
    "BruteForceResult",
    "CurvaturePredicates",
    "Model",
    "Mesh",
    "MinimizeResult",
    "SuiteReport",
    "compose",
    "decompose",
    "kperp_spectral",
    "kperp_bruteforce",
    "predicates",
    "sectional_from_span",
    "biortho_from_span",
    "model_names",
    "make_model",
    "gauss_bonnet_check",
    "euler_bound_check",
    "scalar_energy_threshold",
    "make_mesh",
    "functional_value",
    "minimize",
    "suite_names",
    "run_suite",
]

__version__ = "0.1.0"
