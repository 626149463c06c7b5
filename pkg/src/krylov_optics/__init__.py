"""Krylov spread complexity for driven quantum-optical Hamiltonians.

Models linear in the su(2), h(1), su(1,1) and su(3) algebras, evaluated
through mutually cross-checking closed-form and propagator routes.
"""

from .algebra import (GeneratorSet, Group, HamiltonianAssembly, assemble,
                      build_h1, build_su11, build_su2, build_su3_fundamental,
                      check_tail_mass, required_truncation)
from .evolution import (GaussCoefficients, GaussPoint, H1Point,
                        ProjectivePair, PropagatorTrajectory,
                        closed_trajectory, decompose_trajectory,
                        gauss_decompose, h1_decompose, h1_driven,
                        integrate_propagator, kick_parameters,
                        quench_coefficients, su2_damped, su2_driven,
                        su2_kicked, su2_static, su11_driven)
from .lanczos import (MomentSequence, TridiagonalData, lanczos_from_moments,
                      moments, survival_amplitude, tridiagonalize)
from .models import (ComplexityTrace, ModelFamily, ModelSpec, Regime,
                     SweepResult, classify_regime, closed_coefficients,
                     complexity_from_lambda, complexity_from_state,
                     h1_probabilities, run_model, su2_probabilities,
                     su3_complexity_closed, su11_probabilities, sweep)
from .specfun import SeriesControl, bessel_i, bessel_j, complex_gamma

__version__ = "0.1.0"

__all__ = [
    "GeneratorSet", "Group", "HamiltonianAssembly", "assemble",
    "build_h1", "build_su11", "build_su2", "build_su3_fundamental",
    "check_tail_mass", "required_truncation",
    "GaussCoefficients", "GaussPoint", "H1Point", "ProjectivePair",
    "PropagatorTrajectory", "closed_trajectory", "decompose_trajectory",
    "gauss_decompose", "h1_decompose", "h1_driven", "integrate_propagator",
    "kick_parameters", "quench_coefficients", "su2_damped", "su2_driven",
    "su2_kicked", "su2_static", "su11_driven",
    "MomentSequence", "TridiagonalData", "lanczos_from_moments", "moments",
    "survival_amplitude", "tridiagonalize",
    "ComplexityTrace", "ModelFamily", "ModelSpec", "Regime", "SweepResult",
    "classify_regime", "closed_coefficients", "complexity_from_lambda",
    "complexity_from_state", "h1_probabilities", "run_model",
    "su2_probabilities", "su3_complexity_closed", "su11_probabilities",
    "sweep",
    "SeriesControl", "bessel_i", "bessel_j", "complex_gamma",
    "__version__",
]
