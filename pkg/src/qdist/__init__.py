"""Distances and quasidistances between single-mode bosonic quantum states.

The package provides, over a truncated number basis:

- state constructors for the number, coherent, generalized-coherent,
  cat, squeezed-vacuum, coherent-phase and thermal families;
- the standard distance functionals (Fubini-Study and relatives,
  trace-norm, Hilbert-Schmidt with modifications, Bures-Uhlmann) and
  their energy-sensitive polarized and quasidistance variants;
- closed-form oracles for every family pairing with a printed formula,
  used to cross-validate the matrix numerics;
- Wigner / Husimi / thermal-P phase-space grids and the phase-space
  integral forms of the Hilbert-Schmidt distance;
- quadrature tomograms and classical-like distances built on them.
"""

from .closed_forms import (
    ClosedFormResult,
    cat_distances,
    coherent_fock,
    coherent_pair,
    fock_pair,
    phase_pair,
    squeezed_pair,
    thermal_pair,
)
from .distances import (
    DistanceReport,
    HSBounds,
    PolarizationOperator,
    bures_uhlmann,
    evaluate_metric,
    hilbert_schmidt,
    hs_bounds,
    hs_from_moments,
    identity_polarization,
    jmg_distance,
    modified_hs,
    number_polarization,
    polarized,
    polarized_sqrt,
    pure_state_distance,
    quasidistance_Da,
    quasidistance_DZ,
)
from .fock_core import (
    DensityOperator,
    FockVector,
    Spectrum,
    annihilation,
    hermitian_sqrt,
    number_diagonal,
    outer,
    purity,
    spectrum,
    trace_norm,
    trace_product,
)
from .phase_space import (
    PhaseGrid,
    QuasiDistribution,
    default_grid,
    grid_to_csv,
    hs_from_phase_space,
    husimi_q,
    oscillator_eigenfunctions,
    p_function_thermal,
    position_density,
    wigner,
)
from .states import (
    MomentTable,
    StateSpec,
    adaptive_dim,
    as_density,
    build_state,
    cat,
    coherent,
    coherent_phase,
    fock,
    generalized_coherent,
    mandel_q,
    moment,
    moment_table,
    parse_state_spec,
    reconstruct_from_moments,
    reconstruction_matrix,
    squeezed_vacuum,
    thermal,
    truncation_tail,
    yurke_stoler_phases,
)
from .tomography import (
    Tomogram,
    WeightFunction,
    classical_divergence,
    marginal_analytic,
    marginal_from_wigner,
    tomogram_to_csv,
    tomographic_distance,
)

__version__ = "0.1.0"
