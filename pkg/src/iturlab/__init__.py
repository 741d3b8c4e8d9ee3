"""iturlab: Renyi entropies, entropy powers and entropic uncertainty relations.

Entropies are in bits unless stated otherwise. The main entry points are
re-exported here; see the submodules for the full interface.
"""

from .core import (
    BoundReport,
    DiscreteDistribution,
    GriddedDensity,
    GriddedWaveFunction,
    HoelderPair,
    IturPair,
    conjugate,
    gaussian_density,
    gaussian_wavefunction,
    itur_pair,
    validate_distribution,
)
from .epi import (
    EpiReport,
    check_generalized_epi,
    convolve,
    hausdorff_young_check,
    optimal_lambda,
    variance_entropy_chain,
    young_constant,
)
from .errors import *  # noqa: F401,F403
from .examples import (
    CatParams,
    CauchyParams,
    RegulatorWindow,
    cat_itur_curves,
    cat_pdfs,
    cat_variances,
    cauchy_closed_entropies,
    cauchy_pdfs,
    cauchy_regulated,
    levy_smirnov_wavefunction,
)
from .itur_continuous import (
    bb_rhs,
    check_continuous_itur,
    coarse_itur_check,
    entropy_power_product,
    fourier_dual,
    heavy_tail_gap,
)
from .itur_discrete import (
    SpinScenario,
    check_renyi_itur,
    itur_bound,
    spin_feasible_q_renyi,
    spin_feasible_q_shannon,
    spin_feasible_q_vur,
    table1,
)
from .matgeo import TransformMatrix, condition_number, distance_to_singularity, mixed_norm, overlap_bound_c
from .renyi import (
    discretize,
    gaussian_renyi_closed,
    renyi_differential,
    renyi_discrete,
    renyi_entropy_power,
    renyi_relative_volume,
)
from .special import bessel_k0

__version__ = "0.1.0"
