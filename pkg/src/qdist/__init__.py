"""Statistical distances between distributions and quantum states.

Classical distances live in :mod:`qdist.simplex`, state-space versions in
:mod:`qdist.hilbert` and :mod:`qdist.density`.
"""

from .density import DensityMatrix, from_pure_state, quantum_jsd, von_neumann_entropy
from .distinguishability import (
    CriterionVerdict,
    criteria_agreement_profile,
    jsd_criterion,
    monte_carlo_discrimination,
    wootters_criterion,
)
from .hilbert import (
    MeasurementBasis,
    PureState,
    RotatedBasis2D,
    bhattacharyya_hilbert_max,
    fubini_study_angle,
    hellinger_hilbert_max_sq,
    induced_distance,
    maximize_induced_distance,
    measurement_probabilities,
    overlap,
    random_pure_state,
    rotated_jsd_2d,
    rotated_probabilities_2d,
    wootters_hilbert_max,
)
from .kernels import BACKEND
from .simplex import (
    INFINITE,
    DivergenceValue,
    ProbVec,
    bhattacharyya_coefficient,
    bhattacharyya_distance,
    chi2_half_distance,
    hellinger_sq,
    jsd,
    kl_divergence,
    shannon_entropy,
    wootters_classical,
)
from .tables import SweepTable

__version__ = "0.1.0"
