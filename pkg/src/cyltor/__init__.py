"""Exact torsion calculus for homology cylinders.

Computes the K1-valued torsion of homology cylinders (truncated at a
configurable degree) from balanced group presentations and one-loop clasper
surgery data, together with the Magnus representation, Johnson values, and
the contraction trace.  Everything is exact rational arithmetic; the hot
series kernel is compiled when the extension is available (see
``cyltor.BACKEND``).
"""

from ._backend import BACKEND
from .cyclic import (
    CyclicSeries,
    CyclicWord,
    LoopDiagramElement,
    act_auto,
    necklace_count,
    p_minus,
    p_plus,
    project_cyclic,
    rho,
)
from .cylinder import (
    CylinderInvariant,
    LabeledPresentation,
    alpha_d,
    compose,
    magnus_rep,
    mapping_cylinder,
    mirror,
    one_loop_leading,
    presentation_matrix,
    sigma_of,
    solve_labels,
    torsion,
    trivial_cylinder,
)
from .clasper import (
    OneLoopClasper,
    TreeClasper,
    clasper_mirror,
    one_loop_presentation,
    psi_leading,
    surgery_factor,
    theta_presentation,
    tree_bracket,
    y_presentation,
)
from .johnson import (
    ExpansionAuto,
    HomDerivation,
    SymplecticForm,
    auto_compose,
    auto_invert,
    contract_C1,
    dynkin_is_lie,
    es_trace,
    ia_degree,
    log_derivation,
    magnus_matrix,
    tau,
)
from .k1 import (
    CommSeries,
    K1Value,
    SeriesMatrix,
    abelianize,
    comm_det,
    delta_alt,
    eps_matrix,
    ldet,
    ldet_graded,
    matrix_invert,
)
from .series import (
    MagnusExpansion,
    TensorSeries,
    magnus_expand,
    series_exp,
    series_invert,
    series_log,
    word_degree_bound,
)
from .words import (
    GroupWord,
    RingElement,
    bar,
    format_word,
    fox_derivative,
    fox_matrix,
    parse_word,
)

__version__ = "0.1.0"
