"""Generalized k-Markov numbers computed from fence posets of lattice segments."""
from .errors import (
    ConsistencyError,
    InvalidInputError,
    KMarkovError,
    NormalFormError,
    OracleCapacityError,
    UnboundedEnumerationError,
)
from .ideal_count import brute_force_count, cf_numerator, count_ideals, count_ideals_circular, count_ideals_dp
from .lattice_poset import (
    CircularPoset,
    LatticePoint,
    RelationWord,
    Shape,
    circular_word,
    crossings,
    explicit_poset,
    relation_word,
    type1_resolution,
    word_to_shape,
)
from .markov import (
    FareyLabel,
    MarkovTriple,
    SequenceKind,
    distance,
    markov_number,
    markov_residual,
    markov_via_tree,
    multiple_closed_form,
    multiple_recurrence,
    named_sequence,
    vieta_tree,
)
from .monotonicity import (
    EmpiricalClass,
    LineSpec,
    PredictedClass,
    ProbeMode,
    classify_line,
    compare_orders,
    enumerate_line,
    exact_probe_ratios,
    ptolemy_check,
    ratio_convergence_probe,
    s_minus,
    s_plus,
    thresholds,
    wedge_count,
)

__version__ = "0.1.0"
