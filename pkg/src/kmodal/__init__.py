"""Exact-computation toolkit for k-modal subsequences of permutations."""

from .core import (
    Direction,
    DuplicateValues,
    EmptyPermutation,
    FirstDirection,
    InvalidPositions,
    KmodalError,
    ModalityProfile,
    NotAPermutation,
    Permutation,
    TooLarge,
    Witness,
    flip,
    format_permutation,
    make_permutation,
    modality,
    parse_permutation,
    restrict,
)
from .generators import Family, InvalidParams, perm_make, predicted_size, strong_make
from .labeling import (
    Anchor,
    AxisSpec,
    LabelScheme,
    LabelSet,
    directional_labels,
    injectivity_check,
    kmodal_ending_labels,
    kmodal_starting_labels,
    label_pairs,
    theorem1_scheme,
    theorem2_scheme,
    theorem3_scheme,
)
from .solver import (
    JointAnchor,
    SolveMode,
    best_joint_anchor,
    brute_best_joint,
    brute_longest_kmodal,
    longest_kmodal,
)
from .experiments import (
    BoundReport,
    ConfigError,
    SweepConfig,
    Theorem,
    TightnessReport,
    check_theorem,
    min_over_all_perms,
    minima_table,
    sweep,
    tightness_report,
)
from .lattice import (
    ConditionScan,
    LatticePointSet,
    ShiftTrace,
    condition_scan,
    max_condition_free,
    shift_into_triangle,
    triangle_points,
)

__version__ = "0.1.0"
