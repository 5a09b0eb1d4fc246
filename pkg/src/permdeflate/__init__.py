"""Deflatability analysis for principal permutation classes."""

from .perm_core import (
    MAX_LENGTH,
    Bond,
    Occurrence,
    ParseError,
    Permutation,
    Slot,
    Symmetry,
    SYMMETRY_ORDER,
    apply_symmetry,
    bonds,
    contains,
    delete,
    direct_sum,
    format_permutation,
    inflate,
    insert,
    parse_permutation,
    skew_sum,
    symmetry_from_name,
)
from .decomposition import (
    DecompositionTree,
    IntervalSpan,
    QuadrantView,
    is_simple,
    maximal_intervals,
    proper_intervals,
    quadrants,
    sd_measure,
    substitution_decompose,
    sum_components,
)
from .class_engine import (
    PermClass,
    ShadingGrid,
    avoids,
    count_profile,
    enumerate_class,
    enumerate_simples,
    shading_grid,
)
from .deflate_analysis import (
    EMBED_EXCLUDED,
    BreakReport,
    EmbeddingTrace,
    EmpiricalReport,
    RULE_LABELS,
    SimpleExtension,
    TheoremVerdict,
    UncoveredMember,
    breaking_extensions,
    classify_principal,
    condition_ddagger,
    embed_indecomposable,
    empirical_deflatability,
    extend_to_simple,
)
from .witness import (
    CROSS_CHECK_CAP,
    BondCertificate,
    CorpusRowResult,
    FamilyCheck,
    WitnessReport,
    bond_certificate,
    bond_strip_slots,
    find_witnesses,
    inflation_family,
    load_corpus,
    parallel_alternation,
    verify_corpus,
)

__version__ = "0.1.0"
