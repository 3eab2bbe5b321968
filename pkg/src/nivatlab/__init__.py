"""Exact pattern complexity of Z^2 configurations over convex lattice shapes,
periodicity engines, generating/balanced-set search, and a bound verifier.
"""

from .complexity import (
    ComplexityReport,
    DirectionalLanguage,
    ExtensionTable,
    complexity,
    complexity_table,
    directional_language,
    extension_counts,
    language,
    language_report,
    table_to_csv,
)
from .configurations import (
    Alphabet,
    Configuration,
    DiagonalFamily,
    DoublyPeriodic,
    Exactness,
    FiniteDefect,
    Pattern,
    WindowSample,
    config_from_dict,
    extract_pattern,
)
from .errors import (
    ConfigurationError,
    ConstructionError,
    GeometryError,
    HypothesisNotMet,
    InexactDataError,
    NivatlabError,
    SoundnessError,
    UnknownLetterError,
)
from .geometry import (
    AxisOfSymmetry,
    ConvexLatticeSet,
    Edge,
    Line,
    Point,
    axes_of_symmetry,
    block,
    convex_hull,
    diameter_along,
    is_quasi_regular,
    is_vertex,
    strip_points,
    supporting_line,
)
from .structure import (
    BalancedSetCertificate,
    GeneratingKind,
    GeneratingSetResult,
    MClass,
    PhiReport,
    StripLemmaReport,
    StripLemmaStatus,
    WitnessReport,
    audit_mlc_inequality,
    construct_balanced_set,
    directional_point_sets,
    expansive_witness,
    find_directional_generating_set,
    find_generating_set,
    find_mlc_set,
    is_generated,
    lemma_thickness_audit,
    m_classes,
    phi,
    remark_i_instance,
    thickness_ok,
    verify_strip_lemma,
)
from .verifier import (
    ExampleSuiteResult,
    NivatReport,
    Verdict,
    diagonal_expected,
    example_suite,
    nivat_check,
)
from .words import (
    FineWilfReport,
    MHReport,
    MHStatus,
    NullAreaReport,
    NullAreaStatus,
    PeriodReport,
    Word,
    detect_periods_2d,
    fine_wilf,
    mh_check,
    null_area_period,
    strip_word,
    word_complexity,
)

__version__ = "0.1.0"
