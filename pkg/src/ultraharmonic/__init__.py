"""Symbolic algebra of structured subsets of the positive integers.

The package answers three kinds of question about a set expression:
whether its reciprocal sum diverges (harmonic) or converges
(anharmonic), whether it is piecewise syndetic, and how it behaves
under Glazer addition of (ultra)filters.  All verdicts are
three-valued and carry certificates or diagnostics.
"""

from .config import Config, DEFAULT_CONFIG, load_config
from .errors import (
    ConfigError,
    FIPError,
    InputError,
    InsufficientDataError,
    ParseError,
    SchemaError,
    UltraharmonicError,
)
from .grammar import parse, to_text
from .harmonic import (
    Blocks,
    ColorClass,
    FileColoring,
    ResidueMod,
    anharmonic_subset,
    check_translation_inequality,
    classify,
    correction_series,
    hindman_identity_check,
    partial_sums,
    partition_classify,
)
from .filters import (
    FilterBase,
    PrincipalUF,
    definition_check,
    fip_check,
    glazer_member,
    glazer_sum_base,
    is_harmonic_base,
    principal_sum,
)
from .progressions import APWitness, find_ap, longest_ap, verify_witness
from .rules import contains, simplify
from .sets import (
    AP,
    Difference,
    Finite,
    FromFile,
    Intersection,
    KthPowers,
    LeftShift,
    NATURALS,
    Powers,
    Primes,
    SetExpr,
    Shifted,
    Sumset,
    Union,
    elements,
    first_element,
    first_n,
    left_shift,
    shift,
)
from .syndetic import (
    GapCertificate,
    GapProfile,
    classify_psyndetic,
    gap_profile,
    prime_gap_certificate,
)
from .verdict import ANHARMONIC, HARMONIC, NO, Rule, UNKNOWN, Verdict, YES

__version__ = "0.1.0"

__all__ = [
    "ANHARMONIC",
    "AP",
    "APWitness",
    "Blocks",
    "ColorClass",
    "Config",
    "ConfigError",
    "DEFAULT_CONFIG",
    "Difference",
    "FIPError",
    "FileColoring",
    "FilterBase",
    "Finite",
    "FromFile",
    "GapCertificate",
    "GapProfile",
    "HARMONIC",
    "InputError",
    "InsufficientDataError",
    "Intersection",
    "KthPowers",
    "LeftShift",
    "NATURALS",
    "NO",
    "ParseError",
    "Powers",
    "Primes",
    "PrincipalUF",
    "ResidueMod",
    "Rule",
    "SchemaError",
    "SetExpr",
    "Shifted",
    "Sumset",
    "UNKNOWN",
    "UltraharmonicError",
    "Union",
    "Verdict",
    "YES",
    "anharmonic_subset",
    "check_translation_inequality",
    "classify",
    "classify_psyndetic",
    "contains",
    "correction_series",
    "definition_check",
    "elements",
    "find_ap",
    "fip_check",
    "first_element",
    "first_n",
    "gap_profile",
    "glazer_member",
    "glazer_sum_base",
    "hindman_identity_check",
    "is_harmonic_base",
    "left_shift",
    "load_config",
    "longest_ap",
    "parse",
    "partial_sums",
    "partition_classify",
    "prime_gap_certificate",
    "principal_sum",
    "shift",
    "simplify",
    "to_text",
    "verify_witness",
]
