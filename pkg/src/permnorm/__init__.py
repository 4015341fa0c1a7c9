"""Normalisers of permutation groups, with a primitivity classifier."""
from .ample import AmpleCertificate, build_wreath_generators, detect_ample, normaliser_of_ample
from .conjugacy import centraliser_in_symmetric, conjugating_permutation
from .fixtures import fixture, parse_group_file, read_group_file
from .limits import Limits, ResourceLimitError, limits_scope
from .perm import Permutation, PermutationError, parse_permutation
from .pipeline import (ClassifyResult, almost_simple_normaliser, classify_and_normalise,
                       normaliser_in, normaliser_report, normaliser_small, small_base,
                       small_generating_set)
from .stabchain import (Group, StabChain, alternating_group, subgroup_intersection,
                        symmetric_group, trivial_group)
from .structure import (centralizer_of_normal, is_primitive, minimal_normal_subgroups,
                        socle)

__all__ = [
    "AmpleCertificate", "ClassifyResult", "Group", "Limits", "Permutation",
    "PermutationError", "ResourceLimitError", "StabChain", "almost_simple_normaliser",
    "alternating_group", "build_wreath_generators", "centraliser_in_symmetric",
    "centralizer_of_normal", "classify_and_normalise", "conjugating_permutation",
    "detect_ample", "fixture", "is_primitive", "limits_scope", "minimal_normal_subgroups",
    "normaliser_in", "normaliser_of_ample", "normaliser_report", "normaliser_small",
    "parse_group_file", "parse_permutation", "read_group_file", "small_base",
    "small_generating_set", "socle", "subgroup_intersection", "symmetric_group",
    "trivial_group",
]
__version__ = "0.1.0"
