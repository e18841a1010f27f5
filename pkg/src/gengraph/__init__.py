"""Generating graphs of alternating and symmetric groups: degrees, parity,
Moebius sums and Eulerian status."""

__version__ = "0.1.0"

from .config import Caps, InputError, MembershipError, ResourceError
from .groups import Family, GroupSpec, conjugacy_classes, generates, normalizer_of_cyclic
from .perm import CycleShape, Permutation, PermutationError, cycle_shape, element_order

__all__ = [
    "Caps",
    "CycleShape",
    "Family",
    "GroupSpec",
    "InputError",
    "MembershipError",
    "Permutation",
    "PermutationError",
    "ResourceError",
    "conjugacy_classes",
    "cycle_shape",
    "element_order",
    "generates",
    "normalizer_of_cyclic",
]
