"""Exact combinatorics of commuting tuples, wreath products, subgroup schemes and the Honda formal group."""

from .abelian import (
    Cokernel,
    FiniteAbelianGroup,
    IntegerMatrix,
    Subgroup,
    cokernel,
    dual_of_surjection,
    enumerate_subgroups,
    hermite_normal_form,
    pushout,
    smith_normal_form,
    subgroups_with_projection,
)
from .actions import (
    ActionClass,
    TypeClass,
    WreathElement,
    centralizer_shape,
    classify_permutations,
    enumerate_action_classes,
    enumerate_types,
    is_monotypical,
    survives_transfer,
    to_permutations,
)
from .errors import NotSurjective, NotTransitive, ResourceBound, StricklandLabError

__version__ = "0.1.0"
