"""2-closures of finite permutation groups, with instance checks of results on
totally 2-closed groups."""

from .builders import Lemma24Spec, MetacyclicSpec, lemma24_action, metacyclic_regular, named_group
from .closure import (
    OrbitalColoring,
    closure2,
    closure2_backtrack,
    closure2_bruteforce,
    is_2closed,
    orbitals,
    preserves_coloring,
    wielandt_member,
)
from .perm import (
    CapExceeded,
    Permutation,
    PermGroup,
    compose,
    direct_product_disjoint,
    inverse,
    orbits,
    parse_cycles,
    relabel,
    wreath_imprimitive,
)

__version__ = "0.1.0"
