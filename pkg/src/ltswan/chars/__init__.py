"""Exact characters: cyclotomic values, class functions, tables and type selectors."""

from .classfun import (
    ClassFunction,
    NotASubgroup,
    conjugate_class_function,
    fixed_dim,
    induce,
    inner_product,
    restrict,
)
from .cyclotomic import Cyclotomic
from .dixon import CharTable, TableError, character_table, dixon_table
from .types import (
    InducedU,
    UnitCharacter,
    defect_fixed_threshold,
    det_twist,
    exponent_n_characters,
    is_minimal,
    is_pi_prime_stable,
    iwahori_level,
    k_level,
    ramified_type_candidates,
    u_char,
    unipotent_fixed_dims,
    unit_characters,
    unramified_type_candidates,
)

__all__ = [
    "CharTable", "ClassFunction", "Cyclotomic", "InducedU", "NotASubgroup", "TableError",
    "UnitCharacter", "character_table", "conjugate_class_function", "defect_fixed_threshold",
    "det_twist", "dixon_table", "exponent_n_characters", "fixed_dim", "induce",
    "inner_product", "is_minimal", "is_pi_prime_stable", "iwahori_level", "k_level", "ramified_type_candidates",
    "restrict", "u_char", "unipotent_fixed_dims", "unit_characters",
    "unramified_type_candidates",
]
