"""Exact arithmetic: rank-two values, residue rings and GL_2 over them."""

from .groups import (
    CapExceeded,
    MatrixGroup,
    borel_stabilizer,
    center,
    conjugate,
    conjugate_subgroup,
    det,
    double_cosets,
    enumerate_gl2,
    generated_subgroup,
    gl2_order,
    intersect,
    iwahori,
    iwahori_congruence,
    mat_inv,
    mat_mul,
    named_subgroups,
    pi_prime_conjugate,
    principal_congruence,
    special_linear,
    unipotent,
    upper_borel,
)
from .rings import ResidueRing, make_ring, parse_ring_spec
from .values import ONE, RankTwoLog, cmp_value, frac_str, scale_sharp

__all__ = [
    "CapExceeded", "MatrixGroup", "ONE", "RankTwoLog", "ResidueRing", "borel_stabilizer",
    "center", "cmp_value", "conjugate", "conjugate_subgroup", "det", "double_cosets",
    "enumerate_gl2", "frac_str", "generated_subgroup", "gl2_order", "intersect", "iwahori",
    "iwahori_congruence", "make_ring", "mat_inv", "mat_mul", "named_subgroups",
    "parse_ring_spec", "pi_prime_conjugate", "principal_congruence", "scale_sharp",
    "special_linear", "unipotent", "upper_borel",
]
