"""Exact character tables and McKay quivers for finite subgroups of GL(2, C)."""
from .cyclotomic import Cyclotomic, root_of_unity
from .groups import parse_spec, order, conjugacy_classes, brute_conjugacy
from .reps import character_table, natural_character, decompose, inner_product
from .quiver import Quiver, mckay_quiver, rule_quiver, product_quiver, dynkin_extended, find_isomorphism

__all__ = [
    "Cyclotomic", "root_of_unity",
    "parse_spec", "order", "conjugacy_classes", "brute_conjugacy",
    "character_table", "natural_character", "decompose", "inner_product",
    "Quiver", "mckay_quiver", "rule_quiver", "product_quiver", "dynkin_extended", "find_isomorphism",
]
