"""Exact rationals and real quadratic towers."""
from .expr import format_element, parse_element
from .interval import Interval
from .rational import bit_cap, get_bit_cap, rational_sqrt, to_fraction
from .tower import (
    QQ,
    FieldTower,
    TowerElement,
    adjoin_sqrt,
    as_element,
    field_arith,
    is_rational,
    merge_towers,
    numeric_eval,
    sign,
    sqrt_element,
    sqrt_in_field,
    unify,
)

__all__ = [
    "QQ",
    "FieldTower",
    "Interval",
    "TowerElement",
    "adjoin_sqrt",
    "as_element",
    "bit_cap",
    "field_arith",
    "format_element",
    "get_bit_cap",
    "is_rational",
    "merge_towers",
    "numeric_eval",
    "parse_element",
    "rational_sqrt",
    "sign",
    "sqrt_element",
    "sqrt_in_field",
    "to_fraction",
    "unify",
]
