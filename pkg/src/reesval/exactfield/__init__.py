"""Exact fields, sparse polynomials and the linear algebra underneath."""

from .fields import (QQField, NFElement, NumberField, RationalField, RationalFunctionField,
                     common_field, field_from_config, function_field, number_field)
from .poly import INF, MultiPoly
from .parse import parse_element, parse_poly
from .algebra import factor_order, gcd, resultant, univariate_tools
from .linalg import Echelon

__all__ = [
    "QQField", "NFElement", "NumberField", "RationalField", "RationalFunctionField",
    "common_field", "field_from_config", "function_field", "number_field",
    "INF", "MultiPoly", "parse_element", "parse_poly",
    "factor_order", "gcd", "resultant", "univariate_tools", "Echelon",
]
