"""Exact computations with Sym(N)-invariant ideals of row-symmetric polynomials."""

from .actions import (ColumnMap, RowPermutation, apply_column, apply_row, is_symmetric,
                      orbit_sum, row_orbit, symmetrize)
from .core import (GF, QQ, ZZ, CharacteristicObstruction, CoefficientRing, ParseError,
                   Polynomial, PolynomialError, compare_monomials, format_polynomial,
                   multidegree, parse_polynomial, valuation_p)
from .equivariant import (Ambient, EquivariantIdealSpec, MembershipCertificate,
                          MembershipVerdict, Status, expand_truncated, member_multigraded,
                          member_truncated, retract_certificate, stabilization_scan,
                          verify_certificate)
from .families import (cycle_product, determinant_gen, h_family, l2_component_span,
                       symmetric_component_basis, tilde_product)
from .morphisms import collapse_columns, lift_canonical, psi_kl, reduce_mod_p, row_truncate

__version__ = "0.1.0"

__all__ = [
    "ColumnMap",
    "RowPermutation",
    "apply_column",
    "apply_row",
    "is_symmetric",
    "orbit_sum",
    "row_orbit",
    "symmetrize",
    "GF",
    "QQ",
    "ZZ",
    "CharacteristicObstruction",
    "CoefficientRing",
    "ParseError",
    "Polynomial",
    "PolynomialError",
    "compare_monomials",
    "format_polynomial",
    "multidegree",
    "parse_polynomial",
    "valuation_p",
    "Ambient",
    "EquivariantIdealSpec",
    "MembershipCertificate",
    "MembershipVerdict",
    "Status",
    "expand_truncated",
    "member_multigraded",
    "member_truncated",
    "retract_certificate",
    "stabilization_scan",
    "verify_certificate",
    "cycle_product",
    "determinant_gen",
    "h_family",
    "l2_component_span",
    "symmetric_component_basis",
    "tilde_product",
    "collapse_columns",
    "lift_canonical",
    "psi_kl",
    "reduce_mod_p",
    "row_truncate",
]
