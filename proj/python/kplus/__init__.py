"""Canonical plus-space bases of half-integral weight and their verification."""

import json
from fractions import Fraction

from ._kplus import (
    N,
    admissible_m,
    arc_value,
    duality_check,
    gauss_h,
    oscillation_count,
    run_criterion,
    scan_zeros,
    theta_cubed,
    threshold_solve,
    twelve_hurwitz,
    verify_integral,
    verify_residue_exact,
)
from . import _kplus


def basis(k: str, m: int, prec: int = 200) -> dict:
    """f_{k,m} as a dict; ``coefficients`` maps exponent to an int (or Fraction if ever non-integral)."""
    data = json.loads(_kplus.basis_json(k, m, prec))
    series = data.pop("series")
    coeffs = {}
    for offset, (rn, rd, inum, iden) in enumerate(series["coeffs"]):
        if inum != "0":
            raise ValueError("unexpected non-real coefficient")
        value = Fraction(int(rn), int(rd))
        if value:
            coeffs[series["valuation"] + offset] = int(value) if value.denominator == 1 else value
    data["prec"] = series["prec"]
    data["coefficients"] = coeffs
    return data


__all__ = [
    "N",
    "admissible_m",
    "arc_value",
    "basis",
    "duality_check",
    "gauss_h",
    "oscillation_count",
    "run_criterion",
    "scan_zeros",
    "theta_cubed",
    "threshold_solve",
    "twelve_hurwitz",
    "verify_integral",
    "verify_residue_exact",
]
