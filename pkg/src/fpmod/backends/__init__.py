"""Concrete rings and ring handles."""
from __future__ import annotations

from ..errors import UnsupportedBackend
from .euclidean import EuclideanRing, Integers, PrimeField, Rationals, extended_gcd
from .poly import Polynomial, PolynomialRing
from .residue import ResidueRing
from .smith import SmithResult, smith_normal_form

__all__ = [
    "EuclideanRing", "Integers", "PrimeField", "Rationals", "Polynomial",
    "PolynomialRing", "ResidueRing", "SmithResult", "smith_normal_form",
    "extended_gcd", "ring_from_json", "residue_class_ring",
]


def residue_class_ring(base, ideal_generators) -> ResidueRing:
    return ResidueRing(base, ideal_generators)


def _coefficient_field(desc):
    if desc in ("rationals", "QQ", "Q") or desc == {"type": "rationals"}:
        return Rationals()
    if isinstance(desc, dict) and desc.get("type") == "primefield":
        return PrimeField(int(desc["p"]))
    if isinstance(desc, str) and desc.startswith("primefield:"):
        return PrimeField(int(desc.split(":", 1)[1]))
    raise UnsupportedBackend(f"unsupported coefficient field {desc!r}")


def ring_from_json(doc: dict):
    kind = doc.get("type")
    if kind == "integers":
        return Integers()
    if kind == "rationals":
        return Rationals()
    if kind == "primefield":
        return PrimeField(int(doc["p"]))
    if kind == "poly":
        return PolynomialRing(_coefficient_field(doc.get("coeffs", "rationals")),
                              doc["vars"], doc.get("order", "degrevlex"))
    if kind == "residue":
        base = ring_from_json(doc["base"])
        return ResidueRing(base, [base.parse(g) if isinstance(g, str) else g
                                  for g in doc["ideal"]])
    raise UnsupportedBackend(f"unknown ring type {kind!r}")
