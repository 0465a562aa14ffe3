"""Periodicity certificates for marked points of an unfolded surface.

A singular point is always periodic.  When -Id belongs to the
reflection group, any marked point fixed by the corresponding affine
rotation by pi is periodic.  A marked point that splits the height of
a cylinder irrationally in some periodic direction is non-periodic;
anything else stays unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .flow import (
    NotShownPeriodic,
    OnSeparatrix,
    cylinder_decomposition,
    height_split,
)
from .polygons import MINUS_ID
from .unfolding import ConePoint, TranslationSurface


@dataclass(frozen=True)
class PeriodicityVerdict:
    status: str  # 'periodic' | 'non_periodic' | 'unknown'
    certificate: object  # 'singular' | 'minus_id_fixed' | dict | 'none'

    def __post_init__(self):
        if self.status == "non_periodic" and not isinstance(
            self.certificate, dict
        ):
            raise ValueError("non_periodic requires an irrational split")
        if self.status == "periodic" and self.certificate not in (
            "singular",
            "minus_id_fixed",
        ):
            raise ValueError("periodic requires a named certificate")


def default_directions(M: TranslationSurface) -> list:
    """Horizontal plus the reflection-axis directions of the group."""
    dirs = [Fraction(0)]
    for j in range(M.N):
        d = (M.group.base_axis + Fraction(j, M.N)) % 1
        if d not in dirs:
            dirs.append(d)
    return dirs


def minus_id_fixes(M: TranslationSurface, p: ConePoint) -> bool:
    """Is -Id in the group and does its affine action fix this class?"""
    if MINUS_ID not in M.group:
        return False
    return M.act_on_class(MINUS_ID, p).class_id == p.class_id


def classify_point(
    M: TranslationSurface, p: ConePoint, directions=None
) -> PeriodicityVerdict:
    if p.is_singular:
        return PeriodicityVerdict("periodic", "singular")
    if minus_id_fixes(M, p):
        return PeriodicityVerdict("periodic", "minus_id_fixed")
    if directions is None:
        directions = default_directions(M)
    for theta in directions:
        try:
            dec = cylinder_decomposition(M, theta)
            split = height_split(M, dec, p)
        except (NotShownPeriodic, OnSeparatrix):
            continue
        if not split["rational"]:
            return PeriodicityVerdict(
                "non_periodic",
                {
                    "direction": Fraction(theta) % 2,
                    "h1": split["h1"],
                    "h": split["h"],
                },
            )
    return PeriodicityVerdict("unknown", "none")


def replay_certificate(
    M: TranslationSurface, p: ConePoint, verdict: PeriodicityVerdict
) -> bool:
    """Re-derive a verdict's certificate from scratch."""
    if verdict.status == "periodic":
        if verdict.certificate == "singular":
            return p.is_singular
        return minus_id_fixes(M, p)
    if verdict.status == "non_periodic":
        cert = verdict.certificate
        dec = cylinder_decomposition(M, cert["direction"])
        split = height_split(M, dec, p)
        return (
            not split["rational"]
            and (split["h1"] - cert["h1"]).is_zero
            and (split["h"] - cert["h"]).is_zero
        )
    return True
