"""Composite classification predicates and the one-shot analysis report.

A bijective normalized 4-bit S-box is *strong* when it is weakly APN,
4-differentially uniform, Lin = 8, Diff1 = 0, Lin1 = 4 and n_3 >= 14;
*very strong* when additionally strongly 2-anti-invariant; *optimal* when
Lin = 8 and 4-differentially uniform.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import SBox, ddt, format_sbox
from .invariance import is_strongly_anti_invariant
from .spectral import NEG_INFINITY_DEGREE, degree_spectrum, n_hat, walsh_spectrum


@dataclass(frozen=True)
class AnalysisReport:
    """Every measure of one S-box plus the classification verdicts.

    Verdicts and anti-invariance flags are None where their preconditions
    do not apply (wrong dimension, non-bijective, or non-normalized input).
    """

    sbox: SBox
    bijective: bool
    normalized: bool
    delta_star: int
    weakly_apn: bool
    weak_delta_profile: int
    lin: int
    lin1: int
    diff1: int
    degree: int | float
    n_i: dict
    n_hat: int
    anti_invariant_1: bool | None
    anti_invariant_2: bool | None
    optimal: bool | None
    strong: bool | None
    very_strong: bool | None

    def to_json_dict(self) -> dict:
        """Flat JSON-ready dict with stable field names."""
        out = {
            "table": format_sbox(self.sbox),
            "m": self.sbox.m,
            "bijective": self.bijective,
            "normalized": self.normalized,
            "delta_star": self.delta_star,
            "weakly_apn": self.weakly_apn,
            "weak_delta_profile": self.weak_delta_profile,
            "lin": self.lin,
            "lin1": self.lin1,
            "diff1": self.diff1,
            "degree": None if self.degree == NEG_INFINITY_DEGREE else self.degree,
            "n_hat": self.n_hat,
            "anti_invariant_1": self.anti_invariant_1,
            "anti_invariant_2": self.anti_invariant_2,
            "optimal": self.optimal,
            "strong": self.strong,
            "very_strong": self.very_strong,
            "n_neg_inf": self.n_i.get(NEG_INFINITY_DEGREE, 0),
        }
        for i in range(self.sbox.m + 1):
            out[f"n_{i}"] = self.n_i.get(i, 0)
        return out


def _measures(f: SBox):
    """The six strong-definition ingredients, sharing one DDT and one spectrum."""
    table = ddt(f)
    delta_star = table.max_entry()
    profile = min(table.row_image_size(u) for u in range(1, f.size))
    weakly_apn = 2 * profile > f.size // 2
    singles = [1 << i for i in range(f.m)]
    d1 = max(table.counts[a][b] for a in singles for b in singles)
    spec = walsh_spectrum(f).w
    lin = max(abs(spec[a][b]) for a in range(f.size) for b in range(1, f.size))
    lin1 = max(abs(spec[a][b]) for a in singles for b in singles)
    return delta_star, profile, weakly_apn, d1, lin, lin1


def _require(f: SBox, *, dim: int | None, bijective: bool, normalized: bool) -> None:
    if dim is not None and f.m != dim:
        raise ValueError(f"predicate is defined for m={dim}, got m={f.m}")
    if bijective and not f.bijective:
        raise ValueError("predicate requires a bijective S-box")
    if normalized and not f.normalized:
        raise ValueError("predicate requires f(0) = 0; apply normalize() first")


def is_strong(f: SBox) -> bool:
    """Strong 4-bit S-box predicate (see module docstring)."""
    _require(f, dim=4, bijective=True, normalized=True)
    delta_star, _, weakly_apn, d1, lin, lin1 = _measures(f)
    if not weakly_apn or delta_star > 4 or d1 != 0:
        return False
    if lin != 8 or lin1 != 4:
        return False
    return degree_spectrum(f).get(3, 0) >= 14


def is_very_strong(f: SBox) -> bool:
    """Strong and strongly 2-anti-invariant."""
    return is_strong(f) and is_strongly_anti_invariant(f, 2)


def is_optimal(f: SBox) -> bool:
    """Best achievable linearity and differential uniformity for 4 bits."""
    _require(f, dim=4, bijective=True, normalized=False)
    delta_star, _, _, _, lin, _ = _measures(f)
    return lin == 8 and delta_star <= 4


def analyze(f: SBox) -> AnalysisReport:
    """Compute every measure of f and the classification verdicts."""
    delta_star, profile, weakly_apn, d1, lin, lin1 = _measures(f)
    spectrum = degree_spectrum(f)
    degree = max(spectrum)
    constant_free = f.bijective and f.normalized

    anti1 = anti2 = None
    if constant_free:
        anti1 = is_strongly_anti_invariant(f, 1)
        anti2 = is_strongly_anti_invariant(f, 2)

    optimal = strong = very_strong = None
    if f.m == 4 and f.bijective:
        optimal = lin == 8 and delta_star <= 4
        if f.normalized:
            strong = (weakly_apn and delta_star <= 4 and d1 == 0
                      and lin == 8 and lin1 == 4 and spectrum.get(3, 0) >= 14)
            very_strong = strong and anti2

    return AnalysisReport(
        sbox=f,
        bijective=f.bijective,
        normalized=f.normalized,
        delta_star=delta_star,
        weakly_apn=weakly_apn,
        weak_delta_profile=profile,
        lin=lin,
        lin1=lin1,
        diff1=d1,
        degree=degree,
        n_i=spectrum,
        n_hat=n_hat(f),
        anti_invariant_1=anti1,
        anti_invariant_2=anti2,
        optimal=optimal,
        strong=strong,
        very_strong=very_strong,
    )
