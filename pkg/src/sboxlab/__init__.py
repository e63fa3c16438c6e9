"""Security measures, classification and exhaustive search for small S-boxes."""

from .core import (
    DDT,
    SBox,
    ddt,
    derivative,
    derivative_image_size,
    diff1,
    differential_uniformity,
    format_sbox,
    is_weakly_apn,
    is_weakly_delta_uniform,
    normalize,
    parse_sbox,
)
from .enumeration import (
    EnumerationResult,
    SearchNode,
    brute_force_subtree,
    enumerate_strong,
    enumerate_subtree,
    partial_ddt_update,
)
from .invariance import (
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    is_strongly_anti_invariant,
    is_subspace,
)
from .predicates import AnalysisReport, analyze, is_optimal, is_strong, is_very_strong
from .spectral import (
    ANF,
    NEG_INFINITY_DEGREE,
    BooleanComponent,
    WalshSpectrum,
    algebraic_degree,
    anf,
    component,
    component_degree,
    degree_spectrum,
    fwht,
    lin,
    lin1,
    mobius_transform,
    n_hat,
    walsh_spectrum,
)
from .verification import (
    FactCase,
    ImplicationOutcome,
    ImplicationReport,
    check_implications,
    load_sbox_file,
    sample_tables,
    verify_facts,
)

__version__ = "0.1.0"

__all__ = [
    "ANF",
    "AnalysisReport",
    "BooleanComponent",
    "DDT",
    "EnumerationResult",
    "FactCase",
    "ImplicationOutcome",
    "ImplicationReport",
    "NEG_INFINITY_DEGREE",
    "SBox",
    "SearchNode",
    "Subspace",
    "WalshSpectrum",
    "algebraic_degree",
    "analyze",
    "anf",
    "brute_force_subtree",
    "check_implications",
    "component",
    "component_degree",
    "ddt",
    "degree_spectrum",
    "derivative",
    "derivative_image_size",
    "diff1",
    "differential_uniformity",
    "enumerate_strong",
    "enumerate_subspaces",
    "enumerate_subtree",
    "format_sbox",
    "fwht",
    "gaussian_binomial",
    "is_optimal",
    "is_strong",
    "is_strongly_anti_invariant",
    "is_subspace",
    "is_very_strong",
    "is_weakly_apn",
    "is_weakly_delta_uniform",
    "lin",
    "lin1",
    "load_sbox_file",
    "mobius_transform",
    "n_hat",
    "normalize",
    "parse_sbox",
    "partial_ddt_update",
    "sample_tables",
    "verify_facts",
    "walsh_spectrum",
]
