"""Deterministic wiretap-channel simulation toolkit.

Secrecy metrics, seedable channel models, noise-based key generation, the
keyless randomness-shaping pipeline, and the experiment harness, all backed
by the C++ core.
"""

from otpsim._core import (  # noqa: F401
    AuditResult,
    DosaEstimate,
    HighSnrDosa,
    KeylessReport,
    NbkgReport,
    bit_error_rate,
    bsc,
    degree_of_approaching,
    degree_of_synchronous_approaching,
    dosa_highsnr_approx,
    estimate_dosa_montecarlo,
    eve_success_exhaustive,
    exhaustive_secrecy_audit,
    min_entropy_bound,
    required_block_length,
    required_error_floor,
    run_config_text,
    run_nbkg,
    run_preset,
    simulate_keyless,
)

__all__ = [
    "AuditResult",
    "DosaEstimate",
    "HighSnrDosa",
    "KeylessReport",
    "NbkgReport",
    "bit_error_rate",
    "bsc",
    "degree_of_approaching",
    "degree_of_synchronous_approaching",
    "dosa_highsnr_approx",
    "estimate_dosa_montecarlo",
    "eve_success_exhaustive",
    "exhaustive_secrecy_audit",
    "min_entropy_bound",
    "required_block_length",
    "required_error_floor",
    "run_config_text",
    "run_nbkg",
    "run_preset",
    "simulate_keyless",
]

__version__ = "0.1.0"
