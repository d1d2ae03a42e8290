"""Model RB/RD random CSP instances: generation, analysis, encoding, solving."""

from ._core import (
    CspInstance,
    CspParams,
    DerivedSizes,
    ModelKind,
    ParseError,
    RbcspError,
    check_conditions,
    derive_sizes,
    derive_stream,
    distance_profile,
    dpll,
    encode_cnf,
    enumerate_solutions,
    first_moment_log,
    flawed_prob_rb,
    flawed_prob_rd,
    forced_expected_count_log,
    forced_vs_random,
    generate,
    log_sum_exp,
    maximize_exponent,
    p_threshold,
    r_threshold,
    read_native,
    scaling_study,
    second_moment_log,
    solve,
    sweep,
    threesat_profile_exponent,
)

__all__ = [name for name in dir() if not name.startswith("_")]
