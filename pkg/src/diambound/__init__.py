"""Certified base-case verification for polyhedral diameter bounds of the form
f(d, n) = (n - d)^log2(beta + d/alpha)."""

from .bounds import (
    BoundParams,
    check_superlinearity,
    exponent_base,
    larman_value,
    make_params,
)
from .certificate import Certificate, FailureReport, loads, replay_certificate
from .checker import BaseCaseChecker, CheckerConfig, auto_l, find_n_L, run_checker
from .threshold import certify_dab, certify_dab_override, build_threshold_polynomial
from .compare import (
    AdaptiveInterval,
    ComparisonOutcome,
    ProvenEqual,
    ProvenGreater,
    ProvenLess,
    check_inductive_inequality,
    compare_int_vs_power,
    threshold_holds_at,
)
from .errors import BudgetExceeded, Exhausted, InvalidParams, NotFound, OutOfRange, Undecidable
from .falsifier import BivariatePolynomial, evaluate_inductive_gap, find_violation
from .table import DiameterTable, RollingTable, oracle_tilde, tilde_delta

__version__ = "0.1.0"
