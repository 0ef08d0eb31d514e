"""Denominators of Bernoulli polynomials: the Kellner-Sondow product and its statistics."""

from bernden.errors import (
    CheckpointMismatchError,
    DomainError,
    RangeError,
    ResourceError,
    UsageError,
)
from bernden.primes import PrimeSieve, build_sieve, largest_prime_factor, primes_in
from bernden.digits import DigitExpansion, digit_sum, expand
from bernden.pncore import (
    Comparison,
    PnRecord,
    TransitionRecord,
    classify_transition,
    largest_pn_prime,
    log_pn_plus_fast,
    omega_plus_fast,
    pn_prime_set,
    pn_record,
    pn_value,
    qn,
)

__version__ = "0.1.0"

__all__ = [
    "CheckpointMismatchError",
    "Comparison",
    "DigitExpansion",
    "DomainError",
    "PnRecord",
    "PrimeSieve",
    "RangeError",
    "ResourceError",
    "TransitionRecord",
    "UsageError",
    "build_sieve",
    "classify_transition",
    "digit_sum",
    "expand",
    "largest_pn_prime",
    "largest_prime_factor",
    "log_pn_plus_fast",
    "omega_plus_fast",
    "pn_prime_set",
    "pn_record",
    "pn_value",
    "primes_in",
    "qn",
]
