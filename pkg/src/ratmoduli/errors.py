"""Exception types.  Each carries a stable ``code`` used by the CLI."""

from __future__ import annotations


class RatModuliError(Exception):
    code = "error"


class DivisionByZero(RatModuliError, ZeroDivisionError):
    code = "division_by_zero"


class FieldMismatch(RatModuliError):
    code = "field_mismatch"


class ParseError(RatModuliError):
    code = "parse_error"


class UnknownVariablePair(RatModuliError):
    code = "unknown_variable_pair"


class IndexTooLarge(RatModuliError):
    code = "index_too_large"


class OrderMismatch(RatModuliError):
    code = "order_mismatch"


class DegenerateMap(RatModuliError):
    code = "degenerate_map"


class NotAFixedPoint(RatModuliError):
    code = "not_a_fixed_point"


class NonRescalable(RatModuliError):
    code = "non_rescalable"


class DegenerateLocus(RatModuliError):
    code = "degenerate_locus"


class ZeroPoint(RatModuliError):
    code = "zero_point"


class SingularConic(RatModuliError):
    code = "singular_conic"


class PointNotOnConic(RatModuliError):
    code = "point_not_on_conic"


class PreconditionViolated(RatModuliError):
    code = "precondition_violated"


class OnBadLocus(RatModuliError):
    code = "on_bad_locus"


class BetaNotInField(RatModuliError):
    code = "beta_not_in_field"


class UnhandledLocus(RatModuliError):
    code = "unhandled_locus"


class AutomorphismLocus(RatModuliError):
    code = "automorphism_locus"


class InvalidPoint(RatModuliError):
    code = "invalid_point"


class VerificationFailed(RatModuliError):
    """A model failed its own invariant check; indicates a bug."""

    code = "verification_failed"
