class EngineError(Exception):
    """Base error for the engine.

    `code` is a stable identifier used in reports and HTTP responses;
    `input_error` separates bad requests from failed computations.
    """

    code = "engine_error"
    input_error = False

    def __init__(self, detail: str = ""):
        self.detail = detail or self.code
        super().__init__(self.detail)

    def to_dict(self) -> dict:
        return {"code": self.code, "detail": self.detail}


class InvalidInput(EngineError):
    code = "invalid_input"
    input_error = True


class BadPrime(EngineError):
    code = "bad_prime"
    input_error = True


class UnsupportedType(EngineError):
    code = "unsupported_type"
    input_error = True


class NoIntegralRho(EngineError):
    code = "no_integral_rho"
    input_error = True


class WindowTooSmall(EngineError):
    code = "window_too_small"
    input_error = True


class AmbientMismatch(EngineError):
    code = "ambient_mismatch"
    input_error = True


class UnsupportedPair(EngineError):
    code = "unsupported_pair"
    input_error = True


class WrongSubalgebra(EngineError):
    code = "wrong_subalgebra"
    input_error = True


class NotLocal(EngineError):
    code = "not_local"
    input_error = True


class NotAField(EngineError):
    code = "not_a_field"
    input_error = True


class LeviVanishingViolated(EngineError):
    code = "levi_vanishing_violated"
    input_error = True


class NotInOrbit(EngineError):
    code = "not_in_orbit"
    input_error = True


class NotIdempotent(EngineError):
    code = "not_idempotent"
    input_error = True


class TauConstructionFailed(EngineError):
    code = "tau_construction_failed"


class NotUniqueMax(EngineError):
    code = "not_unique_max"


class NotProjective(EngineError):
    code = "not_projective"


class NoKnownZFiltration(EngineError):
    code = "no_known_z_filtration"


class SplitFailedRetry(EngineError):
    code = "split_failed_retry"


class Inconclusive(EngineError):
    code = "inconclusive"


class InternalInvariantViolated(EngineError):
    code = "internal_invariant"
