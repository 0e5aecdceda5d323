"""Exception hierarchy shared by every subpackage."""


class TribautoError(Exception):
    """Base class for all errors raised by tribauto."""


class InvalidWord(TribautoError, ValueError):
    pass


class DomainError(TribautoError, ValueError):
    pass


class DegenerateInput(TribautoError, ArithmeticError):
    """An exact sign test evaluated to zero where irrationality forbids it."""


class PrecisionCapExceeded(TribautoError, ArithmeticError):
    def __init__(self, what, bits, n=None):
        self.what = what
        self.bits = bits
        self.n = n
        where = f" at n={n}" if n is not None else ""
        super().__init__(f"{what}: not certified at {bits} bits{where}")


class VerificationFailed(TribautoError):
    def __init__(self, layer, detail=""):
        self.layer = layer
        self.detail = detail
        super().__init__(f"verification failed in {layer}: {detail}".rstrip(": "))


class AlphabetMismatch(TribautoError, ValueError):
    pass


class ConstructionDiverged(TribautoError):
    pass


class CapExceeded(TribautoError):
    def __init__(self, message, *args):
        self.args_detail = args
        super().__init__(message)


class ProbeInconclusive(TribautoError):
    def __init__(self, period, window):
        self.period = period
        self.window = window
        super().__init__(f"no violation of period {period} found in window 2..{window}")


class BoundViolated(TribautoError):
    def __init__(self, n, a_n, floor_value):
        self.n = n
        super().__init__(f"A_{n} = {a_n} is not within 1 of floor(psi*{n}) = {floor_value}")
