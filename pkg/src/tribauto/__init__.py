"""Fibonacci and Tribonacci numeration, exact oracles for psi and phi, and automata checks."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AlphabetMismatch,
    BoundViolated,
    CapExceeded,
    ConstructionDiverged,
    DegenerateInput,
    DomainError,
    InvalidWord,
    PrecisionCapExceeded,
    ProbeInconclusive,
    TribautoError,
    VerificationFailed,
)
from .numeration import (  # noqa: E402
    FIB,
    TRIB,
    DigitWord,
    NumerationSystem,
    PairWord,
    basis_term,
    decode,
    encode,
    is_valid,
    least_term,
    pair_align,
)
