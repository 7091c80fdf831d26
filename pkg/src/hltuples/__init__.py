"""Hardy-Littlewood constants, the function h(n), and prime-tuple censuses."""

from .errors import CapacityError, DomainError, InadmissibleError
from .patterns import Pattern, is_admissible, is_symmetric, nu
from .primes import factorize, nth_prime, primes_up_to, primorial
from .singular import C2, singular_series, twin_constant_for

__all__ = [
    "C2",
    "CapacityError",
    "DomainError",
    "InadmissibleError",
    "Pattern",
    "factorize",
    "is_admissible",
    "is_symmetric",
    "nth_prime",
    "nu",
    "primes_up_to",
    "primorial",
    "singular_series",
    "twin_constant_for",
]

__version__ = "0.1.0"
