"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class InadmissibleError(DomainError):
    """Pattern covers every residue class modulo some prime."""

    def __init__(self, pattern, prime):
        self.pattern = pattern
        self.prime = prime
        super().__init__(f"inadmissible: covers residues mod {prime}")


class CapacityError(OverflowError):
    """Request exceeds a documented size ceiling."""
