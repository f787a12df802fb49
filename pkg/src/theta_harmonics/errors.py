"""Exception types shared across the package."""


class ThetaHarmonicsError(Exception):
    pass


class InvalidParameters(ThetaHarmonicsError, ValueError):
    """Malformed input: wrong lengths, negative degrees, r < 2, ..."""


class NotACharacter(ThetaHarmonicsError, ValueError):
    """A Laurent polynomial has no non-negative expansion in the irreducible basis."""


class MethodDisagreement(ThetaHarmonicsError):
    """Two multiplicity methods returned different values for the same query."""

    def __init__(self, label, n, values):
        self.label = label
        self.n = n
        self.values = dict(values)
        detail = ", ".join(f"{k}={v}" for k, v in self.values.items())
        super().__init__(f"methods disagree for {label} at n={n}: {detail}")


class SizeCapExceeded(ThetaHarmonicsError):
    """A computation would exceed its configured size cap."""

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class OracleConventionError(ThetaHarmonicsError):
    """The coordinate weights or trace invariants fail their built-in consistency check."""
