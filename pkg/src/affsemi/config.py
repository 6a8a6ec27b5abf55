from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    """Resource caps shared by the algebra engines.

    Exceeding any cap raises :class:`affsemi.errors.ResourceBound` rather than
    silently truncating a result.
    """

    max_spairs: int = 200_000
    max_standard_monomials: int = 100_000
    max_betti_degrees: int = 50_000
    max_factorizations: int = 1_000_000
    n_max: int = 8


DEFAULT_LIMITS = Limits()
