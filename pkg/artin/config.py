"""
Resource limits shared by the ball builders, the searches and the command line.
"""
import os
from dataclasses import dataclass, replace
from fractions import Fraction

from .exceptions import ValidationException

BUDGET_ENV_VAR = 'ARTIN_BUDGET'


@dataclass(frozen=True)
class Limits:
    """
    :param budget: maximum number of vertices any single ball may hold.
    :param window: exponent window; from a coset vertex only ``c x^j`` with ``|j| <= window`` is expanded.
    :param bounded_k: number of exponents checked for vertex-elliptic endpoints of label 3 or more.
    :param n0_window: largest exponent tried when searching for the separating threshold.
    :param max_depth: hard limit on quasi-tree depths.
    :param max_radius: hard limit on link radii, as a multiple of pi.
    """
    budget: int = 200_000
    window: int = 2
    bounded_k: int = 4
    n0_window: int = 16
    max_depth: int = 12
    max_radius: Fraction = Fraction(4)

    def __post_init__(self):
        for name in ('budget', 'window', 'bounded_k', 'n0_window', 'max_depth'):
            if getattr(self, name) <= 0:
                raise ValidationException(f"Limit {name} must be positive, got {getattr(self, name)}")

    @classmethod
    def from_env(cls, environ=None) -> 'Limits':
        environ = os.environ if environ is None else environ
        raw = environ.get(BUDGET_ENV_VAR)
        if raw is None:
            return cls()
        try:
            return cls(budget=int(raw))
        except ValueError:
            raise ValidationException(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}")

    def override(self, **kwargs) -> 'Limits':
        """
        Copy with the given fields replaced; ``None`` values are ignored so CLI defaults pass straight through.

        >>> Limits().override(window=5, budget=None).window
        5
        """
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT_LIMITS = Limits()
