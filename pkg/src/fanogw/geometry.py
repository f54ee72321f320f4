"""The geometry: a Fano complete intersection in projective space and
the handful of integer constants every formula is built from."""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod


class MultiDegree:
    """A smooth complete intersection of hypersurfaces of the given
    degrees in P^{n-1}.  Degrees are normalized (sorted); all formulas
    are symmetric in them.

    Rejects non-Fano input (index <= 0), linear factors (d < 2) and
    dimension < 1.
    """

    __slots__ = ("n", "degrees")

    def __init__(self, n: int, degrees):
        degs = tuple(sorted(int(d) for d in degrees))
        n = int(n)
        if any(d < 2 for d in degs):
            raise ValueError("every degree must be >= 2")
        if n - 1 - len(degs) < 1:
            raise ValueError("complete intersection must have dimension >= 1")
        if n - sum(degs) < 1:
            raise ValueError("Fano index must be >= 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "degrees", degs)

    def __setattr__(self, name, value):
        raise AttributeError("MultiDegree is immutable")

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        """Sum of the degrees."""
        return sum(self.degrees)

    @property
    def dd(self) -> int:
        """prod d_k^{d_k}."""
        return prod(d**d for d in self.degrees)

    @property
    def dfact(self) -> int:
        """prod d_k!."""
        return prod(factorial(d) for d in self.degrees)

    @property
    def nu(self) -> int:
        """Fano index n - sum(d)."""
        return self.n - self.total

    @property
    def dim(self) -> int:
        return self.n - 1 - self.r

    @property
    def bmax(self) -> int:
        """Largest degree with a (possibly) nonzero one-point invariant."""
        return (self.n - 1) // self.nu

    @property
    def svr_threshold(self) -> int:
        """Degrees above this have standard = reduced a priori."""
        return (self.n - 2 - self.r) // self.nu

    def inv_degree_sum(self) -> Fraction:
        return sum((Fraction(1, d) for d in self.degrees), Fraction(0))

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiDegree)
                and self.n == other.n and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.n, self.degrees))

    def __repr__(self) -> str:
        return f"MultiDegree({self.n}, {self.degrees})"

    def label(self) -> str:
        return f"X_{self.n}({','.join(str(d) for d in self.degrees)})"
