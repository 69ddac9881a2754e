"""Symbolic special constants with high-precision numeric values."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exact import DEFAULT_PREC, bigfloat

__all__ = [
    "ConstantSymbol",
    "DivergentConstantError",
    "zeta",
    "ln2",
    "li",
    "sigma0",
    "catalan",
    "ti",
    "psi",
    "MZV_BASIS_COUNTS",
    "MZV_BASIS_UP_TO_WEIGHT_7",
]


class DivergentConstantError(ArithmeticError):
    """Raised when asking for the numeric value of a divergent symbol."""


_NAMES = {"zeta", "ln", "Li", "sigma0", "catalan", "Ti", "psi", "pi", "gammaE", "sigma"}


@dataclass(frozen=True)
class ConstantSymbol:
    """A named special constant, e.g. ``zeta(3)`` or ``Li4(1/2)``.

    ``args`` holds exact parameters; ``sigma`` carries a harmonic index
    tuple and is evaluated through :func:`nestsum.sums.limit_to_infinity`.
    """

    name: str
    args: tuple = ()

    def __post_init__(self):
        if self.name not in _NAMES:
            raise ValueError(f"unknown constant {self.name!r}")

    def __str__(self):
        n, a = self.name, self.args
        if n == "zeta":
            return f"zeta({a[0]})"
        if n == "ln":
            return f"ln({a[0]})"
        if n == "Li":
            return f"Li{a[0]}({a[1]})"
        if n == "Ti":
            return f"Ti{a[0]}(1)"
        if n == "psi":
            return f"psi^({a[0]})({a[1]})"
        if n == "sigma":
            return "sigma[" + ",".join(map(str, a)) + "]"
        return n

    @property
    def is_divergent(self) -> bool:
        return self.name == "sigma0"

    def evaluate(self, prec: int = DEFAULT_PREC) -> mpmath.mpf:
        if self.name == "sigma0":
            raise DivergentConstantError("sigma0 denotes the divergent harmonic series")
        with mpmath.workdps(prec + 10):
            v = self._value()
        return bigfloat(v, prec)

    def _value(self):
        n, a = self.name, self.args
        if n == "zeta":
            return mpmath.zeta(a[0])
        if n == "ln":
            return mpmath.log(bigfloat(Fraction(a[0]), mpmath.mp.dps))
        if n == "Li":
            return mpmath.polylog(a[0], bigfloat(Fraction(a[1]), mpmath.mp.dps))
        if n == "catalan":
            return +mpmath.catalan
        if n == "Ti":
            k = a[0]
            return (mpmath.zeta(k, 0.25) - mpmath.zeta(k, 0.75)) / mpmath.mpf(4) ** k
        if n == "psi":
            return mpmath.psi(a[0], bigfloat(Fraction(a[1]), mpmath.mp.dps))
        if n == "pi":
            return +mpmath.pi
        if n == "gammaE":
            return +mpmath.euler
        if n == "sigma":
            from .sums import limit_to_infinity

            res = limit_to_infinity(a, prec=mpmath.mp.dps)
            if not res.converged:
                raise DivergentConstantError(res.reason)
            return res.value
        raise AssertionError(n)


def zeta(k: int) -> ConstantSymbol:
    if k < 2:
        raise ValueError("zeta(k) needs k >= 2; use sigma0 for k = 1")
    return ConstantSymbol("zeta", (k,))


def ln2() -> ConstantSymbol:
    return ConstantSymbol("ln", (2,))


def li(k: int, x="1/2") -> ConstantSymbol:
    return ConstantSymbol("Li", (k, Fraction(x)))


def sigma0() -> ConstantSymbol:
    return ConstantSymbol("sigma0")


def catalan() -> ConstantSymbol:
    return ConstantSymbol("catalan")


def ti(k: int) -> ConstantSymbol:
    return ConstantSymbol("Ti", (k,))


def psi(k: int, x) -> ConstantSymbol:
    return ConstantSymbol("psi", (k, Fraction(x)))


# reference data only: newly contributing basis elements per weight for
# MZVs over {0, 1, -1}; not derived by this package
MZV_BASIS_COUNTS = {1: 2, 2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 4, 8: 5, 9: 8, 10: 11, 11: 18, 12: 25}

MZV_BASIS_UP_TO_WEIGHT_7 = (
    sigma0(),
    ln2(),
    zeta(2),
    zeta(3),
    li(4),
    zeta(5),
    li(5),
    li(6),
    ConstantSymbol("sigma", (-5, -1)),
    zeta(7),
    li(7),
    ConstantSymbol("sigma", (-5, 1, 1)),
    ConstantSymbol("sigma", (5, -1, -1)),
)
