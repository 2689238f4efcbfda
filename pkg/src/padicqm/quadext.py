"""Arithmetic in the quadratic extension Q_p(sqrt(mu)).

Elements are stored through their selfconjugate and anticonjugate
coordinates, z = sc + ac*sqrt(mu).  The extension context validates that
mu is a non-square, classifies the extension (square class, ramification)
and precomputes the scaling needed to reduce mu to a canonical
representative of its square class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import padic
from .errors import ContextMismatch, DivisionByZero, MuIsSquare, ValidationError
from .padic import PadicContext, PadicNumber


@dataclass(frozen=True, slots=True)
class Magnitude:
    """Exact ultrametric absolute value p**(exp2/2); exp2 None means 0.

    Half-integer exponents occur in ramified extensions, so the exponent
    is carried as an integer doubled exponent instead of a float.
    """

    p: int
    exp2: int | None

    @classmethod
    def zero(cls, p: int) -> Magnitude:
        return cls(p, None)

    @classmethod
    def one(cls, p: int) -> Magnitude:
        return cls(p, 0)

    @property
    def is_zero(self) -> bool:
        return self.exp2 is None

    @property
    def is_one(self) -> bool:
        return self.exp2 == 0

    def exponent(self) -> Fraction:
        if self.is_zero:
            raise ZeroDivisionError("zero magnitude has no exponent")
        return Fraction(self.exp2, 2)

    def as_fraction(self) -> Fraction:
        """The value as an exact rational; fails on half-integer exponents."""
        if self.is_zero:
            return Fraction(0)
        if self.exp2 % 2:
            raise ValidationError("half-integer exponent is not rational")
        return Fraction(self.p) ** (self.exp2 // 2)

    def _key(self) -> tuple[int, int]:
        # zero sorts below every power of p
        return (0, 0) if self.is_zero else (1, self.exp2)

    def __lt__(self, other: Magnitude) -> bool:
        self._same_base(other)
        return self._key() < other._key()

    def __le__(self, other: Magnitude) -> bool:
        self._same_base(other)
        return self._key() <= other._key()

    def __gt__(self, other: Magnitude) -> bool:
        return not self <= other

    def __ge__(self, other: Magnitude) -> bool:
        return not self < other

    def __mul__(self, other: Magnitude) -> Magnitude:
        self._same_base(other)
        if self.is_zero or other.is_zero:
            return Magnitude.zero(self.p)
        return Magnitude(self.p, self.exp2 + other.exp2)

    def _same_base(self, other: Magnitude) -> None:
        if self.p != other.p:
            raise ContextMismatch("magnitudes for different primes")

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if self.exp2 == 0:
            return "1"
        if self.exp2 % 2 == 0:
            return f"{self.p}^{self.exp2 // 2}"
        return f"{self.p}^({self.exp2}/2)"


@dataclass(frozen=True, slots=True)
class ExtensionContext:
    """The extension Q_p(sqrt(mu)) for a validated non-square mu.

    ``reduced_mu`` is mu with the square factor divided out (valuation in
    {0, 1} for odd p, the canonical class label for p = 2) and
    ``sqrt_scale`` is the exact s with mu = s**2 * reduced_mu.
    """

    base: PadicContext
    mu: PadicNumber
    mu_class: int = field(init=False, repr=False, compare=False)
    reduced_mu: PadicNumber = field(init=False, repr=False, compare=False)
    sqrt_scale: PadicNumber = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.mu.context != self.base:
            raise ContextMismatch("mu must live in the base context")
        if self.mu.is_zero:
            raise ValidationError("mu must be nonzero")
        if padic.is_square(self.mu):
            raise MuIsSquare(f"mu is a square in Q_{self.base.p}")
        label = padic.square_class(self.mu)
        if self.base.p == 2:
            reduced = self.base.from_int(label)
            scale = padic.sqrt(self.mu / reduced)
        else:
            v = self.mu.valuation
            t = (v - v % 2) // 2
            reduced = PadicNumber(self.base, v - 2 * t, self.mu.unit, self.mu.prec)
            scale = PadicNumber(self.base, t, 1, self.base.precision)
        object.__setattr__(self, "mu_class", label)
        object.__setattr__(self, "reduced_mu", reduced)
        object.__setattr__(self, "sqrt_scale", scale)

    @property
    def p(self) -> int:
        return self.base.p

    def is_ramified(self) -> bool:
        """True unless the value group of the extension is p**Z."""
        if self.p == 2:
            return self.mu_class != 5
        return self.reduced_mu.valuation == 1

    def is_isomorphic_to(self, other: ExtensionContext) -> bool:
        """Contexts build isomorphic extensions iff the classes of mu agree."""
        return self.base.p == other.base.p and self.mu_class == other.mu_class

    # -- constructors -------------------------------------------------------

    def element(self, sc: PadicNumber, ac: PadicNumber) -> QuadExtElement:
        return QuadExtElement(self, sc, ac)

    def from_base(self, x: PadicNumber) -> QuadExtElement:
        return QuadExtElement(self, x, self.base.zero())

    def from_ints(self, sc: int, ac: int) -> QuadExtElement:
        return QuadExtElement(self, self.base.from_int(sc), self.base.from_int(ac))

    def zero(self) -> QuadExtElement:
        return self.from_ints(0, 0)

    def one(self) -> QuadExtElement:
        return self.from_ints(1, 0)

    def sqrt_mu(self) -> QuadExtElement:
        return self.from_ints(0, 1)


@dataclass(frozen=True, slots=True)
class QuadExtElement:
    """z = sc + ac*sqrt(mu) with exact p-adic coordinates."""

    context: ExtensionContext
    sc: PadicNumber
    ac: PadicNumber

    def __post_init__(self) -> None:
        if self.sc.context != self.context.base or self.ac.context != self.context.base:
            raise ContextMismatch("coordinates must live in the base context")

    @property
    def is_zero(self) -> bool:
        return self.sc.is_zero and self.ac.is_zero

    def _check_context(self, other: QuadExtElement) -> None:
        if self.context != other.context:
            raise ContextMismatch("operands live in different extensions")

    def conj(self) -> QuadExtElement:
        return QuadExtElement(self.context, self.sc, -self.ac)

    def __add__(self, other: QuadExtElement) -> QuadExtElement:
        self._check_context(other)
        return QuadExtElement(self.context, self.sc + other.sc, self.ac + other.ac)

    def __neg__(self) -> QuadExtElement:
        return QuadExtElement(self.context, -self.sc, -self.ac)

    def __sub__(self, other: QuadExtElement) -> QuadExtElement:
        return self + (-other)

    def __mul__(self, other: QuadExtElement) -> QuadExtElement:
        self._check_context(other)
        mu = self.context.mu
        sc = self.sc * other.sc + mu * self.ac * other.ac
        ac = self.sc * other.ac + self.ac * other.sc
        return QuadExtElement(self.context, sc, ac)

    def norm_form(self) -> PadicNumber:
        """z * conj(z) = sc**2 - mu * ac**2, an element of the base field."""
        return self.sc * self.sc - self.context.mu * self.ac * self.ac

    def inv(self) -> QuadExtElement:
        if self.is_zero:
            raise DivisionByZero("cannot invert zero")
        d = self.norm_form().inv()
        return QuadExtElement(self.context, self.sc * d, -(self.ac * d))

    def __truediv__(self, other: QuadExtElement) -> QuadExtElement:
        return self * other.inv()

    def ext_abs(self) -> Magnitude:
        """|z| = sqrt(|z conj(z)|_p), exact with a possibly half exponent."""
        if self.is_zero:
            return Magnitude.zero(self.context.p)
        return Magnitude(self.context.p, -self.norm_form().valuation)

    def scale_base(self, a: PadicNumber) -> QuadExtElement:
        """Multiply by a base-field scalar."""
        return QuadExtElement(self.context, a * self.sc, a * self.ac)

    def __repr__(self) -> str:
        return f"QuadExt({self.sc!r} + {self.ac!r}*sqrt(mu))"


def quad_sum(context: ExtensionContext, terms: list[QuadExtElement]) -> QuadExtElement:
    """Componentwise sum with a single final truncation per coordinate."""
    for t in terms:
        if t.context != context:
            raise ContextMismatch("operands live in different extensions")
    sc = padic.padic_sum(context.base, [t.sc for t in terms])
    ac = padic.padic_sum(context.base, [t.ac for t in terms])
    return QuadExtElement(context, sc, ac)
