"""Exact p-adic arithmetic with tracked significant digits.

A nonzero number is stored as p**valuation * unit, where the unit carries
``prec`` known base-p digits (at most the context precision, which is the
cap every freshly constructed value starts from).  Operations propagate
the honest precision: products keep the smaller operand precision, sums
lose digits only under additive cancellation, and cancellation that
destroys every known digit raises PrecisionExhausted instead of
pretending the result is zero.  Equality compares numbers at their common
tracked precision, which is exactly the decidable notion the model
certifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ContextMismatch,
    DivisionByZero,
    InvalidPrime,
    NotASquare,
    PrecisionExhausted,
    UnsupportedForP2,
    ValidationError,
    ZeroInput,
)


def is_prime(n: int) -> bool:
    """Deterministic trial division; meant for desk-scale primes."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def int_valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing the nonzero integer n."""
    if n == 0:
        raise ZeroInput("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True, slots=True)
class PadicContext:
    """A prime p and the cap on significant base-p digits carried."""

    p: int
    precision: int
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InvalidPrime(f"{self.p} is not prime")
        if self.precision < 5:
            raise ValidationError("precision must be at least 5")
        object.__setattr__(self, "modulus", self.p**self.precision)

    def zero(self) -> PadicNumber:
        return PadicNumber(self, None, 0, self.precision)

    def one(self) -> PadicNumber:
        return PadicNumber(self, 0, 1, self.precision)

    def from_int(self, n: int) -> PadicNumber:
        if n == 0:
            return self.zero()
        v = int_valuation(n, self.p)
        return PadicNumber(self, v, (n // self.p**v) % self.modulus, self.precision)

    def from_fraction(self, q: Fraction) -> PadicNumber:
        if q == 0:
            return self.zero()
        num, den = q.numerator, q.denominator
        vn = int_valuation(num, self.p)
        vd = int_valuation(den, self.p)
        num //= self.p**vn
        den //= self.p**vd
        unit = num * pow(den, -1, self.modulus) % self.modulus
        return PadicNumber(self, vn - vd, unit, self.precision)

    def from_digits(self, valuation: int, digits: list[int]) -> PadicNumber:
        """Build a number from little-endian base-p digits of the unit."""
        if not 1 <= len(digits) <= self.precision:
            raise ValidationError("need between 1 and `precision` digits")
        unit = 0
        for d in reversed(digits):
            if not 0 <= d < self.p:
                raise ValidationError("digit out of range")
            unit = unit * self.p + d
        if unit % self.p == 0:
            raise ValidationError("unit must have a nonzero first digit")
        return PadicNumber(self, valuation, unit, len(digits))


def _symmetric(unit: int, modulus: int) -> int:
    """Lift a canonical unit to the symmetric residue system."""
    return unit if unit <= modulus // 2 else unit - modulus


@dataclass(frozen=True, slots=True, eq=False)
class PadicNumber:
    """Element of Q_p known to ``prec`` significant digits.

    ``valuation is None`` encodes exact zero.  The valuation of a nonzero
    number is always exact: the leading digit is known and nonzero.
    """

    context: PadicContext
    valuation: int | None
    unit: int
    prec: int

    def __post_init__(self) -> None:
        if self.valuation is None:
            if self.unit != 0:
                raise ValidationError("zero must carry unit 0")
        else:
            if not 1 <= self.prec <= self.context.precision:
                raise ValidationError("precision out of range")
            if not (0 < self.unit < self.context.p**self.prec) or self.unit % self.context.p == 0:
                raise ValidationError("unit must be reduced and coprime to p")

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    def __eq__(self, other: object) -> bool:
        """Equality at the common tracked precision."""
        if not isinstance(other, PadicNumber):
            return NotImplemented
        if self.context != other.context:
            return False
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.valuation != other.valuation:
            return False
        m = self.context.p ** min(self.prec, other.prec)
        return self.unit % m == other.unit % m

    __hash__ = None  # tracked-precision equality is not hash-compatible

    def eq_mod_precision(self, other: PadicNumber) -> bool:
        return self == other

    def _check_context(self, other: PadicNumber) -> None:
        if self.context != other.context:
            raise ContextMismatch("operands live in different contexts")

    # -- views ----------------------------------------------------------------

    def abs_p(self) -> Fraction:
        """|x|_p = p**(-valuation) as an exact rational; 0 for zero."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.context.p) ** (-self.valuation)

    def digits(self) -> list[int]:
        """The known little-endian base-p digits of the unit part."""
        if self.is_zero:
            raise ZeroInput("exact zero has no digit expansion")
        out, u = [], self.unit
        for _ in range(self.prec):
            u, d = divmod(u, self.context.p)
            out.append(d)
        return out

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: PadicNumber) -> PadicNumber:
        self._check_context(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        p = self.context.p
        absolute = min(self.valuation + self.prec, other.valuation + other.prec)
        a, b = (self, other) if self.valuation <= other.valuation else (other, self)
        d = b.valuation - a.valuation
        s = _symmetric(a.unit, p**a.prec) + p**d * _symmetric(b.unit, p**b.prec)
        if s == 0:
            return self.context.zero()
        v = a.valuation + int_valuation(s, p)
        if v >= absolute:
            raise PrecisionExhausted(
                "cancellation consumed every known digit; raise the precision"
            )
        prec = absolute - v
        unit = (s // p ** (v - a.valuation)) % p**prec
        return PadicNumber(self.context, v, unit, prec)

    def __neg__(self) -> PadicNumber:
        if self.is_zero:
            return self
        m = self.context.p**self.prec
        return PadicNumber(self.context, self.valuation, m - self.unit, self.prec)

    def __sub__(self, other: PadicNumber) -> PadicNumber:
        return self + (-other)

    def __mul__(self, other: PadicNumber) -> PadicNumber:
        self._check_context(other)
        if self.is_zero or other.is_zero:
            return self.context.zero()
        prec = min(self.prec, other.prec)
        unit = self.unit * other.unit % self.context.p**prec
        return PadicNumber(self.context, self.valuation + other.valuation, unit, prec)

    def inv(self) -> PadicNumber:
        if self.is_zero:
            raise DivisionByZero("cannot invert zero")
        m = self.context.p**self.prec
        return PadicNumber(self.context, -self.valuation, pow(self.unit, -1, m), self.prec)

    def __truediv__(self, other: PadicNumber) -> PadicNumber:
        return self * other.inv()

    def __repr__(self) -> str:
        if self.is_zero:
            return f"PadicNumber(p={self.context.p}, 0)"
        return (
            f"PadicNumber(p={self.context.p}, v={self.valuation}, digits={self.digits()})"
        )


# -- squares and square classes ------------------------------------------------


def padic_sum(context: PadicContext, terms: list[PadicNumber]) -> PadicNumber:
    """Sum with a single final truncation.

    Accumulating exactly and truncating once never loses digits to the
    order of summation and only reports PrecisionExhausted when the total
    itself cancels below every known digit.
    """
    live = [t for t in terms if not t.is_zero]
    if not live:
        return context.zero()
    for t in live:
        if t.context != context:
            raise ContextMismatch("operands live in different contexts")
    p = context.p
    v0 = min(t.valuation for t in live)
    absolute = min(t.valuation + t.prec for t in live)
    s = sum(_symmetric(t.unit, p**t.prec) * p ** (t.valuation - v0) for t in live)
    if s == 0:
        return context.zero()
    v = v0 + int_valuation(s, p)
    if v >= absolute:
        raise PrecisionExhausted(
            "cancellation consumed every known digit; raise the precision"
        )
    prec = min(absolute - v, context.precision)
    unit = (s // p ** (v - v0)) % p**prec
    return PadicNumber(context, v, unit, prec)


def is_square(a: PadicNumber) -> bool:
    """True iff a is a square: even valuation and a square unit.

    For odd p the first digit must be a quadratic residue mod p; for p = 2
    the unit must be congruent to 1 mod 8 (needs three known digits).
    """
    if a.is_zero:
        raise ZeroInput("squareness of zero is undefined here")
    if a.valuation % 2:
        return False
    p = a.context.p
    if p == 2:
        if a.prec < 3:
            raise PrecisionExhausted("squareness mod 8 needs three known digits")
        return a.unit % 8 == 1
    return pow(a.unit % p, (p - 1) // 2, p) == 1


def sqrt(a: PadicNumber, companion: bool = False) -> PadicNumber:
    """Square root by Hensel lifting.

    The root keeps the input precision for odd p and loses one digit for
    p = 2.  The default branch has first digit in [1, (p-1)/2] for odd p
    and is congruent to 1 mod 4 for p = 2; ``companion`` negates it.
    """
    if a.is_zero:
        raise ZeroInput("zero has no canonical root branch")
    if not is_square(a):
        raise NotASquare("argument is not a square at this precision")
    p = a.context.p
    u = a.unit
    if p == 2:
        n = a.prec
        r, e = 1, 3
        while e < n:
            if (r * r - u) % (1 << (e + 1)):
                r += 1 << (e - 1)
            e += 1
        prec = n - 1
        r %= 1 << prec
    else:
        n = prec = a.prec
        r = next(x for x in range(1, p) if (x * x - u) % p == 0)
        e = 1
        while e < n:
            e = min(2 * e, n)
            m = p**e
            r = (r - (r * r - u) * pow(2 * r % m, -1, m)) % m
        if not 1 <= r % p <= (p - 1) // 2:
            r = p**n - r
    if companion:
        r = p**prec - r
    return PadicNumber(a.context, a.valuation // 2, r, prec)


def find_eta(context: PadicContext) -> PadicNumber:
    """Least positive quadratic non-residue mod p, as a p-adic unit."""
    if context.p == 2:
        raise UnsupportedForP2("no canonical eta for p = 2; use the eight class labels")
    return context.from_int(_eta_int(context.p))


def _eta_int(p: int) -> int:
    return next(n for n in range(2, p) if pow(n, (p - 1) // 2, p) != 1)


def square_class(a: PadicNumber) -> int:
    """Label of a's coset modulo squares.

    Odd p: one of {1, eta, p, eta*p} with eta the least non-residue.
    p = 2: one of {1, 2, 3, 5, 6, 7, 10, 14}.
    """
    if a.is_zero:
        raise ZeroInput("zero has no square class")
    p = a.context.p
    odd_val = a.valuation % 2 == 1
    if p == 2:
        if a.prec < 3:
            raise PrecisionExhausted("square class mod 8 needs three known digits")
        label = a.unit % 8
        return label * 2 if odd_val else label
    label = 1 if pow(a.unit % p, (p - 1) // 2, p) == 1 else _eta_int(p)
    return label * p if odd_val else label


def square_class_product(context: PadicContext, label_a: int, label_b: int) -> int:
    """Group law on square-class labels: the class of the product."""
    return square_class(context.from_int(label_a * label_b))
