"""Finitely supported coordinate vectors over Q_p(sqrt(mu)).

Supplies the sup-norm, the canonical inner product, an exact
norm-orthogonality test through residue-field ranks, two-index basis
rotations built from elements with z*conj(z) = 2, and the construction of
isotropic vectors together with the isotropy index of the extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from . import padic
from .errors import (
    ContextMismatch,
    EmptyFamily,
    PrecisionExhausted,
    RequiresOddP,
    SearchBoundExceeded,
    SearchExhausted,
    ValidationError,
)
from .padic import PadicNumber
from .quadext import ExtensionContext, Magnitude, QuadExtElement, quad_sum


class PVector:
    """Sparse vector indexed from 1; exact-zero entries are not stored."""

    __slots__ = ("context", "_entries")

    def __init__(
        self,
        context: ExtensionContext,
        entries: Mapping[int, QuadExtElement] | Iterable[tuple[int, QuadExtElement]],
    ) -> None:
        self.context = context
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict[int, QuadExtElement] = {}
        for i, z in items:
            if i < 1:
                raise ValidationError("indices are 1-based")
            if z.context != context:
                raise ContextMismatch("entry from a different extension")
            if not z.is_zero:
                data[i] = z
        self._entries = dict(sorted(data.items()))

    @property
    def is_zero(self) -> bool:
        return not self._entries

    def support(self) -> list[int]:
        return list(self._entries)

    def entry(self, i: int) -> QuadExtElement:
        return self._entries.get(i, self.context.zero())

    def items(self) -> list[tuple[int, QuadExtElement]]:
        return list(self._entries.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PVector):
            return NotImplemented
        return self.context == other.context and self._entries == other._entries

    def __add__(self, other: PVector) -> PVector:
        if self.context != other.context:
            raise ContextMismatch("vectors from different extensions")
        out = dict(self._entries)
        for i, z in other._entries.items():
            out[i] = out[i] + z if i in out else z
        return PVector(self.context, out)

    def __neg__(self) -> PVector:
        return PVector(self.context, {i: -z for i, z in self._entries.items()})

    def __sub__(self, other: PVector) -> PVector:
        return self + (-other)

    def scale(self, alpha: QuadExtElement) -> PVector:
        return PVector(self.context, {i: alpha * z for i, z in self._entries.items()})

    def __repr__(self) -> str:
        return f"PVector({self._entries!r})"


def basis_vector(context: ExtensionContext, i: int) -> PVector:
    return PVector(context, {i: context.one()})


def inner_product(u: PVector, v: PVector) -> QuadExtElement:
    """Canonical inner product: sum of conj(u_i) * v_i."""
    if u.context != v.context:
        raise ContextMismatch("vectors from different extensions")
    terms = []
    for i, z in u.items():
        w = v.entry(i)
        if not w.is_zero:
            terms.append(z.conj() * w)
    return quad_sum(u.context, terms)


def sup_norm(v: PVector) -> Magnitude:
    norm = Magnitude.zero(v.context.p)
    for _, z in v.items():
        m = z.ext_abs()
        if m > norm:
            norm = m
    return norm


# -- residue fields and the norm-orthogonality criterion ---------------------
#
# A family of norm-1 vectors is norm-orthogonal exactly when its coordinate
# residues are linearly independent over the residue field of the extension.
# General families reduce to this case by scaling each vector to norm 1.
# The residue field is F_p (F_2) for a ramified extension, F_{p^2} for the
# unramified one with odd p, and F_4 for the unramified 2-adic extension.

_PRIME, _QUAD, _GF4 = "prime", "quad", "gf4"


@dataclass(frozen=True)
class _ResidueField:
    p: int
    kind: str
    r: int = 0  # the non-residue with s**2 = r, for kind "quad"

    def zero(self) -> tuple[int, int]:
        return (0, 0)

    def one(self) -> tuple[int, int]:
        return (1, 0)

    def is_zero(self, a: tuple[int, int]) -> bool:
        return a == (0, 0)

    def add(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def neg(self, a: tuple[int, int]) -> tuple[int, int]:
        return ((-a[0]) % self.p, (-a[1]) % self.p)

    def mul(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        if self.kind == _QUAD:
            return (
                (a[0] * b[0] + self.r * a[1] * b[1]) % self.p,
                (a[0] * b[1] + a[1] * b[0]) % self.p,
            )
        if self.kind == _GF4:  # s**2 = s + 1
            return (
                (a[0] * b[0] + a[1] * b[1]) % 2,
                (a[0] * b[1] + a[1] * b[0] + a[1] * b[1]) % 2,
            )
        return (a[0] * b[0] % self.p, 0)

    def inv(self, a: tuple[int, int]) -> tuple[int, int]:
        if self.is_zero(a):
            raise ZeroDivisionError
        if self.kind == _QUAD:
            d = (a[0] * a[0] - self.r * a[1] * a[1]) % self.p
            di = pow(d, -1, self.p)
            return (a[0] * di % self.p, (-a[1]) * di % self.p)
        if self.kind == _GF4:
            table = {(1, 0): (1, 0), (0, 1): (1, 1), (1, 1): (0, 1)}
            return table[a]
        return (pow(a[0], -1, self.p), 0)


def residue_field(context: ExtensionContext) -> _ResidueField:
    p = context.p
    if p == 2:
        if context.mu_class == 5:
            return _ResidueField(2, _GF4)
        return _ResidueField(2, _PRIME)
    if context.reduced_mu.valuation == 0:
        return _ResidueField(p, _QUAD, context.reduced_mu.unit % p)
    return _ResidueField(p, _PRIME)


def _digit(x: PadicNumber) -> int:
    """First base-p digit of an integral number (0 when |x| < 1)."""
    if x.is_zero or x.valuation > 0:
        return 0
    if x.valuation < 0:
        raise ValidationError("residue of a non-integral element")
    return x.unit % x.context.p


def _coordinate_residue(context: ExtensionContext, z: QuadExtElement) -> tuple[int, int]:
    """Residue of an integral z (|z| <= 1) in the residue field."""
    x = z.sc
    y = z.ac * context.sqrt_scale  # coordinate over the reduced radicand
    p = context.p
    if p != 2:
        if context.reduced_mu.valuation == 0:
            return (_digit(x), _digit(y))
        return (_digit(x), 0)
    gamma = context.mu_class
    if gamma == 5:
        # integral basis {1, (1+sqrt(5))/2}:  z = (x - y) + 2y * theta
        try:
            a = x - y
        except PrecisionExhausted:
            a = context.base.zero()
        two = context.base.from_int(2)
        return (_digit(a), _digit(two * y))
    if gamma in (3, 7):
        # uniformizer 1 + sqrt(gamma):  z = (x - y) + y * pi
        try:
            a = x - y
        except PrecisionExhausted:
            a = context.base.zero()
        return (_digit(a), 0)
    return (_digit(x), 0)


def uniformizer(context: ExtensionContext) -> QuadExtElement:
    """An element of magnitude p**(-1/2); only ramified extensions have one."""
    if not context.is_ramified():
        raise ValidationError("unramified extension has no half-exponent element")
    inv_s = context.sqrt_scale.inv()
    root = QuadExtElement(context, context.base.zero(), inv_s)  # sqrt(reduced_mu)
    if context.p == 2 and context.mu_class in (3, 7):
        return context.one() + root
    return root


def _scale_to_unit_norm(v: PVector) -> PVector:
    ctx = v.context
    e2 = sup_norm(v).exp2
    if e2 % 2 == 0:
        c = ctx.from_base(_p_power(ctx, e2 // 2))
    else:
        c = uniformizer(ctx).scale_base(_p_power(ctx, (e2 - 1) // 2))
    return v.scale(c)


def _p_power(ctx: ExtensionContext, k: int) -> PadicNumber:
    return PadicNumber(ctx.base, k, 1, ctx.base.precision)


def is_norm_orthogonal(vectors: list[PVector]) -> bool:
    """Exact test that ||sum a_i v_i|| = max |a_i| ||v_i|| for all scalars.

    Each vector is scaled to norm 1 and the residue rows are tested for
    linear independence over the residue field.  Zero vectors fail.
    """
    if not vectors:
        raise EmptyFamily("need at least one vector")
    ctx = vectors[0].context
    for v in vectors:
        if v.context != ctx:
            raise ContextMismatch("vectors from different extensions")
    if any(v.is_zero for v in vectors):
        return False
    fld = residue_field(ctx)
    scaled = [_scale_to_unit_norm(v) for v in vectors]
    cols = sorted({i for v in scaled for i in v.support()})
    rows = [[_coordinate_residue(ctx, v.entry(i)) for i in cols] for v in scaled]
    return _rank(fld, rows) == len(vectors)


def _rank(fld: _ResidueField, rows: list[list[tuple[int, int]]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next(
            (k for k in range(rank, len(rows)) if not fld.is_zero(rows[k][col])), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = fld.inv(rows[rank][col])
        rows[rank] = [fld.mul(inv, x) for x in rows[rank]]
        for k in range(len(rows)):
            if k != rank and not fld.is_zero(rows[k][col]):
                factor = fld.neg(rows[k][col])
                rows[k] = [
                    fld.add(rows[k][j], fld.mul(factor, rows[rank][j]))
                    for j in range(ncols)
                ]
        rank += 1
    return rank


def is_orthonormal_system(vectors: list[PVector]) -> bool:
    """Norm-orthogonal, all norms 1, and pairwise inner products delta_ij."""
    if not vectors:
        raise EmptyFamily("need at least one vector")
    ctx = vectors[0].context
    one = ctx.one()
    for a, va in enumerate(vectors):
        if not sup_norm(va).is_one:
            return False
        for b, vb in enumerate(vectors):
            expected = one if a == b else ctx.zero()
            if inner_product(va, vb) != expected:
                return False
    return is_norm_orthogonal(vectors)


# -- basis rotations ----------------------------------------------------------


@dataclass(frozen=True)
class BasisRotation:
    """Disjoint two-index rotations e_i -> (e_i + e_j)/z, e_j -> (e_i - e_j)/z.

    Each pair carries a scalar with z*conj(z) = 2 and |z| = 1, which forces
    p != 2.  The images of the standard basis form an orthonormal system.
    """

    context: ExtensionContext
    pairs: tuple[tuple[int, int, QuadExtElement], ...]

    def __post_init__(self) -> None:
        if self.context.p == 2:
            raise RequiresOddP("rotation scalars need |2|_p = 1")
        seen: set[int] = set()
        two = self.context.from_ints(2, 0)
        for i, j, z in self.pairs:
            if i < 1 or j < 1 or i == j:
                raise ValidationError("pair indices must be distinct and 1-based")
            if i in seen or j in seen:
                raise ValidationError("pairs must be disjoint")
            seen.update((i, j))
            if z.context != self.context:
                raise ContextMismatch("rotation scalar from a different extension")
            if z * z.conj() != two or not z.ext_abs().is_one:
                raise ValidationError("need z*conj(z) = 2 with |z| = 1")

    def apply(self, v: PVector) -> PVector:
        if v.context != self.context:
            raise ContextMismatch("vector from a different extension")
        out = {i: z for i, z in v.items()}
        for i, j, z in self.pairs:
            zi = z.inv()
            vi, vj = v.entry(i), v.entry(j)
            out[i] = zi * (vi + vj)
            out[j] = zi * (vi - vj)
        return PVector(self.context, out)

    def apply_inverse(self, v: PVector) -> PVector:
        if v.context != self.context:
            raise ContextMismatch("vector from a different extension")
        out = {i: z for i, z in v.items()}
        for i, j, z in self.pairs:
            ci = z.conj().inv()
            vi, vj = v.entry(i), v.entry(j)
            out[i] = ci * (vi + vj)
            out[j] = ci * (vi - vj)
        return PVector(self.context, out)


def find_norm_two_element(context: ExtensionContext) -> QuadExtElement:
    """Some z with z*conj(z) = 2 and |z| = 1, when one exists (p odd)."""
    if context.p == 2:
        raise RequiresOddP("|z|^2 = |2|_p = 1 fails for p = 2")
    two = context.base.from_int(2)
    for y in range(context.p):
        target = two + context.mu * context.base.from_int(y * y)
        if not target.is_zero and padic.is_square(target):
            return QuadExtElement(context, padic.sqrt(target), context.base.from_int(y))
    raise SearchExhausted("2 is not a norm of this extension")


def rotation_on_pairs(context: ExtensionContext, index_pairs: list[tuple[int, int]]) -> BasisRotation:
    z = find_norm_two_element(context)
    return BasisRotation(context, tuple((i, j, z) for i, j in index_pairs))


# -- isotropic vectors and the isotropy index --------------------------------

# Explicit isotropic coordinates over the canonical 2-adic radicands;
# (a, b) stands for a + b*sqrt(gamma).
_TWO_ADIC_ISOTROPIC = {
    2: [(1, 1), (1, 0)],
    3: [(1, 1), (1, 0), (1, 0)],
    5: [(1, 1), (2, 0)],
    6: [(1, 1), (2, 0), (1, 0)],
    7: [(3, 1), (1, 1), (2, 0)],
    10: [(1, 1), (3, 0)],
    14: [(1, 1), (3, 0), (2, 0)],
}


def sqrt_minus_one(context: ExtensionContext) -> PadicNumber:
    """A root of -1 in Q_p, available exactly when p = 1 mod 4."""
    return padic.sqrt(context.base.from_int(-1))


def _verify_isotropic(v: PVector) -> PVector:
    if v.is_zero or not inner_product(v, v).is_zero:
        raise ValidationError("internal error: candidate is not isotropic")
    return v


def find_isotropic(
    context: ExtensionContext, max_support: int, search_bound: int | None = None
) -> PVector | None:
    """A nonzero v with <v, v> = 0 of minimal support, or None if the
    minimal support exceeds ``max_support``."""
    if max_support < 2:
        return None
    p = context.p
    if p == 2:
        coords = _TWO_ADIC_ISOTROPIC[context.mu_class]
        if len(coords) > max_support:
            return None
        inv_s = context.sqrt_scale.inv()
        entries = {
            k + 1: context.element(context.base.from_int(a), context.base.from_int(b) * inv_s)
            for k, (a, b) in enumerate(coords)
        }
        return _verify_isotropic(PVector(context, entries))
    if p % 4 == 1:
        i = sqrt_minus_one(context)
        v = PVector(
            context, {1: context.one(), 2: context.from_base(i)}
        )
        return _verify_isotropic(v)
    # p = 3 mod 4: support 2 exactly when the reduced radicand is a unit
    if context.reduced_mu.valuation == 0:
        z = _norm_minus_one_element(context, search_bound)
        return _verify_isotropic(PVector(context, {1: z, 2: context.one()}))
    if max_support < 3:
        return None
    a, b = _sum_of_two_squares_is_minus_one(context, search_bound)
    v = PVector(
        context,
        {1: context.from_base(a), 2: context.from_base(b), 3: context.one()},
    )
    return _verify_isotropic(v)


def _norm_minus_one_element(context: ExtensionContext, bound: int | None = None) -> QuadExtElement:
    """z with z*conj(z) = -1, for odd p and a unit reduced radicand."""
    base = context.base
    p = context.p
    r = context.reduced_mu.unit % p
    limit = bound if bound is not None else p * p
    tried = 0
    for x0 in range(p):
        for y0 in range(p):
            tried += 1
            if tried > limit:
                raise SearchBoundExceeded("residue search budget exhausted")
            if (x0 * x0 - r * y0 * y0 + 1) % p:
                continue
            mu_red = context.reduced_mu
            if x0 % p:
                y = base.from_int(y0)
                x = padic.sqrt(mu_red * y * y - base.one())
            else:
                x = base.from_int(x0)
                y = padic.sqrt((x * x + base.one()) / mu_red)
            # back to coordinates over sqrt(mu)
            return context.element(x, y * context.sqrt_scale.inv())
    raise SearchExhausted("-1 is not a norm of this extension")


def _sum_of_two_squares_is_minus_one(
    context: ExtensionContext, bound: int | None = None
) -> tuple[PadicNumber, PadicNumber]:
    """Exact a, b in Q_p with a**2 + b**2 + 1 = 0 (p odd)."""
    base = context.base
    p = context.p
    limit = bound if bound is not None else p * p
    tried = 0
    for a0 in range(p):
        for b0 in range(p):
            tried += 1
            if tried > limit:
                raise SearchBoundExceeded("residue search budget exhausted")
            if (a0 * a0 + b0 * b0 + 1) % p:
                continue
            if a0 % p:
                b = base.from_int(b0)
                a = padic.sqrt(-(base.one() + b * b))
            else:
                a = base.from_int(a0)
                b = padic.sqrt(-(base.one() + a * a))
            return a, b
    raise SearchExhausted("no residue solution; p is not prime?")


def isotropy_index(context: ExtensionContext, search_bound: int | None = None) -> int:
    """Minimal support of a nonzero isotropic vector: always 2 or 3."""
    if find_isotropic(context, 2, search_bound) is not None:
        return 2
    v = find_isotropic(context, 3, search_bound)
    if v is None:
        raise SearchExhausted("no isotropic vector of support <= 3 found")
    return 3
