"""p-adic probability distributions, statistical operators and SOVMs.

Weights of a distribution are exact p-adic numbers summing to 1; the
probability simplex is the subfamily with all weights of magnitude at
most 1.  States enter through self-adjoint trace-class operators of unit
trace, paired with selfadjoint-operator-valued measures via the trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ContextMismatch,
    DegenerateNormalizer,
    DimensionMismatch,
    NotSelfAdjoint,
    SumNotIdentity,
    SumNotOne,
    TraceNotOne,
    TraceNotZero,
    ValidationError,
    ZeroInput,
)
from .hilbert import PVector, inner_product
from .operators import (
    BlockOperator,
    Magnitude,
    canonical_decomposition,
    classify,
    identity,
    operator_norm,
    rank_one,
    symmetric_decomposition,
    trace,
)
from .padic import PadicContext, PadicNumber, padic_sum
from .quadext import QuadExtElement


@dataclass(frozen=True)
class PadicDistribution:
    """Finite family of Q_p weights summing exactly to 1."""

    context: PadicContext
    weights: tuple[PadicNumber, ...]

    def __post_init__(self) -> None:
        for w in self.weights:
            if w.context != self.context:
                raise ContextMismatch("weight from a different context")
        if padic_sum(self.context, list(self.weights)) != self.context.one():
            raise SumNotOne("weights must sum to 1")

    def sup_norm(self) -> Fraction:
        return max((w.abs_p() for w in self.weights), default=Fraction(0))

    def is_in_simplex(self) -> bool:
        """All weights in Z_p, i.e. of magnitude at most 1."""
        return all(w.abs_p() <= 1 for w in self.weights)


def validate_distribution(context: PadicContext, weights: list[PadicNumber]) -> PadicDistribution:
    return PadicDistribution(context, tuple(weights))


def product_distribution(a: PadicDistribution, b: PadicDistribution) -> PadicDistribution:
    """The distribution {a_j * b_k} on the product index set."""
    return PadicDistribution(
        a.context, tuple(x * y for x in a.weights for y in b.weights)
    )


# -- convex and affine combinations -------------------------------------------


def _coefficient_sum(coefficients: list[PadicNumber]) -> PadicNumber:
    if not coefficients:
        raise ZeroInput("need at least one coefficient")
    return padic_sum(coefficients[0].context, coefficients)


def is_affine_combination(coefficients: list[PadicNumber]) -> bool:
    """Coefficients in Q_p summing to 1."""
    ctx = coefficients[0].context
    return _coefficient_sum(coefficients) == ctx.one()


def is_convex_combination(coefficients: list[PadicNumber]) -> bool:
    """Affine with every coefficient in Z_p."""
    return is_affine_combination(coefficients) and all(
        c.abs_p() <= 1 for c in coefficients
    )


def affine_combine(points: list, coefficients: list[PadicNumber]):
    """Linear combination of vectors or operators with affine weights.

    Mixing statistical operators returns a statistical operator; the
    combination of block operators or vectors is returned as such.
    """
    if len(points) != len(coefficients):
        raise DimensionMismatch("points and coefficients must align")
    if not is_affine_combination(coefficients):
        raise SumNotOne("coefficients must sum to 1")
    first = points[0]
    if isinstance(first, StatisticalOperator):
        mix = _combine_blocks([s.op for s in points], coefficients)
        return make_statistical(mix)
    if isinstance(first, BlockOperator):
        return _combine_blocks(points, coefficients)
    if isinstance(first, PVector):
        acc = points[0].scale(first.context.from_base(coefficients[0]))
        for v, c in zip(points[1:], coefficients[1:]):
            acc = acc + v.scale(v.context.from_base(c))
        return acc
    raise ValidationError("unsupported point type")


def _combine_blocks(ops: list[BlockOperator], coefficients: list[PadicNumber]) -> BlockOperator:
    ctx = ops[0].context
    acc = ops[0].scale(ctx.from_base(coefficients[0]))
    for op, c in zip(ops[1:], coefficients[1:]):
        acc = acc + op.scale(ctx.from_base(c))
    return acc


# -- statistical and density operators ----------------------------------------


@dataclass(frozen=True)
class StatisticalOperator:
    """Self-adjoint trace-class block with trace exactly 1."""

    op: BlockOperator

    def norm(self) -> Magnitude:
        return operator_norm(self.op)


@dataclass(frozen=True)
class ZeroTraceOperator:
    """Self-adjoint trace-class block with trace exactly 0."""

    op: BlockOperator

    def norm(self) -> Magnitude:
        return operator_norm(self.op)


def _require_self_adjoint(op: BlockOperator) -> None:
    if not classify(op).self_adjoint.holds:
        raise NotSelfAdjoint("operator is not self-adjoint")


def make_statistical(op: BlockOperator) -> StatisticalOperator:
    _require_self_adjoint(op)
    tr = trace(op)
    if tr != op.context.one():
        raise TraceNotOne("trace must be exactly 1")
    return StatisticalOperator(op)


def make_zero_trace(op: BlockOperator) -> ZeroTraceOperator:
    _require_self_adjoint(op)
    if not trace(op).is_zero:
        raise TraceNotZero("trace must be exactly 0")
    return ZeroTraceOperator(op)


def is_density(s: StatisticalOperator) -> bool:
    """Norm exactly 1, cross-checked on the canonical decomposition."""
    by_norm = s.norm().is_one
    weights = [lam.ext_abs() for lam, _, _ in canonical_decomposition(s.op).terms]
    one = Magnitude.one(s.op.context.p)
    by_weights = bool(weights) and all(w <= one for w in weights) and max(weights) == one
    if by_norm != by_weights:
        raise ValidationError("internal error: density checks disagree")
    return by_norm


def simple_statistical(
    phi: PVector, psi: PVector, sigma: QuadExtElement
) -> StatisticalOperator | ZeroTraceOperator:
    """Normalized sigma |phi><psi| + conj(sigma) |psi><phi|.

    With <phi, psi> != 0 the result has trace 1; orthogonal pairs give the
    zero-trace variant.  A vanishing normalizer is an error rather than a
    silent fallback.
    """
    if phi.is_zero or psi.is_zero:
        raise ZeroInput("vectors must be nonzero")
    if sigma.is_zero:
        raise ZeroInput("sigma must be nonzero")
    ctx = phi.context
    ip = inner_product(phi, psi)
    dim = max(phi.support() + psi.support())
    raw = rank_one(phi, psi, dim).scale(sigma) + rank_one(psi, phi, dim).scale(sigma.conj())
    if ip.is_zero:
        normalizer = sigma + sigma.conj()
        if normalizer.is_zero:
            raise DegenerateNormalizer("sigma + conj(sigma) = 0 for an orthogonal pair")
        return make_zero_trace(raw.scale(normalizer.inv()))
    normalizer = sigma * inner_product(psi, phi) + sigma.conj() * ip
    if normalizer.is_zero:
        raise DegenerateNormalizer("trace normalizer vanishes")
    return make_statistical(raw.scale(normalizer.inv()))


def zero_trace_perturb(s: StatisticalOperator, t: BlockOperator) -> StatisticalOperator:
    """s + t for a self-adjoint zero-trace t; the result stays statistical."""
    _require_self_adjoint(t)
    if not trace(t).is_zero:
        raise TraceNotZero("perturbation must have trace 0")
    return make_statistical(s.op + t)


def split_zero_trace(s: StatisticalOperator) -> tuple[ZeroTraceOperator, StatisticalOperator]:
    """Partition a symmetric decomposition by <e_j, f_j> = 0 versus != 0.

    Returns (S0, S1) with s = S0 + S1, trace(S0) = 0 and trace(S1) = 1.
    """
    dec = symmetric_decomposition(s.op)
    ctx = s.op.context
    dim = s.op.dim
    from .operators import zero_operator

    s0 = zero_operator(ctx, dim)
    s1 = zero_operator(ctx, dim)
    for sig, e, f in dec.terms:
        term = rank_one(e, f, dim).scale(sig) + rank_one(f, e, dim).scale(sig.conj())
        if inner_product(e, f).is_zero:
            s0 = s0 + term
        else:
            s1 = s1 + term
    return make_zero_trace(s0), make_statistical(s1)


# -- SOVMs and the trace pairing -----------------------------------------------


@dataclass(frozen=True)
class Sovm:
    """Finite family of self-adjoint blocks summing exactly to the identity."""

    effects: tuple[BlockOperator, ...]
    dim: int

    def norm_bound(self) -> Magnitude:
        return max(operator_norm(a) for a in self.effects)

    def is_contractive(self) -> bool:
        one = Magnitude.one(self.effects[0].context.p)
        return all(operator_norm(a) <= one for a in self.effects)


def make_sovm(effects: list[BlockOperator]) -> Sovm:
    if not effects:
        raise ZeroInput("need at least one effect")
    dim = effects[0].dim
    ctx = effects[0].context
    acc = None
    for a in effects:
        if a.dim != dim:
            raise DimensionMismatch("effects must share one block dimension")
        _require_self_adjoint(a)
        acc = a if acc is None else acc + a
    if acc != identity(ctx, dim):
        raise SumNotIdentity("effects must sum to the identity")
    return Sovm(tuple(effects), dim)


def sovm_from_symmetric_decomposition(s: StatisticalOperator) -> Sovm:
    """Effects Id - S and one summand per symmetric-decomposition term."""
    dec = symmetric_decomposition(s.op)
    dim = s.op.dim
    effects = [identity(s.op.context, dim) - s.op]
    for sig, e, f in dec.terms:
        effects.append(rank_one(e, f, dim).scale(sig) + rank_one(f, e, dim).scale(sig.conj()))
    return make_sovm(effects)


def pair(sovm: Sovm, s: StatisticalOperator) -> PadicDistribution:
    """The p-adic probability distribution {tr(A_i S)}.

    Every value lies in Q_p; the total is exactly 1.  A density operator
    paired with a contractive SOVM lands in the probability simplex.
    """
    if sovm.dim != s.op.dim:
        raise DimensionMismatch("SOVM and state have different block dimensions")
    values = []
    for a in sovm.effects:
        t = trace(a * s.op)
        if not t.ac.is_zero:
            raise ValidationError("internal error: pairing value left the base field")
        values.append(t.sc)
    return PadicDistribution(s.op.context.base, tuple(values))
