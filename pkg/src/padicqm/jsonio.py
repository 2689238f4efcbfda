"""JSON encoding and decoding of every wire format the CLI speaks.

Numbers serialize with little-endian digit lists; exact zero carries a
null valuation.  Operators are either exact blocks or generator windows
with an affine decay declaration.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .errors import ParseError
from .hilbert import PVector
from .operators import (
    BlockOperator,
    CanonicalDecomposition,
    GeneratorOperator,
    MatrixOperator,
    OperatorClassification,
    SymmetricDecomposition,
    affine_certificate,
)
from .padic import PadicContext, PadicNumber
from .quadext import ExtensionContext, Magnitude, QuadExtElement
from .states import PadicDistribution, Sovm, StatisticalOperator


def padic_to_dict(x: PadicNumber) -> dict[str, Any]:
    out: dict[str, Any] = {
        "p": x.context.p,
        "precision": x.context.precision,
        "valuation": x.valuation,
    }
    if not x.is_zero:
        out["digits"] = x.digits()
    return out


def padic_from_dict(data: Any, context: PadicContext | None = None) -> PadicNumber:
    try:
        ctx = context or PadicContext(int(data["p"]), int(data["precision"]))
        if data["valuation"] is None:
            return ctx.zero()
        return ctx.from_digits(int(data["valuation"]), [int(d) for d in data["digits"]])
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad p-adic number: {exc}") from exc


def quadext_to_dict(z: QuadExtElement) -> dict[str, Any]:
    return {
        "mu": padic_to_dict(z.context.mu),
        "sc": padic_to_dict(z.sc),
        "ac": padic_to_dict(z.ac),
    }


def quadext_from_dict(data: Any, context: ExtensionContext) -> QuadExtElement:
    try:
        sc = padic_from_dict(data["sc"], context.base)
        ac = padic_from_dict(data["ac"], context.base)
        return QuadExtElement(context, sc, ac)
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad extension element: {exc}") from exc


def context_to_dict(context: ExtensionContext) -> dict[str, Any]:
    return {
        "p": context.base.p,
        "precision": context.base.precision,
        "mu": padic_to_dict(context.mu),
    }


def context_from_dict(data: Any) -> ExtensionContext:
    try:
        base = PadicContext(int(data["p"]), int(data["precision"]))
        return ExtensionContext(base, padic_from_dict(data["mu"], base))
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad extension context: {exc}") from exc


def magnitude_to_dict(m: Magnitude) -> dict[str, Any]:
    return {"p": m.p, "exp2": m.exp2, "display": str(m)}


def vector_to_dict(v: PVector) -> dict[str, Any]:
    return {"entries": {str(i): quadext_to_dict(z) for i, z in v.items()}}


def vector_from_dict(data: Any, context: ExtensionContext) -> PVector:
    try:
        return PVector(
            context,
            {int(i): quadext_from_dict(z, context) for i, z in data["entries"].items()},
        )
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad vector: {exc}") from exc


def operator_to_dict(a: MatrixOperator) -> dict[str, Any]:
    if isinstance(a, BlockOperator):
        return {
            "kind": "block_finite",
            "context": context_to_dict(a.context),
            "dim": a.dim,
            "entries": [[quadext_to_dict(z) for z in row] for row in a.rows],
        }
    if isinstance(a, GeneratorOperator):
        decay = a.decay_decl
        if decay is None:
            raise ParseError("only affine-certificate generators serialize")
        return {
            "kind": "generator",
            "context": context_to_dict(a.context),
            "window": a.window,
            "entries": [
                [quadext_to_dict(a.entry(m, n)) for n in range(1, a.window + 1)]
                for m in range(1, a.window + 1)
            ],
            "decay": decay,
        }
    raise ParseError("unknown operator kind")


def operator_from_dict(data: Any) -> MatrixOperator:
    try:
        context = context_from_dict(data["context"])
        kind = data["kind"]
        if kind == "block_finite":
            rows = [
                [quadext_from_dict(z, context) for z in row] for row in data["entries"]
            ]
            if len(rows) != int(data["dim"]):
                raise ParseError("dim does not match the entry grid")
            return BlockOperator(context, rows)
        if kind == "generator":
            window = int(data["window"])
            rows = [
                [quadext_from_dict(z, context) for z in row] for row in data["entries"]
            ]
            decay = data["decay"]
            cert = affine_certificate(
                Fraction(str(decay.get("base", 0))),
                Fraction(str(decay.get("row_coeff", 0))),
                Fraction(str(decay.get("col_coeff", 0))),
                diagonal_only=decay.get("support", "all") == "diagonal",
            )

            def entry_fn(m: int, n: int) -> QuadExtElement:
                return rows[m - 1][n - 1]

            decl = {
                "base": decay.get("base", 0),
                "row_coeff": decay.get("row_coeff", 0),
                "col_coeff": decay.get("col_coeff", 0),
                "support": decay.get("support", "all"),
            }
            return GeneratorOperator(context, window, entry_fn, cert, decay_decl=decl)
        raise ParseError(f"unknown operator kind {kind!r}")
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad operator: {exc}") from exc


def classification_to_dict(c: OperatorClassification) -> dict[str, Any]:
    def flag(f):
        out = {"holds": f.holds, "verdict": f.verdict.value}
        if f.witness is not None:
            out["witness"] = f.witness
        return out

    return {
        "bounded": flag(c.bounded),
        "adjointable": flag(c.adjointable),
        "self_adjoint": flag(c.self_adjoint),
        "compact": flag(c.compact),
        "trace_class": flag(c.trace_class),
        "traceable_wrt_standard_basis": flag(c.traceable_wrt_standard_basis),
    }


def canonical_decomposition_to_dict(d: CanonicalDecomposition) -> list[dict[str, Any]]:
    return [
        {
            "weight": quadext_to_dict(lam),
            "left": vector_to_dict(e),
            "right": vector_to_dict(f),
        }
        for lam, e, f in d.terms
    ]


def symmetric_decomposition_to_dict(d: SymmetricDecomposition) -> list[dict[str, Any]]:
    return [
        {
            "sigma": quadext_to_dict(sig),
            "left": vector_to_dict(e),
            "right": vector_to_dict(f),
        }
        for sig, e, f in d.terms
    ]


def distribution_to_dict(d: PadicDistribution) -> dict[str, Any]:
    return {
        "weights": [padic_to_dict(w) for w in d.weights],
        "in_simplex": d.is_in_simplex(),
        "sup_norm": str(d.sup_norm()),
    }


def sovm_to_dict(s: Sovm) -> dict[str, Any]:
    return {"dim": s.dim, "effects": [operator_to_dict(a) for a in s.effects]}


def sovm_from_dict(data: Any) -> Sovm:
    from .states import make_sovm

    try:
        effects = [operator_from_dict(e) for e in data["effects"]]
    except KeyError as exc:
        raise ParseError(f"bad SOVM: {exc}") from exc
    if not all(isinstance(e, BlockOperator) for e in effects):
        raise ParseError("SOVM effects must be block operators")
    return make_sovm(effects)  # type: ignore[arg-type]


def statistical_from_dict(data: Any) -> StatisticalOperator:
    from .states import make_statistical

    op = operator_from_dict(data)
    if not isinstance(op, BlockOperator):
        raise ParseError("statistical operators must be block operators")
    return make_statistical(op)
