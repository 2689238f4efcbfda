#!/usr/bin/env python3
"""Walk through the library's worked examples and print a JSON report.

Covers square-root digit expansions, elements with z*conj(z) = 2, the
isotropy table, the 2-adic unitary over Q_2(sqrt(14)) and the 4x4
inner-product-preserving operator of norm p that fails unitarity.

    python scripts/worked_examples.py
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from padicqm import (  # noqa: E402
    BlockOperator,
    PadicContext,
    QuadExtElement,
    build_norm_inflating_ip_preserver,
    find_isotropic,
    is_ip_preserving,
    is_unitary,
    isotropy_index,
    operator_norm,
    sqrt,
)
from padicqm.jsonio import operator_to_dict, vector_to_dict  # noqa: E402
from padicqm.quadext import ExtensionContext  # noqa: E402


def ext(p, mu, precision=8):
    base = PadicContext(p, precision)
    return ExtensionContext(base, base.from_int(mu))


def main() -> None:
    report = {}

    roots = {}
    for p, n in [(3, 7), (5, 29), (7, 2), (2, -7)]:
        ctx = PadicContext(p, 5)
        roots[f"sqrt({n}) in Q_{p}"] = sqrt(ctx.from_int(n)).digits()
    report["square_roots"] = roots

    norm_two = {}
    for p, mu, sc_of, ac in [(3, 5, 7, -1), (3, 2, 4, 1), (5, 3, 29, 3), (7, 7, 2, 0)]:
        ctx = ext(p, mu)
        sc = sqrt(ctx.base.from_int(sc_of)) if sc_of != 4 else ctx.base.from_int(2)
        z = QuadExtElement(ctx, sc, ctx.base.from_int(ac))
        norm_two[f"Q_{p}(sqrt{mu})"] = {
            "z_conj_z_is_2": z * z.conj() == ctx.from_ints(2, 0),
            "magnitude": str(z.ext_abs()),
        }
    report["norm_two_elements"] = norm_two

    isotropy = {}
    for p, mu in [(2, 2), (2, 3), (2, 5), (2, 7), (3, 3), (3, 5), (5, 2), (7, 7)]:
        ctx = ext(p, mu)
        isotropy[f"({p},{mu})"] = {
            "index": isotropy_index(ctx),
            "witness": vector_to_dict(find_isotropic(ctx, 3)),
        }
    report["isotropy"] = isotropy

    ctx14 = ext(2, 14)
    a = sqrt(ctx14.base.from_int(-7))
    b = QuadExtElement(ctx14, ctx14.base.zero(), ctx14.base.from_int(2) / a)
    u = BlockOperator(ctx14, [[ctx14.from_base(a), b], [b, ctx14.from_base(a)]])
    report["two_adic_unitary"] = {
        "unitary": is_unitary(u),
        "operator": operator_to_dict(u),
    }

    ctx35 = ext(3, 5)
    x = build_norm_inflating_ip_preserver(ctx35, 1)
    report["ip_preserving_counterexample"] = {
        "ip_preserving": is_ip_preserving(x),
        "unitary": is_unitary(x),
        "norm": str(operator_norm(x)),
    }

    print(json.dumps(report, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
