"""Shared canonical text form.

Terms arrive already sorted; this module only renders signs, coefficients and
separators:  coefficients as reduced fractions ("3/2"), "*" between a
coefficient and its monomial, explicit " + " / " - " separators, a bare "-"
prefix on a leading negative term, and "0" for the zero element.
"""

from __future__ import annotations

from fractions import Fraction


def render_terms(items: list[tuple[str, Fraction]]) -> str:
    """items: (monomial text, coefficient) pairs in final order.

    The monomial text is "" for the constant term.  Coefficients are nonzero.
    """
    if not items:
        return "0"
    parts: list[str] = []
    for monomial, coeff in items:
        negative = coeff < 0
        mag = -coeff if negative else coeff
        if monomial == "":
            body = str(mag)
        elif mag == 1:
            body = monomial
        else:
            body = f"{mag}*{monomial}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)
