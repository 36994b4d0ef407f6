"""Parsing and printing of univariate integer polynomials such as ``2*t^2+t-1``."""

from __future__ import annotations

import re

_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_poly(text: str, var: str) -> list[int]:
    """Parse ``text`` into a little-endian list of integer coefficients.

    Accepted terms: ``c``, ``c*v``, ``v``, ``v^k``, ``c*v^k`` (also ``c v^k``
    without the star). Coefficients may be negative; nothing is reduced.

    >>> parse_poly("t^2+1", "t")
    [1, 0, 1]
    >>> parse_poly("-T + 3", "T")
    [3, -1]
    """
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        if var in body:
            head, _, tail = body.partition(var)
            head = head.rstrip("*")
            c = int(head) if head else 1
            if tail == "":
                k = 1
            elif tail.startswith("^"):
                k = int(tail[1:])
            else:
                raise ValueError(f"cannot parse term {body!r} in {text!r}")
        else:
            c, k = int(body), 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial {text!r}")
    deg = max(coeffs)
    return [coeffs.get(i, 0) for i in range(deg + 1)]


def format_poly(coeffs, var: str) -> str:
    """Inverse of :func:`parse_poly` for nonnegative coefficients, highest degree first."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"
