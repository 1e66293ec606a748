"""Text and JSON renderings shared by the CLI and the data types."""
from __future__ import annotations

from .algebra.poly import RatK


def coeff_json(c) -> str:
    if isinstance(c, RatK):
        return c.to_json()
    return str(c)


def series_json(s) -> dict:
    return {"val": s.val, "prec": s.prec, "coeffs": [coeff_json(c) for c in s.coefficients()]}


def _term(c, var: str, n: int) -> str:
    mono = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
    cs = str(c)
    if not mono:
        return cs
    if cs == "1":
        return mono
    if any(ch in cs for ch in "+-/") and not (cs.startswith("-") and cs[1:].isalnum()):
        cs = f"({cs})"
    return f"{cs}*{mono}"


def render_terms(pairs, var: str) -> str:
    """Render (coefficient, exponent) pairs as a sum; zero terms are skipped."""
    parts = [_term(c, var, n) for c, n in pairs if c]
    return " + ".join(parts) if parts else "0"


def render_series(s, var: str = "t", max_terms: int | None = None) -> str:
    pairs = [(s.coeff(n), n) for n in range(s.val, s.prec)]
    pairs = [(c, n) for c, n in pairs if c]
    more = max_terms is not None and len(pairs) > max_terms
    if more:
        pairs = pairs[:max_terms]
    body = render_terms(pairs, var)
    tail = " + ..." if more else ""
    rel = f"O({var}^{s.prec})"
    return f"{body}{tail} + {rel}" if body != "0" else rel
