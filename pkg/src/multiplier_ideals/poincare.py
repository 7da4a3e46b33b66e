"""Poincaré series of multiplier ideals in closed rational form.

Only exponents in ``(0, 1]`` are computed; every later multiplicity follows
from ``m(c + k) = m(c) + k * rho_c`` where ``rho_c = -F . H_c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import ResolutionData
from .errors import MalformedInput
from .jumping import candidates, maximal_jumping_divisor, multiplicity

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
MINUS = "−"


@dataclass(frozen=True)
class PoincareTerm:
    c: Fraction
    m: int
    rho: Fraction


@dataclass(frozen=True)
class PoincareSeries:
    terms: tuple[PoincareTerm, ...]
    e: int

    def numerator(self) -> dict[int, int]:
        """Integer coefficients of the numerator over ``(1 - z^e)^2``, by z-degree."""
        coeffs: dict[int, int] = {}
        for t in self.terms:
            d = int(t.c * self.e)
            rho = int(t.rho)
            coeffs[d] = coeffs.get(d, 0) + t.m
            coeffs[d + self.e] = coeffs.get(d + self.e, 0) + rho - t.m
        return {d: v for d, v in sorted(coeffs.items()) if v}


def poincare_series(rd: ResolutionData) -> PoincareSeries:
    terms = []
    for c in candidates(rd, 0, 1):
        m = multiplicity(c, rd).m
        rho_c = maximal_jumping_divisor(c, rd).dicritical_sum
        if m or rho_c:
            terms.append(PoincareTerm(c, m, rho_c))
    e = math.lcm(1, *(t.c.denominator for t in terms))
    return PoincareSeries(tuple(terms), e)


def expand(ps: PoincareSeries, N: int) -> list[tuple[Fraction, int]]:
    """Exponents ``<= N`` with positive coefficient, in increasing order."""
    if N < 1:
        raise MalformedInput("expansion order must be at least 1")
    out = []
    for t in ps.terms:
        k = 0
        while t.c + k <= N:
            coeff = t.m + k * t.rho
            if coeff > 0:
                out.append((t.c + k, int(coeff)))
            k += 1
    return sorted(out)


def _power(var: str, exponent: Fraction | int) -> str:
    if isinstance(exponent, Fraction) and exponent.denominator != 1:
        return f"{var}^({exponent})"
    return f"{var}^{exponent}"


def _monomial(var: str, degree: int) -> str:
    if degree == 0:
        return "1"
    if degree == 1:
        return var
    return var + str(degree).translate(_SUPERSCRIPT)


def _polynomial(coeffs: dict[int, int], var: str) -> str:
    parts = []
    for degree, coeff in sorted(coeffs.items()):
        mono = _monomial(var, degree)
        size = abs(coeff)
        body = mono if size == 1 and degree else (f"{size}" if not degree else f"{size}{mono}")
        if not parts:
            parts.append(body if coeff > 0 else f"{MINUS}{body}")
        else:
            parts.append(f" + {body}" if coeff > 0 else f" {MINUS} {body}")
    return "".join(parts) or "0"


def render(ps: PoincareSeries, style: str = "closed") -> str:
    """Text form of the series.

    ``closed`` lists one ``(m/(1-t) + rho*t/(1-t)^2) * t^c`` block per
    exponent; ``rational-function`` writes a single quotient in ``z = t^(1/e)``.
    """
    if style == "closed":
        return " + ".join(
            f"({t.m}/(1{MINUS}t) + {t.rho}·t/(1{MINUS}t)²)·{_power('t', t.c)}"
            for t in ps.terms
        ) or "0"
    if style == "rational-function":
        num = ps.numerator()
        text = _polynomial(num, "z")
        if len(num) > 1:
            text = f"({text})"
        return f"{text}/(1{MINUS}{_monomial('z', ps.e)})²"
    raise MalformedInput(f"unknown render style {style!r}")
