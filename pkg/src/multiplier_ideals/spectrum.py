"""Hodge spectrum of a generic plane curve of the ideal.

Uses the combinatorial description of the spectrum in terms of the rooted
resolution tree of a smooth surface germ: rupture and dicritical components
away from the root each contribute through the maximal jumping divisor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .core import RationalLike, ResolutionData, as_rational, frac_part
from .errors import InvalidResolution
from .jumping import candidates, maximal_jumping_divisor


@dataclass(frozen=True)
class RootedResolution:
    base: ResolutionData
    parent: tuple[int | None, ...]
    special: frozenset[int]

    @property
    def root(self) -> int:
        return self.base.root  # type: ignore[return-value]


def rooted(rd: ResolutionData) -> RootedResolution:
    """Orient the dual tree away from the first blow-up."""
    if not rd.smooth_origin or rd.root is None:
        raise InvalidResolution("the spectrum formula needs a smooth origin with a root")
    g = rd.graph
    parent: list[int | None] = [None] * rd.n
    seen = {rd.root}
    queue = deque([rd.root])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                parent[w] = v
                queue.append(w)
    if len(seen) != rd.n:
        raise InvalidResolution("dual graph is not connected")
    return RootedResolution(rd, tuple(parent), rupture_set_of(rd))


def rupture_set_of(rd: ResolutionData) -> frozenset[int]:
    return frozenset(
        i for i in range(rd.n)
        if i != rd.root and (rd.graph.degree(i) >= 3 or rd.rho[i] > 0)
    )


def rupture_set(rr: RootedResolution) -> frozenset[int]:
    """Non-root components that are rupture (>= 3 neighbours) or dicritical."""
    return rr.special


def spectrum_parts(c: RationalLike, rr: RootedResolution) -> tuple[Fraction, Fraction]:
    """The two summands ``(n', n'')`` of the combinatorial formula at ``c``.

    Meaningful for ``c`` in ``(0, 1]``.  Past 1 the same expression returns the
    ideal's jumping multiplicity instead of a spectral multiplicity.
    """
    c = as_rational(c)
    rd = rr.base
    H = maximal_jumping_divisor(c, rd).support
    n1 = sum(1 for i in rr.special if i in H and rr.parent[i] in H)
    n2 = Fraction(0)
    for i in rr.special | {rr.root}:
        if i in H:
            adj = sum((frac_part(c * rd.F[j]) for j in rd.graph.neighbors(i)), Fraction(0))
            n2 += -1 + adj + c * rd.rho[i]
    return Fraction(n1), n2


def spectrum_formula(c: RationalLike, rr: RootedResolution) -> Fraction:
    """``n'(c) + n''(c)`` evaluated verbatim, for any rational ``c``."""
    n1, n2 = spectrum_parts(c, rr)
    return n1 + n2


def spectrum_multiplicity(c: RationalLike, rr: RootedResolution) -> int:
    """Multiplicity of ``c`` in the Hodge spectrum.

    The formula is used on ``(0, 1]``; on ``(1, 2)`` the spectrum is read off
    through its symmetry about 1.  Other exponents get the raw formula.
    """
    c = as_rational(c)
    at = 2 - c if 1 < c < 2 else c
    total = spectrum_formula(at, rr)
    if total.denominator != 1:
        raise InvalidResolution(f"spectral multiplicity at {c} is not integral: {total}")
    return int(total)


def spectrum_table(rr: RootedResolution) -> list[tuple[Fraction, int]]:
    """Spectral numbers in ``(0, 2)`` with positive multiplicity."""
    low = []
    for c in candidates(rr.base, 0, 1):
        n = spectrum_multiplicity(c, rr)
        if n > 0:
            low.append((c, n))
    high = [(2 - c, n) for c, n in reversed(low) if c != 1]
    return low + high
