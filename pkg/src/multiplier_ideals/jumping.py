"""Maximal jumping divisors, multiplicities and jumping numbers.

The multiplier ideal at exponent ``c`` is ``pi_* O(ceil(K - cF))``.  The
ideal just before ``c`` is obtained by adding the maximal jumping divisor
``H_c`` (components with ``k_i - c e_i`` integral) to the exponent divisor,
so no epsilon ever has to be chosen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Divisor, RationalLike, ReducedDivisor, ResolutionData, as_rational, frac_part
from .errors import CrossCheckError, MalformedInput
from .unloading import ideal_codim, virtual_codim


@dataclass(frozen=True)
class MaximalJumpingDivisor:
    c: Fraction
    support: ReducedDivisor
    components: tuple[frozenset[int], ...]
    dicritical_sum: Fraction

    @property
    def n_components(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class MultiplicityRecord:
    c: Fraction
    m: int
    m_by_intersection: int
    m_by_sum: int
    m_by_virtual: int


@dataclass(frozen=True)
class JumpingReport:
    hi: Fraction
    entries: tuple[tuple[Fraction, int], ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.entries)


@dataclass(frozen=True)
class DicriticalVerdict:
    jumping: bool
    rule: str  # "threshold", "boundary" or "direct"


def _positive(c: RationalLike) -> Fraction:
    c = as_rational(c)
    if c <= 0:
        raise MalformedInput(f"exponent must be positive, got {c}")
    return c


def maximal_jumping_divisor(c: RationalLike, rd: ResolutionData) -> MaximalJumpingDivisor:
    c = as_rational(c)
    support = frozenset(
        i for i in range(rd.n) if (rd.K[i] - c * rd.F[i]).denominator == 1
    )
    return MaximalJumpingDivisor(
        c,
        ReducedDivisor(rd.n, support),
        rd.graph.connected_components(support),
        sum((rd.rho[i] for i in support), Fraction(0)),
    )


def ceil_relative(c: RationalLike, rd: ResolutionData) -> Divisor:
    """``ceil(K - cF)``, the divisor whose pushforward is the multiplier ideal."""
    c = as_rational(c)
    return Divisor(tuple(Fraction(math.ceil(k - c * e)) for k, e in zip(rd.K, rd.F)))


def ceil_relative_before(c: RationalLike, rd: ResolutionData) -> Divisor:
    """``ceil(K - (c - eps)F)`` for small eps, i.e. ``ceil(K - cF) + H_c``."""
    H = maximal_jumping_divisor(c, rd)
    return ceil_relative(c, rd) + H.support.as_divisor()


def _adjacent_frac_sum(c: Fraction, i: int, rd: ResolutionData) -> Fraction:
    return sum(
        (frac_part(c * rd.F[j] - rd.K[j]) for j in rd.graph.neighbors(i)), Fraction(0)
    )


def intersection_lemma(c: RationalLike, i: int, rd: ResolutionData) -> Fraction:
    """``(ceil(K - cF) + H_c) . E_i`` for ``E_i`` in ``H_c``.

    Evaluated both as an intersection product and through the local formula
    ``-2 + c rho_i + a_H(E_i) + sum_adj {c e_j - k_j}``; they must agree.
    """
    c = as_rational(c)
    H = maximal_jumping_divisor(c, rd)
    if i not in H.support:
        raise MalformedInput(f"E_{i + 1} is not a component of H_{c}")
    g = rd.graph
    direct = g.dot_component(ceil_relative(c, rd) + H.support.as_divisor(), i)
    in_h = sum(1 for j in g.neighbors(i) if j in H.support)
    local = -2 + c * rd.rho[i] + in_h + _adjacent_frac_sum(c, i, rd)
    if direct != local:
        raise CrossCheckError(
            f"intersection lemma failed at c={c}, E_{i + 1}: {direct} != {local}"
        )
    return direct


def _as_int(value: Fraction, what: str, c: Fraction) -> int:
    if value.denominator != 1:
        raise CrossCheckError(f"{what} multiplicity at c={c} is not integral: {value}")
    return int(value)


def multiplicity(c: RationalLike, rd: ResolutionData) -> MultiplicityRecord:
    """``m(c) = dim J(a^(c-eps)) / J(a^c)`` by three independent formulas."""
    c = _positive(c)
    g = rd.graph
    x = [c * e - k for k, e in zip(rd.K, rd.F)]  # c e_i - k_i
    floors = [math.floor(v) for v in x]
    fracs = [v - f for v, f in zip(x, floors)]
    support = frozenset(i for i, f in enumerate(fracs) if not f)
    ncc = len(g.connected_components(support))
    Hdiv = Divisor.from_support(rd.n, support)

    ceil_div = Divisor(tuple(Fraction(-f) for f in floors))  # ceil(K - cF)
    by_intersection = g.intersect(ceil_div + Hdiv, Hdiv) + ncc

    by_sum = sum(
        (sum((fracs[j] for j in g.neighbors(i)), Fraction(0)) + c * rd.rho[i] for i in support),
        Fraction(0),
    ) - ncc

    floor_div = -ceil_div
    by_virtual = virtual_codim(floor_div, rd) - virtual_codim(floor_div - Hdiv, rd)

    values = (
        _as_int(by_intersection, "intersection-form", c),
        _as_int(by_sum, "sum-form", c),
        _as_int(by_virtual, "virtual-codimension", c),
    )
    if len(set(values)) != 1 or values[0] < 0:
        raise CrossCheckError(f"multiplicity formulas disagree at c={c}: {values}")
    return MultiplicityRecord(c, values[0], *values)


def multiplicity_by_closure(c: RationalLike, rd: ResolutionData) -> int:
    """``m(c)`` as a difference of codimensions of two complete ideals.

    Goes through antinef closures, so it shares nothing with
    :func:`multiplicity` beyond the definition of ``H_c``.
    """
    c = _positive(c)
    H = maximal_jumping_divisor(c, rd).support.as_divisor()
    floor_div = Divisor(tuple(Fraction(math.floor(c * e - k)) for k, e in zip(rd.K, rd.F)))
    return _as_int(
        ideal_codim(floor_div, rd) - ideal_codim(floor_div - H, rd), "closure", c
    )


def candidates(rd: ResolutionData, lo: RationalLike, hi: RationalLike) -> list[Fraction]:
    """All ``(k_i + m)/e_i`` with integral ``m`` lying in ``(lo, hi]``."""
    lo, hi = as_rational(lo), as_rational(hi)
    if lo < 0 or hi <= lo:
        raise MalformedInput(f"need 0 <= lo < hi, got ({lo}, {hi}]")
    out: set[Fraction] = set()
    for k, e in zip(rd.K, rd.F):
        m_min = math.floor(lo * e - k) + 1
        m_max = math.floor(hi * e - k)
        out.update(Fraction(k + m) / e for m in range(m_min, m_max + 1))
    return sorted(out)


def criterion_holds(c: RationalLike, rd: ResolutionData) -> bool:
    """Some connected piece ``H`` of ``H_c`` has ``(ceil(K - cF) + H_c) . H > -1``."""
    c = as_rational(c)
    H = maximal_jumping_divisor(c, rd)
    D = ceil_relative(c, rd) + H.support.as_divisor()
    g = rd.graph
    return any(
        sum((g.dot_component(D, i) for i in piece), Fraction(0)) > -1
        for piece in H.components
    )


def is_jumping_number(c: RationalLike, rd: ResolutionData) -> bool:
    c = _positive(c)
    by_mult = multiplicity(c, rd).m > 0
    if by_mult != criterion_holds(c, rd):
        raise CrossCheckError(f"jumping criterion disagrees with m(c) > 0 at c={c}")
    return by_mult


def jumping_numbers(
    rd: ResolutionData, hi: RationalLike, lo: RationalLike = 0
) -> JumpingReport:
    """Jumping numbers in ``(lo, hi]`` with their multiplicities."""
    hi = _positive(hi)
    entries = []
    for c in candidates(rd, lo, hi):
        m = multiplicity(c, rd).m
        if m > 0:
            entries.append((c, m))
    return JumpingReport(hi, tuple(entries))


def growth_check(c: RationalLike, rd: ResolutionData) -> Fraction:
    """``m(c+1) - m(c)``, checked against ``-F . H_c`` and ``[0, rho]``."""
    c = _positive(c)
    diff = Fraction(multiplicity(c + 1, rd).m - multiplicity(c, rd).m)
    H = maximal_jumping_divisor(c, rd)
    expected = -rd.graph.intersect(rd.F, H.support.as_divisor())
    if diff != expected or expected != H.dicritical_sum or not 0 <= diff <= rd.rho_total:
        raise CrossCheckError(
            f"growth law fails at c={c}: m(c+1)-m(c)={diff}, -F.H_c={expected}"
        )
    return diff


def dicritical_jumping(i: int, k: int, rd: ResolutionData) -> DicriticalVerdict:
    """Decide whether ``k / e_i`` is a jumping number for a dicritical ``E_i``.

    Above ``1/rho_i`` the answer is yes and at ``1/rho_i`` it is read off
    ``H_lam``, provided ``E_i`` itself lies in ``H_lam``.  That holds whenever
    ``k_i`` is an integer; otherwise the multiplicity decides.
    """
    if not 0 <= i < rd.n or rd.rho[i] <= 0:
        raise MalformedInput(f"E_{i + 1} is not dicritical")
    if k <= 0:
        raise MalformedInput("k must be a positive integer")
    lam = Fraction(k) / rd.F[i]
    if (rd.K[i] - k).denominator != 1:
        # E_i is not in H_lam (non-integral k_i), so neither shortcut applies
        return DicriticalVerdict(is_jumping_number(lam, rd), "direct")
    threshold = 1 / rd.rho[i]
    if lam > threshold:
        return DicriticalVerdict(True, "threshold")
    if lam == threshold:
        H = maximal_jumping_divisor(lam, rd)
        only_dicritical = rd.dicritical() == (i,)
        return DicriticalVerdict(not (len(H.support) == rd.n and only_dicritical), "boundary")
    return DicriticalVerdict(is_jumping_number(lam, rd), "direct")


@dataclass(frozen=True)
class StructureReport:
    c: Fraction
    clauses: tuple[str, ...]


def structure_check(c: RationalLike, rd: ResolutionData) -> StructureReport:
    """Verify the combinatorial constraints every maximal jumping divisor obeys.

    Raises :class:`CrossCheckError` on the first violated clause.
    """
    c = _positive(c)
    g = rd.graph
    H = maximal_jumping_divisor(c, rd)
    D = ceil_relative(c, rd) + H.support.as_divisor()
    clauses = []

    def fail(msg: str) -> None:
        raise CrossCheckError(f"H_{c}: {msg}")

    for i in H.support:
        value = intersection_lemma(c, i, rd)
        if value < -1:
            fail(f"(ceil(K-cF)+H_c).E_{i + 1} = {value} < -1")
        integral = c * rd.rho[i] + _adjacent_frac_sum(c, i, rd)
        if integral.denominator != 1:
            fail(f"c rho + adjacent fractional parts at E_{i + 1} is {integral}")
    clauses.append("component intersections >= -1")

    for piece in H.components:
        value = sum((g.dot_component(D, i) for i in piece), Fraction(0))
        if value < -1:
            fail(f"piece {sorted(j + 1 for j in piece)} has intersection {value} < -1")
    clauses.append("connected piece intersections >= -1")

    def special(i: int) -> str | None:
        if g.degree(i) >= 3:
            return "rupture"
        if rd.rho[i] > 0:
            return "dicritical"
        return None

    for piece in H.components:
        if len(piece) == 1:
            (i,) = piece
            kind = special(i)
            if kind is None:
                if g.degree(i) == 2 and _adjacent_frac_sum(c, i, rd) == 1:
                    kind = "two neighbours with fractional sum 1"
                else:
                    fail(f"isolated E_{i + 1} is of no allowed kind")
            clauses.append(f"isolated E_{i + 1}: {kind}")
        else:
            for i in sorted(piece):
                if sum(1 for j in g.neighbors(i) if j in piece) != 1:
                    continue
                kind = special(i) or ("end of E" if g.degree(i) == 1 else None)
                if kind is None:
                    fail(f"end E_{i + 1} of a reducible piece is of no allowed kind")
                clauses.append(f"end E_{i + 1}: {kind}")
    return StructureReport(c, tuple(clauses))
