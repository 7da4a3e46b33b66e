"""Antinef closures by unloading, and (virtual) codimensions of complete ideals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Divisor, ResolutionData
from .errors import InvalidResolution, MalformedInput


@dataclass(frozen=True)
class UnloadingStep:
    """One unloading move ``D -> D'``.

    ``theta`` are the components with negative excess on ``ceil(D)`` and
    ``added[i]`` is how many copies of ``E_i`` were added (zero off ``theta``).
    """

    before: Divisor
    after: Divisor
    theta: frozenset[int]
    added: tuple[int, ...]
    tame: bool


@dataclass(frozen=True)
class UnloadingTrace:
    steps: tuple[UnloadingStep, ...]
    result: Divisor


def unloading_step(D: Divisor, rd: ResolutionData) -> tuple[Divisor, frozenset[int], bool]:
    """Unload every negatively excessive component of ``ceil(D)`` at once.

    Returns ``(D', theta, tame)``.  For an antinef ``D`` this is
    ``(ceil(D), {}, True)``.
    """
    step = _step(D, rd)
    return step.after, step.theta, step.tame


def _step(D: Divisor, rd: ResolutionData) -> UnloadingStep:
    g = rd.graph
    if len(D) != g.n:
        raise MalformedInput(f"divisor has {len(D)} entries for {g.n} components")
    base = D.ceil()
    # rho_i = -base.E_i; theta is where it is negative
    rho = [-g.dot_component(base, i) for i in range(g.n)]
    theta = frozenset(i for i, r in enumerate(rho) if r < 0)
    added = tuple(
        math.ceil(rho[i] / g.self_int[i]) if i in theta else 0 for i in range(g.n)
    )
    after = Divisor(tuple(c + a for c, a in zip(base.coeffs, added)))
    tame = all(rho[i] == -1 for i in theta) and not any(
        j in theta for i in theta for j in g.neighbors(i)
    )
    return UnloadingStep(base, after, theta, added, tame)


def antinef_closure(D: Divisor, rd: ResolutionData) -> UnloadingTrace:
    """Unload until antinef.

    The trace records every non-trivial step; an already antinef ``D``
    yields an empty trace with result ``ceil(D)``.
    """
    if not D.is_effective:
        raise MalformedInput("antinef closure is defined for effective divisors")
    # F is antinef with positive coefficients, so the closure sits below
    # max(D) * F and every step adds at least one component
    biggest = max((int(c) for c in D.ceil().coeffs), default=0)
    cap = max(1, biggest) * sum(int(e) for e in rd.F) + 1
    steps = []
    current = D
    while True:
        step = _step(current, rd)
        if not step.theta:
            return UnloadingTrace(tuple(steps), step.after)
        steps.append(step)
        if len(steps) > cap:
            raise InvalidResolution(
                f"unloading did not terminate after {cap} steps; graph data is corrupt"
            )
        current = step.after


def virtual_codim(D: Divisor, rd: ResolutionData) -> Fraction:
    """``-ceil(D).(ceil(D) + K) / 2``."""
    c = D.ceil()
    return -rd.graph.intersect(c, c + rd.K) / 2


def ideal_codim(D: Divisor, rd: ResolutionData) -> Fraction:
    """``dim O / I_D`` for the complete ideal ``I_D = pi_* O(-ceil(D))``.

    Negative coefficients impose no condition on regular functions, so they
    are dropped before unloading.
    """
    return virtual_codim(antinef_closure(D.positive_part(), rd).result, rd)
