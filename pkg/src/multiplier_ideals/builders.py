"""Resolution data from Enriques clusters and from monomial ideals ``(x^a, y^b)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import DualGraph, Divisor, ResolutionData, solve_relative_canonical
from .errors import CrossCheckError, InvalidResolution, MalformedInput


@dataclass(frozen=True)
class EnriquesCluster:
    """Points ``p_1 .. p_n`` (0-based here) infinitely near a smooth point.

    ``prox[i]`` lists the earlier points ``p_i`` is proximate to: its
    immediate predecessor, plus at most one more for a satellite point.
    """

    mult: tuple[int, ...]
    prox: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mult", tuple(int(m) for m in self.mult))
        object.__setattr__(self, "prox", tuple(tuple(sorted(set(p))) for p in self.prox))
        if len(self.mult) != len(self.prox) or not self.mult:
            raise MalformedInput("cluster needs one multiplicity and proximity list per point")
        if any(m <= 0 for m in self.mult):
            raise MalformedInput("virtual multiplicities must be positive")
        if self.prox[0]:
            raise MalformedInput("the first point cannot be proximate to anything")
        satellites: set[tuple[int, ...]] = set()
        for i, p in enumerate(self.prox[1:], start=1):
            if not p:
                raise MalformedInput(f"point {i + 1} is not infinitely near the origin")
            if len(p) > 2 or any(not 0 <= j < i for j in p):
                raise MalformedInput(
                    f"point {i + 1} must be proximate to one or two earlier points"
                )
            if len(p) == 2:
                older, pred = p
                if older not in self.prox[pred]:
                    raise MalformedInput(
                        f"point {i + 1} cannot lie on E_{older + 1}: "
                        f"its predecessor p_{pred + 1} does not"
                    )
                if p in satellites:
                    raise MalformedInput(
                        f"two points sit at the intersection of E_{older + 1} and E_{pred + 1}"
                    )
                satellites.add(p)

    @property
    def n(self) -> int:
        return len(self.mult)

    def proximate_to(self, j: int) -> list[int]:
        """Points proximate to ``p_j``."""
        return [i for i in range(self.n) if j in self.prox[i]]


def cluster_to_resolution(cl: EnriquesCluster) -> ResolutionData:
    """Blow up every point of the cluster.

    The intersection matrix is ``-P^T P`` for the proximity matrix ``P``;
    values and canonical coefficients follow the proximity recursions.
    """
    n = cl.n
    P = [[0] * n for _ in range(n)]
    for i in range(n):
        P[i][i] = 1
        for j in cl.prox[i]:
            P[i][j] = -1
    N = [[-sum(P[r][a] * P[r][b] for r in range(n)) for b in range(n)] for a in range(n)]
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if N[a][b] == 1:
                edges.append((a, b))
            elif N[a][b] != 0:
                raise CrossCheckError(f"proximity matrix gives E_{a + 1}.E_{b + 1} = {N[a][b]}")
    graph = DualGraph(tuple(N[i][i] for i in range(n)), tuple(edges))

    e: list[int] = []
    k: list[int] = []
    for i in range(n):
        e.append(cl.mult[i] + sum(e[j] for j in cl.prox[i]))
        k.append(1 + sum(k[j] for j in cl.prox[i]))
    K = Divisor.of(k)
    if solve_relative_canonical(graph) != K:
        raise CrossCheckError("canonical divisor recursion disagrees with adjunction")
    try:
        return ResolutionData.from_graph(graph, Divisor.of(e), K, smooth_origin=True, root=0)
    except InvalidResolution as exc:
        raise InvalidResolution(f"inconsistent cluster: {exc}") from exc


def monomial_ideal(a: int, b: int) -> EnriquesCluster:
    """Cluster of base points of ``(x^a, y^b)``.

    Follows the generic curve ``u^alpha = v^beta`` through successive
    blow-ups, remembering which exceptional curve each coordinate axis is.
    Subtracting the smaller exponent from the larger one is one step of the
    Euclidean algorithm; the walk stops once the exponents coincide, where
    ``gcd(a, b)`` smooth branches separate.
    """
    if a < 1 or b < 1:
        raise MalformedInput("exponents must be positive integers")
    alpha, beta = a, b
    u_axis: int | None = None  # exceptional curve {u = 0} lies on, if any
    v_axis: int | None = None
    mult: list[int] = []
    prox: list[tuple[int, ...]] = []
    while True:
        here = len(mult)
        mult.append(min(alpha, beta))
        prox.append(tuple(j for j in (u_axis, v_axis) if j is not None))
        if alpha == beta:
            return EnriquesCluster(tuple(mult), tuple(prox))
        if alpha < beta:
            # tangent to {u = 0}: chart u = u'v, new curve is {v = 0}
            beta -= alpha
            v_axis = here
        else:
            alpha -= beta
            u_axis = here


def monomial_resolution(a: int, b: int) -> ResolutionData:
    return cluster_to_resolution(monomial_ideal(a, b))
