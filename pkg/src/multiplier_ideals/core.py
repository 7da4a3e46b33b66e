"""Dual graphs, exceptional divisors and the intersection form.

Everything here is exact: scalars are :class:`fractions.Fraction` and no
floating point value is ever produced.  Component indices are 0-based; the
file formats and the command line translate to the 1-based ``E_1 .. E_r``
naming.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import InvalidResolution, MalformedInput

Rational = Fraction
RationalLike = Union[int, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Parse an int, a ``"p/q"`` string or a Fraction.  Floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise MalformedInput(f"refusing inexact value {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise MalformedInput(f"rationals must be written p/q, got {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"cannot parse rational {value!r}") from exc
    raise MalformedInput(f"cannot interpret {value!r} as a rational")


def frac_part(x: Fraction) -> Fraction:
    """Fractional part ``x - floor(x)``, always in ``[0, 1)``."""
    return x - math.floor(x)


# ---------------------------------------------------------------------------
# Divisors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Divisor:
    """A rational combination of the exceptional components."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coeffs", tuple(c if type(c) is Fraction else Fraction(c) for c in self.coeffs)
        )

    @classmethod
    def of(cls, values: Iterable[RationalLike]) -> "Divisor":
        return cls(tuple(as_rational(v) for v in values))

    @classmethod
    def zero(cls, n: int) -> "Divisor":
        return cls((Fraction(0),) * n)

    @classmethod
    def unit(cls, n: int, i: int) -> "Divisor":
        return cls(tuple(Fraction(int(j == i)) for j in range(n)))

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "Divisor":
        s = set(support)
        return cls(tuple(Fraction(int(j in s)) for j in range(n)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def _check(self, other: "Divisor") -> None:
        if len(other) != len(self):
            raise MalformedInput(
                f"divisor length mismatch: {len(self)} vs {len(other)}"
            )

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Divisor":
        return Divisor(tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar: RationalLike) -> "Divisor":
        s = as_rational(scalar)
        return Divisor(tuple(s * a for a in self.coeffs))

    def ceil(self) -> "Divisor":
        return Divisor(tuple(Fraction(math.ceil(a)) for a in self.coeffs))

    def floor(self) -> "Divisor":
        return Divisor(tuple(Fraction(math.floor(a)) for a in self.coeffs))

    def positive_part(self) -> "Divisor":
        return Divisor(tuple(max(a, Fraction(0)) for a in self.coeffs))

    @property
    def is_effective(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    @property
    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coeffs)

    def __le__(self, other: "Divisor") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.coeffs) + ")"


@dataclass(frozen=True)
class ReducedDivisor:
    """A reduced exceptional divisor, i.e. a set of components."""

    n: int
    support: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", frozenset(self.support))
        bad = [i for i in self.support if not 0 <= i < self.n]
        if bad:
            raise MalformedInput(f"support indices out of range: {sorted(bad)}")

    def __contains__(self, i: int) -> bool:
        return i in self.support

    def __len__(self) -> int:
        return len(self.support)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.support))

    def as_divisor(self) -> Divisor:
        return Divisor.from_support(self.n, self.support)


# ---------------------------------------------------------------------------
# Dual graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualGraph:
    """Weighted dual graph of the exceptional locus.

    ``self_int[i]`` is ``E_i^2``; ``edges`` holds the unordered pairs of
    components meeting transversally in one point.
    """

    self_int: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    _adj: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        n = len(self.self_int)
        if n == 0:
            raise MalformedInput("dual graph needs at least one component")
        object.__setattr__(self, "self_int", tuple(int(s) for s in self.self_int))
        pairs: set[tuple[int, int]] = set()
        for edge in self.edges:
            i, j = (int(v) for v in edge)
            if i == j:
                raise MalformedInput(f"self-loop on component {i + 1}")
            if not (0 <= i < n and 0 <= j < n):
                raise MalformedInput(f"edge {(i + 1, j + 1)} references a missing component")
            pairs.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(pairs)))
        adj: list[list[int]] = [[] for _ in range(n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @property
    def n(self) -> int:
        return len(self.self_int)

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self._adj[i]

    def degree(self, i: int) -> int:
        """Number of components meeting ``E_i`` (written a(E_i))."""
        return len(self._adj[i])

    def matrix(self) -> list[list[int]]:
        N = [[0] * self.n for _ in range(self.n)]
        for i, s in enumerate(self.self_int):
            N[i][i] = s
        for i, j in self.edges:
            N[i][j] = N[j][i] = 1
        return N

    def dot_component(self, D: Divisor, i: int) -> Fraction:
        """``D . E_i``."""
        c = D.coeffs
        return self.self_int[i] * c[i] + sum((c[j] for j in self._adj[i]), Fraction(0))

    def intersect(self, A: Divisor, B: Divisor) -> Fraction:
        if len(A) != self.n or len(B) != self.n:
            raise MalformedInput(
                f"divisor lengths {len(A)}, {len(B)} do not match {self.n} components"
            )
        # integral coefficients are the common case; plain ints are much faster
        a = [x.numerator if x.denominator == 1 else x for x in A.coeffs]
        b = [x.numerator if x.denominator == 1 else x for x in B.coeffs]
        total = sum(s * x * y for s, x, y in zip(self.self_int, a, b))
        total += sum(a[i] * b[j] + a[j] * b[i] for i, j in self.edges)
        return Fraction(total)

    def is_connected(self) -> bool:
        return len(self.connected_components(range(self.n))) == 1

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and self.is_connected()

    def connected_components(self, support: Iterable[int]) -> tuple[frozenset[int], ...]:
        """Connected pieces of the subgraph induced on ``support``.

        Ordered by smallest member.
        """
        remaining = set(support)
        pieces = []
        for start in sorted(remaining):
            if start not in remaining:
                continue
            piece = {start}
            remaining.discard(start)
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w in self._adj[v]:
                    if w in remaining:
                        remaining.discard(w)
                        piece.add(w)
                        queue.append(w)
            pieces.append(frozenset(piece))
        return tuple(pieces)


def intersect(A: Divisor, B: Divisor, g: DualGraph) -> Fraction:
    """Intersection number ``A . B`` computed from the dual graph."""
    return g.intersect(A, B)


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------


def solve_exact(matrix: Sequence[Sequence[RationalLike]], rhs: Sequence[RationalLike]) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` over the rationals (partial pivoting by magnitude)."""
    n = len(matrix)
    A = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(A[r][col]))
        if A[pivot][col] == 0:
            raise InvalidResolution("intersection matrix is singular")
        A[col], A[pivot] = A[pivot], A[col]
        prow = A[col]
        p = prow[col]
        for r in range(col + 1, n):
            factor = A[r][col]
            if factor:
                factor /= p
                row = A[r]
                for c in range(col, n + 1):
                    if prow[c]:
                        row[c] -= factor * prow[c]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = A[r][n] - sum((A[r][c] * x[c] for c in range(r + 1, n) if A[r][c]), Fraction(0))
        x[r] = acc / A[r][r]
    return x


def leading_minors(matrix: Sequence[Sequence[RationalLike]]) -> list[Fraction]:
    """Leading principal minors, via elimination without row exchanges.

    Stops (returning the minors found so far plus the zero one) as soon as a
    minor vanishes, since later pivots are then undefined.
    """
    n = len(matrix)
    A = [[Fraction(v) for v in row] for row in matrix]
    minors: list[Fraction] = []
    det = Fraction(1)
    for k in range(n):
        p = A[k][k]
        det *= p
        minors.append(det)
        if p == 0:
            break
        for r in range(k + 1, n):
            factor = A[r][k]
            if factor:
                factor /= p
                for c in range(k, n):
                    if A[k][c]:
                        A[r][c] -= factor * A[k][c]
    return minors


def is_negative_definite(g: DualGraph) -> bool:
    """Sylvester's criterion on ``-N``."""
    neg = [[-v for v in row] for row in g.matrix()]
    minors = leading_minors(neg)
    return len(minors) == g.n and all(m > 0 for m in minors)


# ---------------------------------------------------------------------------
# Canonical divisor, excesses, fundamental cycle
# ---------------------------------------------------------------------------


def solve_relative_canonical(g: DualGraph) -> Divisor:
    """The unique K with ``(K + E_j) . E_j = -2`` for every component."""
    rhs = [-2 - s for s in g.self_int]
    return Divisor(tuple(solve_exact(g.matrix(), rhs)))


def excesses(g: DualGraph, F: Divisor) -> tuple[Fraction, ...]:
    """``rho_i = -F . E_i``.  Raises if some excess is negative."""
    rho = tuple(-g.dot_component(F, i) for i in range(g.n))
    bad = [i + 1 for i, r in enumerate(rho) if r < 0]
    if bad:
        raise InvalidResolution(
            f"negative excess on components {bad}: F is not the divisor of an ideal"
        )
    return rho


def fundamental_cycle(g: DualGraph) -> Divisor:
    """Smallest non-zero effective Z with ``Z . E_i <= 0`` for all i (Laufer)."""
    if not is_negative_definite(g):
        raise InvalidResolution("fundamental cycle needs a negative definite graph")
    z = [Fraction(0)] * g.n
    z[0] = Fraction(1)
    Z = Divisor(tuple(z))
    while True:
        for i in range(g.n):
            if g.dot_component(Z, i) > 0:
                Z = Z + Divisor.unit(g.n, i)
                break
        else:
            return Z


# ---------------------------------------------------------------------------
# Resolution data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolutionData:
    """Combinatorial data of a log-resolution of an m-primary ideal."""

    graph: DualGraph
    K: Divisor
    F: Divisor
    rho: tuple[Fraction, ...]
    rho_total: Fraction
    smooth_origin: bool = False
    root: int | None = None

    @classmethod
    def from_graph(
        cls,
        graph: DualGraph,
        F: Divisor | Sequence[RationalLike],
        K: Divisor | Sequence[RationalLike] | None = None,
        *,
        smooth_origin: bool = False,
        root: int | None = None,
        check_excess: bool = True,
    ) -> "ResolutionData":
        """Fill in K (if missing) and the excesses.

        With ``check_excess=False`` negative excesses are kept so that
        :func:`validate` can report them instead of raising here.
        """
        F = F if isinstance(F, Divisor) else Divisor.of(F)
        if len(F) != graph.n:
            raise MalformedInput(f"F has {len(F)} entries for {graph.n} components")
        if K is None:
            K = solve_relative_canonical(graph)
        elif not isinstance(K, Divisor):
            K = Divisor.of(K)
        if len(K) != graph.n:
            raise MalformedInput(f"K has {len(K)} entries for {graph.n} components")
        if root is not None and not 0 <= root < graph.n:
            raise MalformedInput(f"root {root + 1} is not a component")
        if check_excess:
            rho = excesses(graph, F)
        else:
            rho = tuple(-graph.dot_component(F, i) for i in range(graph.n))
        return cls(graph, K, F, rho, sum(rho, Fraction(0)), smooth_origin, root)

    @property
    def n(self) -> int:
        return self.graph.n

    def dicritical(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.rho) if r > 0)

    def rupture(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.graph.degree(i) >= 3)


def arithmetic_genus(D: Divisor, rd: ResolutionData) -> Fraction:
    """``p_a(D) = 1 + (K + D) . D / 2``."""
    return 1 + rd.graph.intersect(rd.K + D, D) / 2


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)


def validate(rd: ResolutionData) -> ValidationReport:
    """Run every consistency check on ``rd`` and collect the outcomes."""
    g = rd.graph
    checks = []

    tree = g.is_tree()
    checks.append(Check(
        "tree", tree,
        "" if tree else f"{g.n} components, {len(g.edges)} edges, "
        f"connected={g.is_connected()}",
    ))

    neg = [[-v for v in row] for row in g.matrix()]
    minors = leading_minors(neg)
    negdef = len(minors) == g.n and all(m > 0 for m in minors)
    checks.append(Check(
        "negative_definite", negdef,
        "" if negdef else "leading minors of -N: " + ", ".join(str(m) for m in minors),
    ))

    bad_adj = [j + 1 for j in range(g.n) if g.intersect(rd.K + Divisor.unit(g.n, j), Divisor.unit(g.n, j)) != -2]
    checks.append(Check(
        "adjunction", not bad_adj,
        "" if not bad_adj else f"(K+E_j).E_j != -2 for j in {bad_adj}",
    ))

    bad_e = [i + 1 for i, e in enumerate(rd.F) if e.denominator != 1 or e <= 0]
    checks.append(Check(
        "F_positive_integers", not bad_e,
        "" if not bad_e else f"non-positive or fractional e_i at {bad_e}",
    ))

    actual_rho = tuple(-g.dot_component(rd.F, i) for i in range(g.n))
    bad_rho = [i + 1 for i, r in enumerate(actual_rho) if r < 0]
    consistent = actual_rho == tuple(rd.rho) and rd.rho_total == sum(actual_rho)
    checks.append(Check(
        "excesses_nonnegative", not bad_rho and consistent,
        "" if not bad_rho and consistent else
        (f"negative excess at {bad_rho}" if bad_rho else "stored excesses disagree with -F.E_i"),
    ))

    total = sum(actual_rho, Fraction(0))
    checks.append(Check("total_excess_positive", total > 0, f"rho = {total}"))

    if negdef:
        Z = fundamental_cycle(g)
        pa = arithmetic_genus(Z, rd)
        checks.append(Check("rational_singularity", pa <= 0, f"p_a(Z) = {pa}"))
    else:
        checks.append(Check("rational_singularity", False, "fundamental cycle undefined"))

    if rd.smooth_origin:
        root_ok = rd.root is not None and 0 <= rd.root < g.n
        k_ok = all(k.denominator == 1 and k > 0 for k in rd.K)
        checks.append(Check(
            "smooth_origin", root_ok and k_ok,
            "" if root_ok and k_ok else
            ("missing or invalid root" if not root_ok else "k_i not all positive integers"),
        ))
    return ValidationReport(tuple(checks))
