"""Max-plus matrices and span machinery.

The tropical determinant (equivalently the max-plus permanent) comes
with two engines: a factorial expansion over all permutations, used as
an oracle up to 9x9, and a maximum-weight perfect-matching formulation
that scales.  The matching engine clears denominators and runs a
Hungarian assignment over exact integers, so the two engines agree
exactly.

Span membership uses residuation: the maximal coefficient for each
basis element is the infimum of the difference function, and membership
holds iff the resulting combination reproduces the target exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionMismatch,
    NotInSpan,
    NotSquare,
    PermutationEngineTooLarge,
)
from .maxplus import BOTTOM, MaxPlusValue, odot, oplus
from .piecewise import PiecewiseLinearFunction, envelope, tminus

PERMUTATION_ENGINE_LIMIT = 9


@dataclass(frozen=True)
class TropicalMatrix:
    rows: int
    cols: int
    entries: tuple[MaxPlusValue, ...]

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[MaxPlusValue]]) -> "TropicalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(row) != ncols for row in rows):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(v for row in rows for v in row))

    def at(self, i: int, j: int) -> MaxPlusValue:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[MaxPlusValue, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[MaxPlusValue, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "TropicalMatrix":
        return TropicalMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    @classmethod
    def identity(cls, n: int) -> "TropicalMatrix":
        from .maxplus import UNIT

        return cls(
            n, n, tuple(UNIT if i == j else BOTTOM for i in range(n) for j in range(n))
        )


def mat_oplus(a: TropicalMatrix, b: TropicalMatrix) -> TropicalMatrix:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatch(f"{a.rows}x{a.cols} vs {b.rows}x{b.cols}")
    return TropicalMatrix(
        a.rows, a.cols, tuple(oplus(x, y) for x, y in zip(a.entries, b.entries))
    )


def mat_odot(a: TropicalMatrix, b: TropicalMatrix) -> TropicalMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        for j in range(b.cols):
            acc = BOTTOM
            for k in range(a.cols):
                acc = oplus(acc, odot(a.at(i, k), b.at(k, j)))
            out.append(acc)
    return TropicalMatrix(a.rows, b.cols, tuple(out))


def _permutation_determinant(grid: list[list[Optional[Fraction]]]) -> MaxPlusValue:
    n = len(grid)
    best: Optional[Fraction] = None
    for perm in itertools.permutations(range(n)):
        total = Fraction(0)
        ok = True
        for i, j in enumerate(perm):
            cell = grid[i][j]
            if cell is None:
                ok = False
                break
            total += cell
        if ok and (best is None or total > best):
            best = total
    return BOTTOM if best is None else MaxPlusValue(best)


def _hungarian_min_cost(cost: list[list[int]]) -> int:
    """Exact min-cost perfect assignment on a dense integer matrix."""
    n = len(cost)
    inf = None
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j (1-based)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv: list[Optional[int]] = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta: Optional[int] = None
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if minv[j] is None or cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if delta is None or minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            assert delta is not None
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                elif minv[j] is not None:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    return sum(cost[match[j] - 1][j - 1] for j in range(1, n + 1))


def _assignment_determinant(grid: list[list[Optional[Fraction]]]) -> MaxPlusValue:
    n = len(grid)
    finite = [cell for row in grid for cell in row if cell is not None]
    if not finite:
        return BOTTOM
    if any(all(cell is None for cell in row) for row in grid):
        return BOTTOM
    if any(all(grid[i][j] is None for i in range(n)) for j in range(n)):
        return BOTTOM
    scale = lcm(*(cell.denominator for cell in finite))
    weights = [
        [None if cell is None else int(cell * scale) for cell in row] for row in grid
    ]
    max_abs = max((abs(w) for row in weights for w in row if w is not None), default=0)
    forbidden = (2 * n + 1) * (max_abs + 1)
    cost = [
        [forbidden if w is None else -w for w in row] for row in weights
    ]
    total = _hungarian_min_cost(cost)
    if total > n * max_abs:
        # optimum uses a forbidden edge: no finite perfect matching exists
        return BOTTOM
    return MaxPlusValue(Fraction(-total, scale))


def _grid(a: TropicalMatrix) -> list[list[Optional[Fraction]]]:
    return [
        [None if a.at(i, j).is_bottom else a.at(i, j).value for j in range(a.cols)]
        for i in range(a.rows)
    ]


def tropical_determinant(a: TropicalMatrix, engine: str = "permutation") -> MaxPlusValue:
    """Max over all permutations of the tropical product down the diagonal.

    engine "permutation" is the exhaustive oracle (n <= 9); engine
    "assignment" solves the equivalent maximum-weight perfect matching.
    """
    if a.rows != a.cols:
        raise NotSquare(f"{a.rows}x{a.cols}")
    grid = _grid(a)
    if engine in ("permutation", "perm"):
        if a.rows > PERMUTATION_ENGINE_LIMIT:
            raise PermutationEngineTooLarge(
                f"permutation engine is limited to {PERMUTATION_ENGINE_LIMIT}x{PERMUTATION_ENGINE_LIMIT}"
            )
        return _permutation_determinant(grid)
    if engine in ("assignment", "assign"):
        return _assignment_determinant(grid)
    raise ValueError(f"unknown determinant engine {engine!r}")


def is_row_regular(a: TropicalMatrix) -> bool:
    """At least one finite entry in every row."""
    return all(any(not v.is_bottom for v in a.row(i)) for i in range(a.rows))


def is_det_regular(a: TropicalMatrix) -> bool:
    """Square matrix with a finite tropical determinant."""
    if a.rows != a.cols:
        raise NotSquare(f"{a.rows}x{a.cols}")
    engine = "permutation" if a.rows <= PERMUTATION_ENGINE_LIMIT else "assignment"
    return not tropical_determinant(a, engine).is_bottom


@dataclass(frozen=True)
class SpanBasis:
    """Ordered entire spanning functions, pairwise distinct."""

    functions: tuple[PiecewiseLinearFunction, ...]

    def __post_init__(self):
        if not self.functions:
            raise ValueError("basis must be nonempty")
        if len(set(self.functions)) != len(self.functions):
            raise ValueError("basis functions must be pairwise distinct")
        for k, g in enumerate(self.functions):
            if not g.is_entire:
                raise ValueError(f"basis function {k} is not entire")

    def __len__(self) -> int:
        return len(self.functions)


def linear_combination(
    functions: Sequence[PiecewiseLinearFunction], coefficients: Sequence[MaxPlusValue]
) -> Optional[PiecewiseLinearFunction]:
    """Envelope of coefficient + function over the finite coefficients,
    or None when every coefficient is bottom."""
    if len(functions) != len(coefficients):
        raise DimensionMismatch("coefficient count does not match function count")
    parts = [
        g.offset(a.value) for g, a in zip(functions, coefficients) if not a.is_bottom
    ]
    if not parts:
        return None
    return envelope(parts)


def residuation_coefficients(
    f: PiecewiseLinearFunction, functions: Sequence[PiecewiseLinearFunction]
) -> list[MaxPlusValue]:
    """Pointwise-maximal coefficients a_k = inf (f - g_k), bottom when the
    infimum is minus infinity."""
    out = []
    for g in functions:
        inf = tminus(f, g).infimum()
        out.append(BOTTOM if inf is None else MaxPlusValue(inf))
    return out


def span_membership(
    f: PiecewiseLinearFunction, basis: SpanBasis
) -> Optional[list[MaxPlusValue]]:
    """The maximal coefficient vector if f lies in the span, else None."""
    coeffs = residuation_coefficients(f, basis.functions)
    combo = linear_combination(basis.functions, coeffs)
    if combo is not None and combo == f:
        return coeffs
    return None


def _subset_member(
    f: PiecewiseLinearFunction,
    functions: Sequence[PiecewiseLinearFunction],
    indices: Iterable[int],
) -> bool:
    chosen = [functions[i] for i in indices]
    coeffs = residuation_coefficients(f, chosen)
    combo = linear_combination(chosen, coeffs)
    return combo is not None and combo == f


def shortest_length(f: PiecewiseLinearFunction, basis: SpanBasis) -> int:
    """Minimum number of basis terms whose combination reproduces f."""
    n1 = len(basis)
    if span_membership(f, basis) is None:
        raise NotInSpan("target is not a combination of the basis")
    for size in range(1, n1 + 1):
        for subset in itertools.combinations(range(n1), size):
            if _subset_member(f, basis.functions, subset):
                return size
    raise AssertionError("membership held but no subset reproduced the target")


def is_complete(f: PiecewiseLinearFunction, basis: SpanBasis) -> bool:
    return shortest_length(f, basis) == len(basis)


def degree_of_degeneracy(
    members: Sequence[PiecewiseLinearFunction], basis: SpanBasis
) -> int:
    """Number of members whose shortest length falls below the basis size."""
    count = 0
    for k, f in enumerate(members):
        try:
            if shortest_length(f, basis) < len(basis):
                count += 1
        except NotInSpan as exc:
            raise NotInSpan("member is not in the span", index=k) from exc
    return count


def dimension_probe(
    basis: SpanBasis, probes: Sequence[PiecewiseLinearFunction]
) -> tuple[int, bool]:
    """Max shortest length over the probes: a certified lower bound for the
    span dimension, certified maximal only when it reaches the basis size."""
    lower = 0
    for k, probe in enumerate(probes):
        try:
            lower = max(lower, shortest_length(probe, basis))
        except NotInSpan as exc:
            raise NotInSpan("probe is not in the span", index=k) from exc
    return lower, lower == len(basis)
