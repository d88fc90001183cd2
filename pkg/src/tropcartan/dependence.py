"""Gondran-Minoux linear dependence of piecewise-linear functions.

A dependence certificate is a two-block partition of the index set plus
coefficients, not all bottom, making the two max-envelopes identical on
all of R.  Verification is exact structural equality of the canonical
envelopes.

The search enumerates pairs of disjoint supports, samples the line at
the breakpoints of the involved functions (plus midpoints and outer
probes), and for each sample picks which left/right pair of terms
attains the common maximum.  Each such pattern is a system of
difference constraints over the coefficients, solved exactly with a
difference-bound matrix.  Sample infeasibility of every pattern soundly
certifies that no dependence exists; a feasible pattern yields a
candidate that is then verified structurally, with a few refinement
rounds that add the disagreement breakpoints as new samples.  The
outcome records whether the search was exhaustive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import TooManyFunctions
from .maxplus import BOTTOM, MaxPlusValue
from .piecewise import PiecewiseLinearFunction, envelope, tminus

MAX_FUNCTIONS = 12


@dataclass(frozen=True)
class DependenceCertificate:
    left: frozenset[int]
    right: frozenset[int]
    alphas: tuple[MaxPlusValue, ...]

    def __post_init__(self):
        indices = set(range(len(self.alphas)))
        if not self.left or not self.right:
            raise ValueError("both index blocks must be nonempty")
        if self.left & self.right:
            raise ValueError("index blocks must be disjoint")
        if self.left | self.right != indices:
            raise ValueError("index blocks must cover every function index")
        if all(a.is_bottom for a in self.alphas):
            raise ValueError("at least one coefficient must be finite")


@dataclass(frozen=True)
class SearchBounds:
    max_support_pairs: int = 20000
    max_nodes: int = 60000
    max_refinements: int = 3


@dataclass(frozen=True)
class SearchOutcome:
    certificate: Optional[DependenceCertificate]
    exhaustive: bool


def _side_envelope(
    functions: Sequence[PiecewiseLinearFunction],
    indices: Sequence[int],
    alphas: Sequence[MaxPlusValue],
) -> Optional[PiecewiseLinearFunction]:
    parts = [
        functions[i].offset(alphas[i].value) for i in indices if not alphas[i].is_bottom
    ]
    if not parts:
        return None
    return envelope(parts)


def verify_dependence(
    functions: Sequence[PiecewiseLinearFunction], certificate: DependenceCertificate
) -> bool:
    """Exact check of the two-sided envelope identity on all of R."""
    if len(functions) != len(certificate.alphas):
        raise ValueError("certificate length does not match function count")
    lhs = _side_envelope(functions, sorted(certificate.left), certificate.alphas)
    rhs = _side_envelope(functions, sorted(certificate.right), certificate.alphas)
    if lhs is None or rhs is None:
        return False
    return lhs == rhs


class _Dbm:
    """Difference-bound matrix over exact rationals.

    bound[u][v] is the tightest known upper bound on alpha_u - alpha_v,
    None meaning unbounded.  Kept closed under the triangle inequality.
    """

    __slots__ = ("n", "bound")

    def __init__(self, n: int):
        self.n = n
        self.bound: list[list[Optional[Fraction]]] = [
            [Fraction(0) if i == j else None for j in range(n)] for i in range(n)
        ]

    def copy(self) -> "_Dbm":
        twin = _Dbm.__new__(_Dbm)
        twin.n = self.n
        twin.bound = [row[:] for row in self.bound]
        return twin

    def add(self, u: int, v: int, w: Fraction) -> bool:
        """Add alpha_u - alpha_v <= w; False when it makes the system infeasible."""
        b = self.bound
        if b[u][v] is not None and b[u][v] <= w:
            return True
        b[u][v] = w
        n = self.n
        for p in range(n):
            pu = b[p][u]
            if pu is None:
                continue
            through = pu + w
            row_p = b[p]
            for q in range(n):
                vq = b[v][q]
                if vq is None:
                    continue
                cand = through + vq
                if row_p[q] is None or cand < row_p[q]:
                    row_p[q] = cand
        for p in range(n):
            if b[p][p] is not None and b[p][p] < 0:
                return False
        return True

    def solution(self, ref: int) -> list[Fraction]:
        out = []
        for u in range(self.n):
            w = self.bound[u][ref]
            out.append(w if w is not None else Fraction(0))
        return out


def _initial_samples(functions: Sequence[PiecewiseLinearFunction]) -> list[Fraction]:
    xs = sorted({e.location for f in functions for e in f.events()})
    if not xs:
        return [Fraction(-1), Fraction(0), Fraction(1)]
    points = set(xs)
    for a, b in zip(xs, xs[1:]):
        points.add((a + b) / 2)
    points.add(xs[0] - 1)
    points.add(xs[-1] + 1)
    return sorted(points)


def _disagreement_samples(
    lhs: PiecewiseLinearFunction, rhs: PiecewiseLinearFunction
) -> set[Fraction]:
    diff = tminus(lhs, rhs)
    xs = sorted(
        {e.location for e in lhs.events()}
        | {e.location for e in rhs.events()}
        | {e.location for e in diff.events()}
    )
    extra: set[Fraction] = set(xs)
    for a, b in zip(xs, xs[1:]):
        extra.add((a + b) / 2)
    if xs:
        extra.add(xs[0] - 1)
        extra.add(xs[-1] + 1)
    else:
        extra.update((Fraction(-2), Fraction(2)))
    return extra


class _PairSearch:
    def __init__(
        self,
        functions: Sequence[PiecewiseLinearFunction],
        left: tuple[int, ...],
        right: tuple[int, ...],
        budget: "_Budget",
    ):
        self.functions = functions
        self.left = left
        self.right = right
        self.support = sorted(left + right)
        self.index = {k: pos for pos, k in enumerate(self.support)}
        self.budget = budget

    def run(self, max_refinements: int) -> tuple[Optional[DependenceCertificate], bool]:
        """Returns (certificate or None, conclusively settled)."""
        samples = _initial_samples([self.functions[k] for k in self.support])
        for _ in range(max_refinements + 1):
            found, unresolved, extra = self._dfs_round(samples)
            if found is not None:
                return found, True
            if not unresolved:
                return None, True
            if not extra or self.budget.exceeded:
                return None, False
            merged = set(samples) | extra
            if merged == set(samples):
                return None, False
            samples = sorted(merged)
        return None, False

    def _dfs_round(
        self, samples: list[Fraction]
    ) -> tuple[Optional[DependenceCertificate], bool, set[Fraction]]:
        values = {
            k: [self.functions[k](x) for x in samples] for k in self.support
        }
        m = len(self.support)
        unresolved = False
        extra: set[Fraction] = set()

        def descend(depth: int, dbm: _Dbm):
            nonlocal unresolved
            if self.budget.spend():
                unresolved = True
                return None
            if depth == len(samples):
                return self._try_candidate(dbm)
            for i in self.left:
                for j in self.right:
                    nxt = dbm.copy()
                    fi = values[i][depth]
                    fj = values[j][depth]
                    ok = nxt.add(self.index[i], self.index[j], fj - fi)
                    ok = ok and nxt.add(self.index[j], self.index[i], fi - fj)
                    if ok:
                        for k in self.support:
                            if k == i:
                                continue
                            ok = nxt.add(self.index[k], self.index[i], fi - values[k][depth])
                            if not ok:
                                break
                    if not ok:
                        continue
                    result = descend(depth + 1, nxt)
                    if result is not None:
                        return result
            return None

        def record_failure(lhs, rhs):
            nonlocal unresolved
            unresolved = True
            extra.update(_disagreement_samples(lhs, rhs))

        self._record_failure = record_failure
        found = descend(0, _Dbm(m))
        return found, unresolved, extra

    def _try_candidate(self, dbm: _Dbm) -> Optional[DependenceCertificate]:
        alphas_list: list[MaxPlusValue] = [BOTTOM] * len(self.functions)
        solution = dbm.solution(self.index[self.support[0]])
        for k in self.support:
            alphas_list[k] = MaxPlusValue(solution[self.index[k]])
        full_left = frozenset(self.left) | (
            frozenset(range(len(self.functions))) - frozenset(self.support)
        )
        certificate = DependenceCertificate(
            full_left, frozenset(self.right), tuple(alphas_list)
        )
        lhs = _side_envelope(self.functions, sorted(certificate.left), certificate.alphas)
        rhs = _side_envelope(self.functions, sorted(certificate.right), certificate.alphas)
        assert lhs is not None and rhs is not None
        if lhs == rhs:
            return certificate
        self._record_failure(lhs, rhs)
        return None


class _Budget:
    __slots__ = ("remaining", "exceeded")

    def __init__(self, limit: int):
        self.remaining = limit
        self.exceeded = False

    def spend(self) -> bool:
        if self.remaining <= 0:
            self.exceeded = True
            return True
        self.remaining -= 1
        return False


def _support_pairs(n: int):
    """Disjoint nonempty (left, right) index sets, deduplicated by putting
    the smallest involved index on the left, smallest supports first."""
    indices = list(range(n))
    pairs = []
    for size in range(2, n + 1):
        for combo in itertools.combinations(indices, size):
            for left_size in range(1, size):
                for left in itertools.combinations(combo, left_size):
                    right = tuple(k for k in combo if k not in left)
                    if combo[0] in left:
                        pairs.append((left, right))
    return pairs


def search_dependence(
    functions: Sequence[PiecewiseLinearFunction],
    bounds: Optional[SearchBounds] = None,
) -> SearchOutcome:
    """Look for a verified dependence certificate.

    A None certificate with exhaustive=True means every support pair was
    proved infeasible already at the sampled points, which rules out a
    dependence outright.  exhaustive=False means some budget was hit or a
    sample-feasible candidate could not be settled structurally.
    """
    if len(functions) > MAX_FUNCTIONS:
        raise TooManyFunctions(
            f"dependence search is limited to {MAX_FUNCTIONS} functions"
        )
    if len(functions) < 2:
        return SearchOutcome(None, True)
    cfg = bounds or SearchBounds()
    pairs = _support_pairs(len(functions))
    exhaustive = True
    if len(pairs) > cfg.max_support_pairs:
        pairs = pairs[: cfg.max_support_pairs]
        exhaustive = False
    budget = _Budget(cfg.max_nodes)
    for left, right in pairs:
        searcher = _PairSearch(functions, left, right, budget)
        certificate, settled = searcher.run(cfg.max_refinements)
        if certificate is not None:
            if not verify_dependence(functions, certificate):
                raise AssertionError("search returned an unverified certificate")
            return SearchOutcome(certificate, exhaustive)
        if not settled:
            exhaustive = False
        if budget.exceeded:
            return SearchOutcome(None, False)
    return SearchOutcome(None, exhaustive)
