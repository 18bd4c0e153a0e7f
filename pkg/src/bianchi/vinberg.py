"""Mirror enumeration for the reflection subgroup of the lattice automorphism
group, based at the ideal point u0 = (1,0,0,0).

The stabiliser of u0 contributes four fixed mirrors (the walls of a cusp
sector).  Every further mirror is found in order of increasing weight
rho^2 = x2^2 / k: candidate vectors with second coordinate x2 and norm k are
enumerated inside the sector box determined by the four walls, and a
candidate is accepted when its product with every previously accepted root
is nonpositive.  The run terminates as soon as the accepted mirrors bound a
finite-volume polyhedron, and otherwise stops on a budget.

All arithmetic is exact (integers and fractions).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import vec_gcd
from .coxeter import VolumeTracker, edge_code
from .errors import UnsupportedBaseCusp
from .qform import (
    BRANCH_A,
    U0,
    FormSpec,
    Root,
    Vec,
    allowed_norms,
    bilinear,
    crystallographic_ok,
    norm,
)


class RunStatus(Enum):
    RUNNING = "running"
    TERMINATED = "terminated"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class Budget:
    """Iteration bounds; the defaults comfortably exceed every terminating
    case while keeping non-terminating runs at desk scale."""

    max_roots: int = 200
    max_weight_sq: Fraction = Fraction(10_000)


def initial_roots(form: FormSpec) -> list[Root]:
    """The four walls of the u0 cusp sector.

    m = 3 is rejected: its stabiliser chamber is a different four-faced
    configuration and the pipeline handles that case by a fixed verdict.
    """
    if form.m == 3:
        raise UnsupportedBaseCusp("the m = 3 base cusp has a special stabiliser")
    m = form.m
    if form.branch == BRANCH_A:
        vecs = [(0, 0, -1, 0), (1, 0, 1, 0), (0, 0, 0, -1), (m, 0, 0, 1)]
    else:
        vecs = [(0, 0, -1, 0), (1, 0, 1, 0), (0, 0, 1, -2), (m, 0, -1, 2)]
    out = []
    for v in vecs:
        # signs are fixed by the sector choice, not by normalize_primitive
        k = norm(form, v)
        assert crystallographic_ok(form, v) and vec_gcd(v) == 1
        out.append(Root(v, k, Fraction(0)))
    assert [r.norm for r in out] == [2, 2, 2 * m, 2 * m]
    return out


def weight(form: FormSpec, e) -> Fraction:
    """Exact squared weight rho^2 = B(e, u0)^2 / k; B(e, u0) = -x2 here."""
    vec = e.vec if isinstance(e, Root) else e
    k = e.norm if isinstance(e, Root) else bilinear(form, vec, vec)
    return Fraction(vec[1] * vec[1], k)


@lru_cache(maxsize=256)
def _sqrt_residues(n: int) -> dict[int, list[int]]:
    """target -> residues r in [0, n) with r^2 = target (mod n)."""
    table: dict[int, list[int]] = {}
    for r in range(n):
        table.setdefault(r * r % n, []).append(r)
    return table


def enumerate_candidates(form: FormSpec, x2: int, k: int) -> list[Root]:
    """All primitive crystallographic roots with second coordinate x2 and
    norm k inside the cusp sector, sorted lexicographically.

    The sector inequalities B(e, e_i) <= 0 against the four walls bound
    (x3, x4) to a finite box; x1 is then forced by the norm equation and the
    pair is kept only when the division is exact.  The norm equation reduces
    to a square condition modulo x2, so for each x4 only the admissible x3
    residues are visited instead of the whole box.
    """
    if x2 <= 0:
        raise ValueError("x2 must be positive")
    m = form.m
    out: list[Root] = []
    twice_x2 = 2 * x2
    weight_sq = Fraction(x2 * x2, k)
    if form.branch == BRANCH_A:
        # x1 integral <=> x3^2 = k/2 - m*x4^2 (mod x2), with 0 <= x3 <= x2/2
        half = x2 // 2
        table = _sqrt_residues(x2)
        for x4 in range(0, half + 1):
            target = (k // 2 - m * x4 * x4) % x2
            for x3 in table.get(target, ()):
                if x3 > half:
                    continue
                num = 2 * x3 * x3 + 2 * m * x4 * x4 - k
                vec = (num // twice_x2, x2, x3, x4)
                if gcd(gcd(vec[0], x2), gcd(x3, x4)) != 1:
                    continue
                # crystallographic: k | 2x1, 2x2, 4x3, 4m*x4
                if (2 * vec[0]) % k or twice_x2 % k or (4 * x3) % k \
                        or (4 * m * x4) % k:
                    continue
                out.append(Root(vec, k, weight_sq))
    else:
        # substitute y = 2*x3 + x4 (0 <= y <= x2, y = x4 mod 2); x1 integral
        # <=> y^2 = 2k - m*x4^2 (mod 4*x2)
        half = (m + 1) // 2
        table = _sqrt_residues(4 * x2)
        for x4 in range(0, x2 + 1):
            target = (2 * k - m * x4 * x4) % (4 * x2)
            for y in table.get(target, ()):
                if y > x2 or (y - x4) % 2:
                    continue
                x3 = (y - x4) // 2
                num = 2 * x3 * x3 + 2 * x3 * x4 + half * x4 * x4 - k
                vec = (num // twice_x2, x2, x3, x4)
                if gcd(gcd(vec[0], x2), gcd(x3, x4)) != 1:
                    continue
                # crystallographic: k | 2x1, 2x2, 2(2x3+x4), 2(x3+(m+1)/2*x4)
                if (2 * vec[0]) % k or twice_x2 % k or (2 * y) % k \
                        or (2 * (x3 + half * x4)) % k:
                    continue
                out.append(Root(vec, k, weight_sq))
    out.sort(key=lambda r: r.vec)
    return out


class CandidateQueue:
    """(x2, k) pairs in exact order of x2^2/k, ties by smaller k then x2."""

    def __init__(self, form: FormSpec):
        self.form = form
        self._heap: list[tuple[Fraction, int, int]] = []
        for k in allowed_norms(form):
            heapq.heappush(self._heap, (Fraction(1, k), k, 1))

    def peek_weight(self) -> Fraction:
        return self._heap[0][0]

    def pop(self) -> tuple[Fraction, int, int]:
        """Returns (weight_sq, x2, k) and schedules the successor pair."""
        w, k, x2 = heapq.heappop(self._heap)
        heapq.heappush(self._heap, (Fraction((x2 + 1) ** 2, k), k, x2 + 1))
        return w, x2, k


class RootSystem:
    """State of one run: accepted roots in order, their exact pairwise
    products, and the incremental finite-volume bookkeeping."""

    def __init__(self, form: FormSpec, budget: Budget):
        self.form = form
        self.base: Vec = U0
        self.budget = budget
        self.status = RunStatus.RUNNING
        self.roots: list[Root] = []
        self.prods: list[list[int]] = []
        self.codes: list[list[int]] = []
        self.tracker = VolumeTracker()
        self.queue = CandidateQueue(form)
        #: all mirrors with weight_sq <= complete_weight_sq have been found
        self.complete_weight_sq: Fraction = Fraction(0)
        self._pending: list[Root] = []  # current batch, reversed for pop()
        self._batch_weight: Fraction = Fraction(0)
        self._grows: list[Vec] = []  # gram . root for fast product rows
        for r in initial_roots(form):
            self._append(r, self._product_row(r.vec))

    # -- internal ----------------------------------------------------------

    def _product_row(self, vec: Vec) -> list[int] | None:
        """Products against all accepted roots, or None on a sign conflict."""
        a, b, c, d = vec
        row = []
        for g in self._grows:
            p = a * g[0] + b * g[1] + c * g[2] + d * g[3]
            if p > 0:
                return None
            row.append(p)
        return row

    def _append(self, root: Root, prow: list[int]) -> None:
        crow = [
            edge_code(p, root.norm, r.norm) for p, r in zip(prow, self.roots)
        ]
        for i, (p, c) in enumerate(zip(prow, crow)):
            self.prods[i].append(p)
            self.codes[i].append(c)
        self.prods.append(prow + [root.norm])
        self.codes.append(crow + [0])
        self.tracker.add_root(crow + [0])
        self.roots.append(root)
        g = self.form.gram
        v = root.vec
        self._grows.append(
            tuple(sum(g[i][j] * v[j] for j in range(4)) for i in range(4))
        )

    def _refill(self) -> bool:
        """Advance to the next nonempty batch; False when over the weight cap."""
        while not self._pending:
            w = self.queue.peek_weight()
            if w > self.budget.max_weight_sq:
                return False
            # everything strictly below the new batch weight is complete
            if w > self._batch_weight:
                self.complete_weight_sq = self._batch_weight
            w, x2, k = self.queue.pop()
            self._batch_weight = w
            batch = enumerate_candidates(self.form, x2, k)
            self._pending = batch[::-1]
        return True

    def _mark_batch_progress(self) -> None:
        if not self._pending and self.queue.peek_weight() > self._batch_weight:
            self.complete_weight_sq = self._batch_weight

    # -- public ------------------------------------------------------------

    @property
    def is_complete(self) -> bool:
        return self.status == RunStatus.TERMINATED


def next_root(state: RootSystem, queue: CandidateQueue | None = None) -> Root | None:
    """Accept and return the next mirror, or None when the weight budget is
    exhausted.  Candidates are taken in weight order, ties broken by smaller
    norm, smaller x2, then lexicographically; each is re-tested against all
    previously accepted roots (including same-weight ones)."""
    if queue is not None and queue is not state.queue:
        raise ValueError("queue does not belong to this root system")
    while True:
        if not state._refill():
            return None
        while state._pending:
            cand = state._pending.pop()
            prow = state._product_row(cand.vec)
            if prow is not None:
                state._append(cand, prow)
                state._mark_batch_progress()
                return cand
        state._mark_batch_progress()


def run(form: FormSpec, budget: Budget | None = None) -> RootSystem:
    """Run the enumeration until the polyhedron has finite volume or the
    budget is hit.  Deterministic; identical inputs give identical output."""
    budget = budget or Budget()
    state = RootSystem(form, budget)
    while True:
        if state.tracker.finite_volume_now():
            state.status = RunStatus.TERMINATED
            return state
        if len(state.roots) >= budget.max_roots:
            state.status = RunStatus.BUDGET_EXHAUSTED
            return state
        root = next_root(state)
        if root is None:
            state.status = RunStatus.BUDGET_EXHAUSTED
            return state
