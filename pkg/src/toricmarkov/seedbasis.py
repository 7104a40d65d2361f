"""Native computation of one Markov basis by binomial completion.

A pure-difference binomial ``x^a - x^b`` is stored as the exponent pair
``(a, b)``; S-pairs and reductions are vector arithmetic on those pairs. The
toric ideal is obtained from the lattice-basis ideal by saturating with
respect to each variable in turn.
"""

from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .exactla import ConfigMatrix, IntVector, kernel_lattice_basis

log = logging.getLogger(__name__)

DEFAULT_PAIR_BUDGET = 10**6


# --- moves ----------------------------------------------------------------------


def canonical(z: Sequence[int]) -> IntVector:
    """Sign-normalize a move so its first nonzero entry is positive."""
    for x in z:
        if x:
            return tuple(z) if x > 0 else tuple(-y for y in z)
    return tuple(z)


def positive_part(z: Sequence[int]) -> IntVector:
    return tuple(x if x > 0 else 0 for x in z)


def negative_part(z: Sequence[int]) -> IntVector:
    return tuple(-x if x < 0 else 0 for x in z)


def fiber_key(A: ConfigMatrix, z: Sequence[int]) -> IntVector:
    """A-degree of the move ``z``, i.e. ``A z+`` (equal to ``A z-``)."""
    return A.apply(positive_part(z))


def is_move(A: ConfigMatrix, z: Sequence[int]) -> bool:
    return any(z) and all(x == 0 for x in A.apply(z))


# --- term order -----------------------------------------------------------------


@dataclass(frozen=True)
class TermOrder:
    """Weighted graded reverse lexicographic order.

    ``weights`` are the column degrees ``c . a_i``; ``perm`` lists variable
    indices from most to least expensive, so ``perm[-1]`` is the variable
    that reverse-lex makes cheapest.
    """

    weights: IntVector
    perm: IntVector

    @classmethod
    def with_last(cls, weights: Sequence[int], last: int) -> "TermOrder":
        n = len(weights)
        perm = tuple(i for i in range(n) if i != last) + (last,)
        return cls(tuple(weights), perm)

    def key(self, m: Sequence[int]):
        rev = tuple(-m[i] for i in reversed(self.perm))
        return (sum(w * x for w, x in zip(self.weights, m)), rev)

    def degree(self, m: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(self.weights, m))


# --- binomial Groebner bases -----------------------------------------------------


def _mask(m: Sequence[int]) -> int:
    bits = 0
    for i, x in enumerate(m):
        if x:
            bits |= 1 << i
    return bits


def _divides(a: Sequence[int], m: Sequence[int]) -> bool:
    for x, y in zip(a, m):
        if x > y:
            return False
    return True


class _Reducer:
    """Leading-term lookup table used for monomial normal forms."""

    def __init__(self):
        self.leads: list[IntVector] = []
        self.trails: list[IntVector] = []
        self.masks: list[int] = []
        self.alive: list[bool] = []

    def add(self, lead: IntVector, trail: IntVector) -> int:
        self.leads.append(lead)
        self.trails.append(trail)
        self.masks.append(_mask(lead))
        self.alive.append(True)
        return len(self.leads) - 1

    def find_divisor(self, m: IntVector, mmask: int, skip: int = -1) -> int:
        leads, masks, alive = self.leads, self.masks, self.alive
        for k in range(len(leads)):
            if k != skip and alive[k] and not masks[k] & ~mmask and _divides(leads[k], m):
                return k
        return -1

    def normal_form(self, m: IntVector, skip: int = -1) -> IntVector:
        while True:
            k = self.find_divisor(m, _mask(m), skip)
            if k < 0:
                return m
            a, b = self.leads[k], self.trails[k]
            m = tuple(x - y + w for x, y, w in zip(m, a, b))


@dataclass
class BinomialGB:
    """A reduced Groebner basis of a pure-difference binomial ideal."""

    binomials: list[tuple[IntVector, IntVector]]
    order: TermOrder
    pairs_processed: int = 0

    @property
    def moves(self) -> list[IntVector]:
        return [canonical(tuple(x - y for x, y in zip(a, b))) for a, b in self.binomials]


@dataclass
class Budget:
    """Completion budget shared across all Buchberger runs of one seed computation."""

    max_pairs: int = DEFAULT_PAIR_BUDGET
    max_seconds: float | None = None
    pairs_used: int = 0
    started: float = field(default_factory=time.monotonic)

    def charge(self, stage: str) -> None:
        self.pairs_used += 1
        if self.pairs_used > self.max_pairs:
            raise BudgetExceeded(
                f"S-pair budget of {self.max_pairs} exceeded during {stage}",
                {"stage": stage, "pairs": self.pairs_used},
            )
        if self.max_seconds is not None and self.pairs_used % 256 == 0:
            if time.monotonic() - self.started > self.max_seconds:
                raise BudgetExceeded(
                    f"time budget of {self.max_seconds}s exceeded during {stage}",
                    {"stage": stage, "pairs": self.pairs_used},
                )


def _orient(p: IntVector, q: IntVector, order: TermOrder):
    kp, kq = order.key(p), order.key(q)
    if kp == kq:
        return None
    return (p, q) if kp > kq else (q, p)


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def buchberger(
    gens: Iterable[tuple[Sequence[int], Sequence[int]] | Sequence[int]],
    order: TermOrder,
    budget: Budget | None = None,
    stage: str = "buchberger",
) -> BinomialGB:
    """Reduced Groebner basis of the ideal generated by pure-difference binomials.

    ``gens`` may contain exponent pairs ``(a, b)`` meaning ``x^a - x^b`` or
    plain kernel vectors ``z`` meaning ``x^{z+} - x^{z-}``. Pairs are processed
    with the normal strategy (smallest weighted degree of the lcm first, ties
    broken lexicographically) and pruned by the Gebauer-Moeller criteria.
    """
    budget = budget or Budget()
    red = _Reducer()
    queue: list = []
    # pair bookkeeping for the chain criterion: set of live (i, j)
    live_pairs: dict[tuple[int, int], IntVector] = {}

    def push_pairs(new: int) -> None:
        lead_new = red.leads[new]
        cands: dict[int, IntVector] = {}
        for k in range(new):
            if red.alive[k]:
                cands[k] = _lcm(red.leads[k], lead_new)
        # Criterion M/F: drop a candidate whose lcm is a proper multiple of another's
        # (or equal, keeping one).
        keep: dict[int, IntVector] = {}
        by_lcm: dict[IntVector, int] = {}
        items = sorted(cands.items(), key=lambda kv: (order.degree(kv[1]), kv[1], kv[0]))
        for k, l in items:
            if l in by_lcm:
                continue
            if any(_divides(l2, l) for l2 in by_lcm):
                continue
            by_lcm[l] = k
            keep[k] = l
        # Product criterion: coprime leads reduce to zero, and their lcm still
        # blocks other pairs above, so drop them only now.
        for k, l in keep.items():
            a = red.leads[k]
            if all(x == 0 or y == 0 for x, y in zip(a, lead_new)):
                continue
            pair = (k, new)
            live_pairs[pair] = l
            heapq.heappush(queue, (order.degree(l), l, k, new))
        # Criterion B: existing pairs (i, j) whose lcm is divisible by lead_new
        # strictly, with lcm(i,new), lcm(j,new) both different from lcm(i,j).
        dead = []
        for (i, j), l in live_pairs.items():
            if j == new:
                continue
            if _divides(lead_new, l):
                li = _lcm(red.leads[i], lead_new)
                lj = _lcm(red.leads[j], lead_new)
                if li != l and lj != l:
                    dead.append((i, j))
        for p in dead:
            del live_pairs[p]

    def insert(lead: IntVector, trail: IntVector) -> None:
        # Remove basis elements whose leading term is a multiple of the new one.
        for k in range(len(red.leads)):
            if red.alive[k] and _divides(lead, red.leads[k]):
                red.alive[k] = False
        idx = red.add(lead, trail)
        push_pairs(idx)

    def reduce_pair(p: IntVector, q: IntVector):
        p = red.normal_form(p)
        q = red.normal_form(q)
        if p == q:
            return None
        return _orient(p, q, order)

    for g in gens:
        if len(g) == 2 and isinstance(g[0], (tuple, list)):
            a, b = tuple(g[0]), tuple(g[1])
        else:
            z = tuple(g)
            a, b = positive_part(z), negative_part(z)
        r = reduce_pair(a, b)
        if r is not None:
            insert(*r)

    processed = 0
    while queue:
        _, l, i, j = heapq.heappop(queue)
        if (i, j) not in live_pairs:
            continue
        del live_pairs[(i, j)]
        budget.charge(stage)
        processed += 1
        ai, bi = red.leads[i], red.trails[i]
        aj, bj = red.leads[j], red.trails[j]
        s1 = tuple(x - y + w for x, y, w in zip(l, ai, bi))
        s2 = tuple(x - y + w for x, y, w in zip(l, aj, bj))
        r = reduce_pair(s1, s2)
        if r is not None:
            insert(*r)

    return BinomialGB(_interreduce(red, order), order, processed)


def _interreduce(red: _Reducer, order: TermOrder) -> list[tuple[IntVector, IntVector]]:
    """Minimalize then tail-reduce the surviving basis elements."""
    alive = [k for k in range(len(red.leads)) if red.alive[k]]
    # drop elements whose lead is divisible by another surviving lead
    for k in alive:
        if red.find_divisor(red.leads[k], red.masks[k], skip=k) >= 0:
            red.alive[k] = False
    out = []
    for k in range(len(red.leads)):
        if not red.alive[k]:
            continue
        trail = red.normal_form(red.trails[k])
        out.append((red.leads[k], trail))
    out.sort(key=lambda ab: order.key(ab[0]))
    return out


def saturate_variable(gb: BinomialGB, i: int) -> BinomialGB:
    """Divide every binomial by the largest power of ``x_i`` dividing both terms.

    With ``x_i`` cheapest in reverse-lex, the result is a Groebner basis of the
    saturation ``(J : x_i^inf)``.
    """
    out = []
    for a, b in gb.binomials:
        k = min(a[i], b[i])
        if k:
            a = a[:i] + (a[i] - k,) + a[i + 1:]
            b = b[:i] + (b[i] - k,) + b[i + 1:]
        out.append((a, b))
    return BinomialGB(out, gb.order, gb.pairs_processed)


def seed_binomials(
    A: ConfigMatrix,
    max_pairs: int = DEFAULT_PAIR_BUDGET,
    max_seconds: float | None = None,
    start: Sequence[Sequence[int]] | None = None,
) -> list[tuple[IntVector, IntVector]]:
    """Groebner basis (as exponent pairs) of the toric ideal of ``A``.

    Completion starts from the lattice-basis ideal, or from ``start`` when
    given; ``start`` must then span the kernel lattice for the result to be
    the toric ideal.
    """
    gens = kernel_lattice_basis(A) if start is None else [tuple(z) for z in start]
    if not gens:
        return []
    budget = Budget(max_pairs, max_seconds)
    current: list = [(positive_part(z), negative_part(z)) for z in gens]
    for i in range(A.n):
        order = TermOrder.with_last(A.weights, i)
        gb = buchberger(current, order, budget, stage=f"saturation of x{i + 1}")
        gb = saturate_variable(gb, i)
        current = gb.binomials
        log.debug("saturated x%d: %d binomials, %d pairs", i + 1, len(current), budget.pairs_used)
    return current


def seed_markov_basis(
    A: ConfigMatrix,
    max_pairs: int = DEFAULT_PAIR_BUDGET,
    max_seconds: float | None = None,
) -> list[IntVector]:
    """A (not necessarily minimal) Markov basis of ``A`` as canonical moves, sorted."""
    moves = set()
    for a, b in seed_binomials(A, max_pairs, max_seconds):
        z = tuple(x - y for x, y in zip(a, b))
        if any(z):
            moves.add(canonical(z))
    return sorted(moves)
