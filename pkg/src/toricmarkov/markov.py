"""Minimal Markov bases from fiber graphs.

Every minimal Markov basis is obtained by picking, for each generating fiber
``t``, a spanning tree on the connected components of ``G_t`` and, for every
tree edge, one element from each of its two components. Counting, full
enumeration, uniform sampling, and the indispensable and universal sets are
all read off this description.
"""

from __future__ import annotations

import itertools
import random
from bisect import bisect_right
from dataclasses import dataclass
from math import prod
from typing import Callable, Iterable, Iterator, Sequence

from .errors import BadSequence, LimitExceeded, MovesNotInKernel, NotGenerating
from .exactla import ConfigMatrix, IntVector, kernel_lattice_basis, solve_integer_combination
from .fibergraph import DisjointSet, FiberGraph, fiber_graph, generating_fiber_graphs
from .seedbasis import (
    DEFAULT_PAIR_BUDGET,
    canonical,
    fiber_key,
    negative_part,
    positive_part,
    seed_binomials,
    seed_markov_basis,
)

DEFAULT_MATERIALIZE_LIMIT = 10**5

KINDS = ("seed", "minimal", "universal", "indispensable", "sample")


@dataclass(frozen=True)
class MarkovBasis:
    moves: tuple[IntVector, ...]
    kind: str = "minimal"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown basis kind {self.kind!r}")

    @classmethod
    def of(cls, moves: Iterable[Sequence[int]], kind: str) -> "MarkovBasis":
        return cls(tuple(sorted({canonical(z) for z in moves})), kind)

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def as_set(self) -> frozenset[IntVector]:
        return frozenset(self.moves)


@dataclass
class Verdict:
    generates: bool
    minimal: bool
    certificate: tuple[IntVector, IntVector, IntVector] | None = None
    """(fiber key, u, v) for two elements the moves fail to connect."""
    redundant: IntVector | None = None
    """A move whose removal keeps every reference fiber connected."""

    def describe(self) -> str:
        if self.certificate is not None:
            t, u, v = self.certificate
            return f"fiber {list(t)} leaves {list(u)} and {list(v)} unconnected"
        if self.redundant is not None:
            return f"move {list(self.redundant)} is redundant"
        return "generates" + (" minimally" if self.minimal else "")


# --- Pruefer sequences ---------------------------------------------------------


def prufer_tree(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Decode a Pruefer sequence into the edges of a labelled tree on ``0..n-1``.

    Each symbol is joined to the smallest current leaf; the final two
    remaining vertices form the last edge. Edges are ``(small, large)`` in
    decoding order.
    """
    if n < 2:
        raise BadSequence(f"a tree needs at least 2 vertices, got n={n}")
    seq = list(seq)
    if len(seq) != n - 2:
        raise BadSequence(f"sequence for n={n} must have length {n - 2}, got {len(seq)}")
    for s in seq:
        if not 0 <= s < n:
            raise BadSequence(f"label {s} out of range 0..{n - 1}")
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    edges = []
    for s in seq:
        leaf = degree.index(1)
        edges.append((min(leaf, s), max(leaf, s)))
        degree[leaf] -= 1
        degree[s] -= 1
    a, b = [v for v in range(n) if degree[v] == 1]
    edges.append((a, b))
    return edges


# --- seed and generating fibers -----------------------------------------------


def seed_basis(A: ConfigMatrix, max_pairs: int = DEFAULT_PAIR_BUDGET,
               max_seconds: float | None = None) -> MarkovBasis:
    """The Markov basis the rest of the pipeline starts from, cached on ``A``.

    Computed natively unless one was installed with :func:`use_seed_basis`.
    """
    if A._seed is None:
        A._seed = MarkovBasis.of(seed_markov_basis(A, max_pairs, max_seconds), "seed")
    return A._seed


def generating_fibers(A: ConfigMatrix, fiber_limit: int | None = None) -> list[FiberGraph]:
    if A._generating is None:
        A._generating = generating_fiber_graphs(A, seed_basis(A).moves, fiber_limit)
    return A._generating


def use_seed_basis(A: ConfigMatrix, moves: Iterable[Sequence[int]],
                   max_pairs: int = DEFAULT_PAIR_BUDGET, max_seconds: float | None = None,
                   fiber_limit: int | None = None) -> MarkovBasis:
    """Install an externally supplied generating set as the seed of ``A``.

    The moves must lie in ``ker(A)`` and span the kernel lattice; a kernel
    basis vector outside their span is reported as two unconnected elements
    of its fiber. The reference fibers are then obtained by completing the
    supplied set itself, and the set must connect all of them.

    Raises:
        MovesNotInKernel, NotGenerating
    """
    moves = [tuple(int(x) for x in z) for z in moves]
    for z in moves:
        if len(z) != A.n or any(A.apply(z)) or not any(z):
            raise MovesNotInKernel(z)
    moves = sorted({canonical(z) for z in moves})
    for z in kernel_lattice_basis(A):
        if solve_integer_combination(moves, z) is None:
            cert = (fiber_key(A, z), positive_part(z), negative_part(z))
            raise NotGenerating(Verdict(False, False, cert))
    completed = set()
    for a, b in seed_binomials(A, max_pairs, max_seconds, start=moves):
        completed.add(canonical(tuple(x - y for x, y in zip(a, b))))
    reference = generating_fiber_graphs(A, completed, fiber_limit)
    verdict = verify_markov_basis(A, moves, reference)
    if not verdict.generates:
        raise NotGenerating(verdict)
    A._seed = MarkovBasis.of(moves, "seed")
    A._generating = generating_fiber_graphs(A, moves, fiber_limit)
    return A._seed


# --- counting --------------------------------------------------------------------


def count_from_sizes(size_lists: Iterable[Sequence[int]]) -> int:
    """Number of minimal Markov bases given the component sizes of each generating fiber."""
    total = 1
    for sizes in size_lists:
        k = len(sizes)
        total *= prod(sizes) * sum(sizes) ** (k - 2) if k >= 2 else 1
    return total


def count_markov(A: ConfigMatrix) -> int:
    return count_from_sizes(g.component_sizes for g in generating_fibers(A))


def minimal_size(A: ConfigMatrix) -> int:
    """Number of moves in every minimal Markov basis."""
    return sum(g.n_components - 1 for g in generating_fibers(A))


# --- enumeration -----------------------------------------------------------------


def _move(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return canonical(tuple(a - b for a, b in zip(u, v)))


def _fiber_options(graph: FiberGraph) -> Callable[[], Iterator[tuple[IntVector, ...]]]:
    """Factory for the per-fiber stream of move tuples, in enumeration order."""
    comps = graph.component_elements
    k = len(comps)

    def options():
        for seq in itertools.product(range(k), repeat=k - 2):
            edges = sorted(prufer_tree(seq, k))
            ends = [list(itertools.product(comps[a], comps[b])) for a, b in edges]
            for choice in itertools.product(*ends):
                yield tuple(_move(u, v) for u, v in choice)

    return options


def lazy_product(factories: Sequence[Callable[[], Iterable]]) -> Iterator[tuple]:
    """Cartesian product over re-creatable iterables without materializing them.

    The first factory varies slowest, as in :func:`itertools.product`.
    """
    iters = [iter(f()) for f in factories]
    try:
        values = [next(it) for it in iters]
    except StopIteration:
        return
    while True:
        yield tuple(values)
        i = len(iters) - 1
        while i >= 0:
            try:
                values[i] = next(iters[i])
                break
            except StopIteration:
                iters[i] = iter(factories[i]())
                values[i] = next(iters[i])
                i -= 1
        if i < 0:
            return


def bases_from_fibers(graphs: Sequence[FiberGraph]) -> Iterator[MarkovBasis]:
    for parts in lazy_product([_fiber_options(g) for g in graphs]):
        moves = [z for part in parts for z in part]
        yield MarkovBasis(tuple(sorted(moves)), "minimal")


def markov_bases(A: ConfigMatrix) -> Iterator[MarkovBasis]:
    """Stream every minimal Markov basis of ``A`` exactly once.

    Order: generating fibers by (graded degree, key), first fiber slowest;
    within a fiber, Pruefer sequences lexicographically, then endpoint
    choices lexicographically over the sorted components and elements.
    """
    return bases_from_fibers(generating_fibers(A))


def list_markov_bases(A: ConfigMatrix, limit: int = DEFAULT_MATERIALIZE_LIMIT) -> list[MarkovBasis]:
    total = count_markov(A)
    if total > limit:
        raise LimitExceeded(f"{total} minimal Markov bases exceed the materialization limit {limit}")
    return list(markov_bases(A))


# --- sampling --------------------------------------------------------------------


def _sample_fiber(graph: FiberGraph, rng: random.Random) -> list[IntVector]:
    comps = graph.component_elements
    sizes = [len(c) for c in comps]
    k = len(sizes)
    # Pruefer symbols weighted by component size; integer arithmetic keeps it exact.
    cumulative = list(itertools.accumulate(sizes))
    total = cumulative[-1]
    seq = [bisect_right(cumulative, rng.randrange(total)) for _ in range(k - 2)]
    moves = []
    for a, b in sorted(prufer_tree(seq, k)):
        u = comps[a][rng.randrange(sizes[a])]
        v = comps[b][rng.randrange(sizes[b])]
        moves.append(_move(u, v))
    return moves


def random_markov(A: ConfigMatrix, rng_seed: int | None = None, count: int = 1) -> list[MarkovBasis]:
    """Draw ``count`` independent minimal Markov bases, each exactly uniform.

    Uses :class:`random.Random` (Mersenne Twister) seeded with ``rng_seed``
    and only its integer ``randrange``, so results are reproducible and
    free of floating-point bias. For a fiber with component sizes
    ``m_1..m_k`` the ``k - 2`` Pruefer symbols are drawn with probability
    proportional to ``m_j``; endpoints are then uniform in their components.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(rng_seed)
    graphs = generating_fibers(A)
    return [sample_from_fibers(graphs, rng) for _ in range(count)]


def sample_from_fibers(graphs: Sequence[FiberGraph], rng) -> MarkovBasis:
    """One uniform minimal basis; ``rng`` only needs a ``randrange(k)`` method."""
    moves = [z for g in graphs for z in _sample_fiber(g, rng)]
    return MarkovBasis(tuple(sorted(moves)), "sample")


# --- indispensable and universal sets -----------------------------------------


def indispensable_set(A: ConfigMatrix) -> MarkovBasis:
    moves = []
    for g in generating_fibers(A):
        if len(g.fiber) == 2 and g.n_components == 2:
            u, v = g.fiber.elements
            moves.append(_move(u, v))
    return MarkovBasis.of(moves, "indispensable")


def universal_markov(A: ConfigMatrix) -> MarkovBasis:
    moves = []
    for g in generating_fibers(A):
        comps = g.component_elements
        for a, b in itertools.combinations(range(len(comps)), 2):
            for u in comps[a]:
                for v in comps[b]:
                    moves.append(_move(u, v))
    return MarkovBasis.of(moves, "universal")


# --- verification ----------------------------------------------------------------


def _connect(graph: FiberGraph, moves: Sequence[IntVector], skip: int = -1):
    """Components of ``G_{M,t}``; returns the union-find and, per move, whether it joined anything."""
    els = graph.fiber.elements
    index = {u: i for i, u in enumerate(els)}
    ds = DisjointSet(len(els))
    used = [False] * len(moves)
    for m, z in enumerate(moves):
        if m == skip:
            continue
        for i, u in enumerate(els):
            j = index.get(tuple(a + b for a, b in zip(u, z)))
            if j is not None:
                used[m] = True
                ds.union(i, j)
    return ds, used


def _reference_graphs(A: ConfigMatrix, reference) -> list[FiberGraph]:
    out = []
    for r in reference:
        out.append(r if isinstance(r, FiberGraph) else fiber_graph(A, r))
    return out


def verify_markov_basis(A: ConfigMatrix, moves: Iterable[Sequence[int]],
                        reference_fibers=None) -> Verdict:
    """Check that ``moves`` connect every reference fiber, and whether minimally.

    ``reference_fibers`` (keys or fiber graphs) must be the generating fibers
    of ``A``; they default to those of the seed installed on ``A``.

    Raises:
        MovesNotInKernel: some move is zero or has ``A z != 0``.
    """
    moves = [tuple(int(x) for x in z) for z in moves]
    for z in moves:
        if len(z) != A.n or any(A.apply(z)) or not any(z):
            raise MovesNotInKernel(z)
    moves = sorted({canonical(z) for z in moves})
    graphs = generating_fibers(A) if reference_fibers is None else _reference_graphs(A, reference_fibers)

    touched: list[list[int]] = []
    for g in graphs:
        ds, used = _connect(g, moves)
        els = g.fiber.elements
        root = ds.find(0)
        for i in range(1, len(els)):
            if ds.find(i) != root:
                return Verdict(False, False, (g.key, els[0], els[i]))
        touched.append([m for m, flag in enumerate(used) if flag])

    if len(moves) != sum(g.n_components - 1 for g in graphs):
        redundant = _find_redundant(graphs, moves, touched)
        return Verdict(True, False, redundant=redundant)
    redundant = _find_redundant(graphs, moves, touched)
    return Verdict(True, redundant is None, redundant=redundant)


def _find_redundant(graphs, moves, touched) -> IntVector | None:
    # A move that joins nothing in any reference fiber is redundant outright;
    # otherwise re-check only the fibers it touches.
    by_move: dict[int, list[int]] = {m: [] for m in range(len(moves))}
    for gi, ms in enumerate(touched):
        for m in ms:
            by_move[m].append(gi)
    for m in range(len(moves)):
        still_connected = True
        for gi in by_move[m]:
            ds, _ = _connect(graphs[gi], moves, skip=m)
            root = ds.find(0)
            if any(ds.find(i) != root for i in range(1, len(graphs[gi].fiber))):
                still_connected = False
                break
        if still_connected:
            return moves[m]
    return None


def minimize(A: ConfigMatrix, seed: Iterable[Sequence[int]]) -> MarkovBasis:
    """The first basis of the enumeration order, computed from ``seed``.

    Raises:
        NotGenerating: ``seed`` fails to connect some generating fiber of ``A``.
    """
    seed = [tuple(z) for z in seed]
    verdict = verify_markov_basis(A, seed)
    if not verdict.generates:
        raise NotGenerating(verdict)
    graphs = generating_fiber_graphs(A, seed)
    return next(bases_from_fibers(graphs))
