"""Exact integer/rational linear algebra for configuration matrices.

Everything here works on Python ints and :class:`fractions.Fraction`; no
floating point is ever involved.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import EmptyMatrix, NotConfiguration, ZeroColumn

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def mat_vec(rows: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(dot(r, v) for r in rows)


def _content(values) -> int:
    g = 0
    for x in values:
        g = gcd(g, x)
    return g


def _to_primitive_integer(values: Sequence[Fraction]) -> IntVector:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    den = 1
    for x in values:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in values]
    g = _content(ints) or 1
    return tuple(x // g for x in ints)


def _columns(rows: IntMatrix) -> list[IntVector]:
    return [tuple(r[j] for r in rows) for j in range(len(rows[0]))]


# --- exact phase-one simplex --------------------------------------------------


def feasible_point(M: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Find ``x >= 0`` with ``M x = b`` exactly, or return None if none exists.

    Phase one of the simplex method over the rationals, with Bland's rule so
    it cannot cycle.
    """
    m = len(M)
    nv = len(M[0]) if m else 0
    # Normalize to b >= 0 so artificials start feasible.
    rows = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        rows.append([Fraction(sign * a) for a in M[i]] + [Fraction(sign * b[i])])
    width = nv + m
    tableau = []
    for i, r in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tableau.append(r[:nv] + art + [r[nv]])
    basis = [nv + i for i in range(m)]
    # Objective: minimize the sum of artificials; reduced costs row.
    cost = [Fraction(0)] * (width + 1)
    for r in tableau:
        for j in range(nv):
            cost[j] -= r[j]
        cost[width] -= r[width]

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i, r in enumerate(tableau):
            if r[entering] > 0:
                ratio = r[width] / r[entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:  # cannot happen: phase one is bounded below by 0
            raise AssertionError("unbounded phase-one problem")
        _pivot(tableau, cost, leaving, entering)
        basis[leaving] = entering

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * nv
    for i, j in enumerate(basis):
        if j < nv:
            x[j] = tableau[i][width]
    return x


def _pivot(tableau, cost, row, col) -> None:
    pr = tableau[row]
    p = pr[col]
    if p != 1:
        tableau[row] = pr = [v / p for v in pr]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            f = r[col]
            tableau[i] = [a - f * c for a, c in zip(r, pr)]
    if cost[col] != 0:
        f = cost[col]
        cost[:] = [a - f * c for a, c in zip(cost, pr)]


# --- grading --------------------------------------------------------------------


def positive_grading(rows: Sequence[Sequence[int]]) -> tuple[bool, IntVector]:
    """Decide pointedness of ``A`` exactly.

    Returns ``(True, c)`` with an integer ``c`` such that ``c . a_i >= 1`` for
    every column, or ``(False, x)`` with a nonzero integer ``x >= 0`` and
    ``A x = 0``. By Gordan's alternative exactly one of the two exists.

    If some row of ``A`` is strictly positive the first such unit vector is
    returned directly; otherwise ``{c : c A >= 1}`` is solved by exact simplex
    and the rational solution is scaled to a primitive integer vector. The
    result is deterministic but not canonical.
    """
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    d, n = len(rows), len(rows[0])
    for k, r in enumerate(rows):
        if all(x > 0 for x in r):
            return True, tuple(int(i == k) for i in range(d))

    # c = p - q, slack s: A^T p - A^T q - s = 1
    M = []
    for j in range(n):
        col = [rows[i][j] for i in range(d)]
        M.append(col + [-x for x in col] + [-int(k == j) for k in range(n)])
    sol = feasible_point(M, [1] * n)
    if sol is not None:
        return True, _to_primitive_integer([sol[i] - sol[d + i] for i in range(d)])

    # Certificate: A x = 0, sum x = 1, x >= 0.
    M = [list(r) for r in rows] + [[1] * n]
    sol = feasible_point(M, [0] * d + [1])
    if sol is None:  # pragma: no cover - excluded by Gordan's theorem
        raise AssertionError("neither a grading nor a certificate was found")
    return False, _to_primitive_integer(sol)


# --- configuration matrix ------------------------------------------------------


class ConfigMatrix:
    """An admitted integer configuration matrix.

    Holds the entries, a positive grading ``c`` and the per-column degrees
    ``c . a_i``. Instances are immutable apart from the fiber-graph cache,
    which only ever stores values that would be recomputed identically.
    """

    __slots__ = ("rows", "d", "n", "grading", "weights", "_fiber_cache", "_cache_lock",
                 "caching", "_seed", "_generating")

    def __init__(self, rows: IntMatrix, grading: IntVector):
        self.rows = rows
        self.d = len(rows)
        self.n = len(rows[0])
        self.grading = grading
        self.weights = tuple(dot(grading, col) for col in _columns(rows))
        self._fiber_cache: dict = {}
        self._cache_lock = threading.Lock()
        self.caching = True
        self._seed = None
        self._generating = None

    @property
    def columns(self) -> list[IntVector]:
        return _columns(self.rows)

    def apply(self, u: Sequence[int]) -> IntVector:
        return mat_vec(self.rows, u)

    def degree(self, t: Sequence[int]) -> int:
        """Graded degree ``c . t`` of a fiber key."""
        return dot(self.grading, t)

    def __eq__(self, other):
        return isinstance(other, ConfigMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ConfigMatrix({[list(r) for r in self.rows]})"


def admit_matrix(raw: Sequence[Sequence[int]]) -> ConfigMatrix:
    """Validate ``raw`` as a configuration matrix.

    Raises:
        EmptyMatrix: no rows or no columns.
        ZeroColumn: some column is identically zero.
        NotConfiguration: ``ker(A)`` contains a nonzero nonnegative vector.
    """
    if not raw or not raw[0]:
        raise EmptyMatrix("matrix must have at least one row and one column")
    rows = tuple(tuple(int(x) for x in r) for r in raw)
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError("matrix rows have different lengths")
    for j in range(n):
        if all(r[j] == 0 for r in rows):
            raise ZeroColumn(j)
    ok, vec = positive_grading(rows)
    if not ok:
        raise NotConfiguration(vec)
    return ConfigMatrix(rows, vec)


# --- Hermite normal form and kernel ------------------------------------------


def column_hnf(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], int]:
    """Column-style Hermite normal form ``H = A U`` with ``U`` unimodular.

    Returns ``(H, U, rank)`` as lists of rows. The first ``rank`` columns of
    ``H`` are in echelon form with positive pivots and reduced entries to the
    left of each pivot; the remaining columns of ``H`` are zero, so the
    matching columns of ``U`` form a basis of the integer kernel.
    """
    d, n = len(rows), len(rows[0])
    # Work on columns: each column is (A-part, U-part).
    cols = [[rows[i][j] for i in range(d)] for j in range(n)]
    ucols = [[int(k == j) for k in range(n)] for j in range(n)]

    def combine(dst, src, q):
        # column dst -= q * column src
        cd, cs = cols[dst], cols[src]
        cols[dst] = [a - q * b for a, b in zip(cd, cs)]
        ud, us = ucols[dst], ucols[src]
        ucols[dst] = [a - q * b for a, b in zip(ud, us)]

    def swap(a, b):
        cols[a], cols[b] = cols[b], cols[a]
        ucols[a], ucols[b] = ucols[b], ucols[a]

    pivots = []
    r = 0  # next pivot column
    for i in range(d):
        if r >= n:
            break
        # Euclid across columns r..n-1 on row i.
        while True:
            nz = [j for j in range(r, n) if cols[j][i] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(cols[j][i]))
            swap(r, jmin)
            done = True
            for j in range(r + 1, n):
                if cols[j][i] != 0:
                    combine(j, r, cols[j][i] // cols[r][i])
                    if cols[j][i] != 0:
                        done = False
            if done:
                break
        if cols[r][i] == 0:
            continue
        if cols[r][i] < 0:
            cols[r] = [-x for x in cols[r]]
            ucols[r] = [-x for x in ucols[r]]
        p = cols[r][i]
        for j in range(r):
            q = cols[j][i] // p
            if q:
                combine(j, r, q)
        pivots.append(i)
        r += 1

    H = [[cols[j][i] for j in range(n)] for i in range(d)]
    U = [[ucols[j][i] for j in range(n)] for i in range(n)]
    return H, U, r


def kernel_lattice_basis(A: ConfigMatrix | Sequence[Sequence[int]]) -> list[IntVector]:
    """Basis of the saturated lattice ``{z in Z^n : A z = 0}``.

    The kernel columns of the HNF transform are returned after a pass of
    pairwise size reduction (subtracting integer multiples of one basis vector
    from another while that strictly shrinks the squared norm). That pass is a
    unimodular change of basis, so the lattice is unchanged.
    """
    rows = A.rows if isinstance(A, ConfigMatrix) else tuple(tuple(r) for r in A)
    H, U, rank = column_hnf(rows)
    n = len(rows[0])
    basis = [[U[i][j] for i in range(n)] for j in range(rank, n)]
    basis = _size_reduce(basis)
    return [tuple(v) for v in basis]


def _size_reduce(basis: list[list[int]]) -> list[list[int]]:
    def norm(v):
        return sum(x * x for x in v)

    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                bj = basis[j]
                nj = norm(bj)
                if nj == 0:
                    continue
                q = round(Fraction(dot(basis[i], bj), nj))
                if q:
                    cand = [a - q * b for a, b in zip(basis[i], bj)]
                    if norm(cand) < norm(basis[i]):
                        basis[i] = cand
                        changed = True
    # Deterministic sign and order.
    out = []
    for v in basis:
        first = next((x for x in v if x), 0)
        out.append([-x for x in v] if first < 0 else v)
    out.sort(key=lambda v: (sum(x * x for x in v), [-x for x in v]))
    return out


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def solve_integer_combination(basis: Sequence[Sequence[int]], z: Sequence[int]) -> list[int] | None:
    """Integer coefficients ``k`` with ``sum k_j basis_j = z``, or None."""
    if not basis:
        return [] if all(x == 0 for x in z) else None
    n = len(z)
    # Columns = basis vectors; solve via HNF of the n x r matrix.
    B = [[basis[j][i] for j in range(len(basis))] for i in range(n)]
    H, U, rank = column_hnf(B)
    # Forward-substitute through the echelon form H (n x rank).
    y = []
    resid = list(z)
    i = 0
    for col in range(rank):
        while i < n and H[i][col] == 0:
            if resid[i] != 0:
                return None
            i += 1
        if i >= n:
            return None
        p = H[i][col]
        if resid[i] % p:
            return None
        q = resid[i] // p
        y.append(q)
        for k in range(n):
            resid[k] -= q * H[k][col]
        i += 1
    if any(resid):
        return None
    y += [0] * (len(basis) - rank)
    return [sum(U[j][k] * y[k] for k in range(len(basis))) for j in range(len(basis))]
