"""Edge shifts of nonnegative integer matrices and their spectral data.

A k x k nonnegative integer matrix A presents a shift of finite type whose
alphabet is the edge set of the graph with A[i][j] parallel edges from state
i to state j.  Words are edge paths.  Edges are indexed in the canonical
order sorted by (source, target, copy); every rule table in this package
refers to edges through that indexing.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from . import ratmat
from .errors import (
    InadmissibleWord,
    InternalInvariantViolation,
    NilpotentMatrix,
    ReducibleInput,
    WindowBudgetExceeded,
    ZeroMatrix,
)

#: Default tolerance for floating-point verdicts across the package (natural
#: logs everywhere).
DEFAULT_TOL = 1e-9

#: Default cap on the number of windows any single enumeration may touch.
DEFAULT_BUDGET = 5 * 10**7


class EdgeShift:
    """Edge shift of a nonnegative integer matrix.

    Use :func:`build_edge_shift` rather than calling this directly; the
    constructor assumes an already validated matrix.
    """

    def __init__(self, matrix):
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        self.k = len(self.matrix)
        edges = []
        index = {}
        for s in range(self.k):
            for t in range(self.k):
                for c in range(self.matrix[s][t]):
                    index[(s, t, c)] = len(edges)
                    edges.append((s, t, c))
        self.edges = tuple(edges)
        self.edge_index = index
        self.n_edges = len(edges)
        self.out_edges = tuple(
            tuple(e for e, (s, _, _) in enumerate(edges) if s == i)
            for i in range(self.k)
        )
        self.in_edges = tuple(
            tuple(e for e, (_, t, _) in enumerate(edges) if t == i)
            for i in range(self.k)
        )
        self._reach = {}
        self.irreducible = self._compute_irreducible()
        self.primitive = self.irreducible and self._period() == 1
        self.positive_entropy = self._compute_positive_entropy()
        # set by kronecker_product on product shifts
        self.product_of = None
        self.pair_to_edge = None
        self.edge_to_pair = None

    # -- identity is the matrix, not the object --

    def __eq__(self, other):
        return isinstance(other, EdgeShift) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"EdgeShift({[list(r) for r in self.matrix]})"

    def source(self, e):
        return self.edges[e][0]

    def target(self, e):
        return self.edges[e][1]

    # -- admissibility and enumeration --

    def is_admissible(self, word):
        return all(
            self.edges[word[i]][1] == self.edges[word[i + 1]][0]
            for i in range(len(word) - 1)
        )

    def check_admissible(self, word):
        for i in range(len(word) - 1):
            if self.edges[word[i]][1] != self.edges[word[i + 1]][0]:
                raise InadmissibleWord(word, i)

    def words(self, length, start_state=None):
        """Yield all admissible words of ``length`` edges, lexicographically
        by edge index.  ``start_state`` restricts the first edge's source."""
        if length == 0:
            yield ()
            return
        if start_state is None:
            first = range(self.n_edges)
        else:
            first = self.out_edges[start_state]
        stack = [(e,) for e in reversed(first)]
        while stack:
            w = stack.pop()
            if len(w) == length:
                yield w
                continue
            for e in reversed(self.out_edges[self.edges[w[-1]][1]]):
                stack.append(w + (e,))

    def word_count(self, length):
        """Exact number of admissible words with ``length`` edges."""
        return count_words(self, length)

    def ensure_budget(self, length, budget):
        n = self.word_count(length)
        if n > budget:
            raise WindowBudgetExceeded(n, budget)
        return n

    def reach_exact(self, steps):
        """Boolean matrix: reach_exact(n)[i][j] iff a path i->j with exactly
        n edges exists."""
        if steps in self._reach:
            return self._reach[steps]
        if steps == 0:
            m = tuple(tuple(i == j for j in range(self.k)) for i in range(self.k))
        else:
            prev = self.reach_exact(steps - 1)
            adj = self.matrix
            m = tuple(
                tuple(
                    any(prev[i][l] and adj[l][j] for l in range(self.k))
                    for j in range(self.k)
                )
                for i in range(self.k)
            )
        self._reach[steps] = m
        return m

    # -- structural flags --

    def _compute_irreducible(self):
        if self.n_edges == 0:
            return False
        # reachable-in-at-least-one-step closure via BFS along edges
        for i in range(self.k):
            seen = [False] * self.k
            frontier = [t for (s, t, _) in self.edges if s == i]
            while frontier:
                nxt = []
                for v in frontier:
                    if not seen[v]:
                        seen[v] = True
                        nxt.extend(
                            t for t in range(self.k) if self.matrix[v][t] > 0
                        )
                frontier = nxt
            if not all(seen):
                return False
        return True

    def _period(self):
        # gcd of cycle lengths in a strongly connected graph
        level = [None] * self.k
        level[0] = 0
        order = [0]
        while order:
            u = order.pop()
            for v in range(self.k):
                if self.matrix[u][v] > 0 and level[v] is None:
                    level[v] = level[u] + 1
                    order.append(v)
        g = 0
        for (s, t, _) in self.edges:
            g = math.gcd(g, level[s] + 1 - level[t])
        return abs(g)

    def _compute_positive_entropy(self):
        # positive entropy iff some strongly connected component carries more
        # edges (with multiplicity) than vertices
        comp = self._scc()
        for nodes in comp:
            ns = set(nodes)
            e = sum(
                self.matrix[i][j] for i in ns for j in ns
            )
            has_edge = any(self.matrix[i][j] > 0 for i in ns for j in ns)
            if has_edge and e > len(ns):
                return True
        return False

    def _scc(self):
        # iterative Tarjan
        low = [0] * self.k
        num = [None] * self.k
        on = [False] * self.k
        stack, result, counter = [], [], [0]
        for root in range(self.k):
            if num[root] is not None:
                continue
            work = [(root, 0)]
            path = []
            while work:
                v, pi = work[-1]
                if pi == 0:
                    num[v] = low[v] = counter[0]
                    counter[0] += 1
                    path.append(v)
                    on[v] = True
                advanced = False
                succs = [w for w in range(self.k) if self.matrix[v][w] > 0]
                for w in succs[pi:]:
                    work[-1] = (v, pi + 1)
                    pi += 1
                    if num[w] is None:
                        work.append((w, 0))
                        advanced = True
                        break
                    elif on[w]:
                        low[v] = min(low[v], num[w])
                if advanced:
                    continue
                work.pop()
                if low[v] == num[v]:
                    comp = []
                    while True:
                        w = path.pop()
                        on[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    result.append(comp)
                if work:
                    u, _ = work[-1]
                    low[u] = min(low[u], low[v])
        return result


def build_edge_shift(matrix):
    """Validate a nonnegative integer matrix and build its edge shift."""
    if not matrix or not all(len(row) == len(matrix) for row in matrix):
        raise ValueError("matrix must be square and nonempty")
    for row in matrix:
        for x in row:
            if int(x) != x or x < 0:
                raise ValueError(f"entries must be nonnegative integers, got {x!r}")
    if all(x == 0 for row in matrix for x in row):
        raise ZeroMatrix("the zero matrix presents no shift")
    return EdgeShift(matrix)


def count_words(shift, n):
    """Number of admissible words with n edges; 1 for n = 0 by convention."""
    if n < 0:
        raise ValueError("word length must be nonnegative")
    if n == 0:
        return 1
    p = ratmat.mat_pow(ratmat.frac_matrix(shift.matrix), n)
    return int(sum(sum(row) for row in p))


@dataclass(frozen=True)
class PerronData:
    """Spectral radius, right eigenvector (1-norm one), and entropy in nats."""

    lambda_: float
    v_right: tuple
    entropy: float


def perron_data(shift, tol=DEFAULT_TOL):
    """Perron eigenvalue and right eigenvector by power iteration.

    Irreducible input required.  Non-primitive irreducible matrices are
    handled by iterating A + I (primitive whenever A is irreducible) and
    shifting the eigenvalue back.
    """
    if not shift.irreducible:
        raise ReducibleInput("perron_data needs an irreducible matrix")
    k = shift.k
    a = np.array(shift.matrix, dtype=float)
    b = a + np.eye(k)
    v = np.full(k, 1.0 / k)
    lam = 0.0
    for _ in range(200000):
        w = b @ v
        s = w.sum()
        w /= s
        if np.max(np.abs(w - v)) < tol * 1e-4:
            v = w
            lam = s - 1.0
            break
        v = w
    else:  # pragma: no cover - convergence is guaranteed for primitive B
        raise InternalInvariantViolation("power iteration did not converge")
    # polish with a Rayleigh step and verify the residual
    av = a @ v
    lam = float(av.sum() / v.sum())
    if np.max(np.abs(av - lam * v)) > max(tol, tol * lam):
        raise InternalInvariantViolation("Perron residual above tolerance")
    v = v / v.sum()
    return PerronData(lambda_=lam, v_right=tuple(float(x) for x in v), entropy=math.log(lam))


@dataclass(frozen=True)
class DimensionData:
    """Eventual-range data of A acting on row vectors (x -> xA).

    ``basis`` rows are the reduced row echelon form of A^k and span the
    eventual range R(A) = Q^k . A^k; ``delta_restricted`` is the matrix of
    x -> xA on that basis (coordinates multiply on the right), and
    ``delta_inverse`` its exact inverse.  ``rho_minus`` is the reciprocal of
    the smallest modulus among nonzero eigenvalues of A, i.e. the spectral
    radius of the inverse action on the eventual range.
    """

    k: int
    basis: tuple
    pivots: tuple
    delta_restricted: tuple
    delta_inverse: tuple
    char_poly: tuple
    rho_minus: float

    @property
    def d(self):
        return len(self.basis)

    def coords(self, vec):
        """Coordinates of ``vec`` in the basis; exact membership check."""
        vec = tuple(Fraction(x) for x in vec)
        c = tuple(vec[p] for p in self.pivots)
        recon = self.to_ambient(c)
        if recon != vec:
            raise InternalInvariantViolation(
                f"vector {vec} is not in the eventual range"
            )
        return c

    def coords_float(self, vec):
        """Pivot-column coordinates without the exact membership check."""
        return tuple(float(vec[p]) for p in self.pivots)

    def to_ambient(self, coords):
        return tuple(
            sum(Fraction(coords[i]) * self.basis[i][j] for i in range(self.d))
            for j in range(self.k)
        )

    def in_eventual_range(self, vec):
        try:
            self.coords(vec)
            return True
        except InternalInvariantViolation:
            return False

    def in_dimension_group(self, vec):
        """Membership in the eventual-image group: vec lies in R(A) and some
        vec . A^j is integral (j up to 2k suffices at this scale)."""
        if not self.in_eventual_range(vec):
            return False
        x = tuple(Fraction(v) for v in vec)
        afrac = None
        for _ in range(2 * self.k + 1):
            if all(Fraction(v).denominator == 1 for v in x):
                return True
            if afrac is None:
                afrac = self._matrix_frac()
            x = ratmat.vec_mat(x, afrac)
        return False

    def _matrix_frac(self):
        # reconstruct A from delta on the basis: pivot rows of A^k are basis
        # combinations; simpler to keep A itself
        return ratmat.frac_matrix(self._matrix)

    def apply_delta_power(self, vec, j):
        """(x -> xA)^j applied inside R(A); j may be negative."""
        c = self.coords(vec)
        m = (
            ratmat.mat_pow(self.delta_restricted, j)
            if j >= 0
            else ratmat.mat_pow(self.delta_inverse, -j)
        )
        return self.to_ambient(ratmat.vec_mat(c, m))


def dimension_data(shift):
    """Exact eventual-range data for the shift's matrix."""
    k = shift.k
    afrac = ratmat.frac_matrix(shift.matrix)
    ak = ratmat.mat_pow(afrac, k)
    if all(x == 0 for row in ak for x in row):
        raise NilpotentMatrix("A^k = 0; the eventual range is trivial")
    basis, pivots = ratmat.rref(ak)
    d = len(basis)
    delta_rows = []
    for row in basis:
        image = ratmat.vec_mat(row, afrac)
        c = tuple(image[p] for p in pivots)
        recon = tuple(
            sum(c[i] * basis[i][j] for i in range(d)) for j in range(k)
        )
        if recon != image:
            raise InternalInvariantViolation("eventual range is not A-invariant")
        delta_rows.append(c)
    delta = tuple(delta_rows)
    cp = tuple(ratmat.char_poly(afrac))
    _, nonzero_part = ratmat.strip_zero_roots(list(cp))
    if len(nonzero_part) - 1 != d:
        raise InternalInvariantViolation(
            "rank of A^k disagrees with the number of nonzero eigenvalues"
        )
    roots = np.roots([float(c) for c in ratmat.squarefree_part(nonzero_part)])
    min_mod = min(abs(r) for r in roots)
    data = DimensionData(
        k=k,
        basis=basis,
        pivots=pivots,
        delta_restricted=delta,
        delta_inverse=ratmat.inverse(delta),
        char_poly=cp,
        rho_minus=float(1.0 / min_mod),
    )
    object.__setattr__(data, "_matrix", shift.matrix)
    return data


def kronecker_product(a_shift, b_shift):
    """Product shift with the row-major pair/edge correspondence recorded.

    Product edge copies are ordered row-major over (copy in A, copy in B), so
    the pairing with the canonical edge indexing is reproducible.
    """
    ka, kb = a_shift.k, b_shift.k
    a, b = a_shift.matrix, b_shift.matrix
    matrix = [
        [
            a[ia][ja] * b[ib][jb]
            for ja in range(ka)
            for jb in range(kb)
        ]
        for ia in range(ka)
        for ib in range(kb)
    ]
    prod = build_edge_shift(matrix)
    pair_to_edge = {}
    edge_to_pair = [None] * prod.n_edges
    for ea, (sa, ta, ca) in enumerate(a_shift.edges):
        for eb, (sb, tb, cb) in enumerate(b_shift.edges):
            src = sa * kb + sb
            tgt = ta * kb + tb
            copy = ca * b[sb][tb] + cb
            e = prod.edge_index[(src, tgt, copy)]
            pair_to_edge[(ea, eb)] = e
            edge_to_pair[e] = (ea, eb)
    if any(p is None for p in edge_to_pair):
        raise InternalInvariantViolation("pair correspondence is not onto")
    prod.product_of = (a_shift, b_shift)
    prod.pair_to_edge = pair_to_edge
    prod.edge_to_pair = tuple(edge_to_pair)
    return prod


def transpose_shift(shift):
    """Transpose shift plus the edge bijection e=(s,t,c) -> (t,s,c).

    Returns (shift of A^T, tuple mapping each edge index of A to the
    corresponding edge index of A^T).
    """
    k = shift.k
    tmatrix = [[shift.matrix[j][i] for j in range(k)] for i in range(k)]
    tshift = build_edge_shift(tmatrix)
    bijection = tuple(
        tshift.edge_index[(t, s, c)] for (s, t, c) in shift.edges
    )
    return tshift, bijection
