"""Maximal cliques of the matrix graph, their intersections and lines.

Every maximal pairwise-adjacent set of GF(q)^(m x n) is a coset of rank-1
matrices sharing either a common column space (kind ONE, cardinality q^n)
or a common row space (kind TWO, cardinality q^m).  This module builds
them in canonical form, classifies explicit vertex sets against that
structure, and provides an independent brute-force clique enumeration for
cross-checking.
"""

from __future__ import annotations

import enum
import functools

import numpy as np

from . import _bulk
from .errors import (Disjoint, NotAdjacent, NotAdjacentSet, NotMaximal,
                     PreconditionViolated, ShapeMismatch, WrongKinds,
                     ZeroNotMember)
from .fields import Field
from .matrices import Mat, adjacent, arithmetic_distance, space


class Kind(enum.Enum):
    ONE = "type_one"   # common column space: rows of P^-1 (X - A) vanish below row 1
    TWO = "type_two"   # common row space: columns of (X - A) Q^-1 vanish beyond col 1

    def other(self) -> "Kind":
        return Kind.TWO if self is Kind.ONE else Kind.ONE


def monic_col(field: Field, vec) -> np.ndarray:
    """Scale a nonzero vector so its first nonzero entry is 1.

    This is the lexicographically smallest representative of the spanned
    1-dimensional space.
    """
    vec = np.asarray(vec)
    nz = np.nonzero(vec)[0]
    if nz.size == 0:
        raise ValueError("zero vector spans nothing")
    c = field.inv(int(vec[nz[0]]))
    return field.vmul(vec, field.dtype(c))


def complete_to_invertible_col(field: Field, u) -> Mat:
    """Invertible matrix whose first column is u, rest standard basis columns."""
    u = np.asarray(u)
    m = len(u)
    i = int(np.nonzero(u)[0][0])
    cols = [u] + [np.eye(m, dtype=field.dtype)[:, j] for j in range(m) if j != i]
    return Mat(field, np.stack(cols, axis=1))


def complete_to_invertible_row(field: Field, v) -> Mat:
    return complete_to_invertible_col(field, v).T


class MaximalSet:
    """A maximal clique P M1 + A (kind ONE) or N1 Q + A (kind TWO)."""

    def __init__(self, kind: Kind, transform: Mat, offset: Mat):
        self.kind = kind
        self.transform = transform
        self.offset = offset
        m, n = offset.shape
        want = m if kind is Kind.ONE else n
        if transform.shape != (want, want):
            raise ShapeMismatch("transform size disagrees with the offset shape")
        self._tinv = transform.inverse()  # also certifies invertibility

    @property
    def field(self) -> Field:
        return self.offset.field

    @property
    def m(self) -> int:
        return self.offset.m

    @property
    def n(self) -> int:
        return self.offset.n

    @property
    def direction(self) -> np.ndarray:
        """Monic generator of the defining 1-dimensional space."""
        if self.kind is Kind.ONE:
            return monic_col(self.field, self.transform.col(0))
        return monic_col(self.field, self.transform.row(0))

    def cardinality(self) -> int:
        return self.field.q ** (self.n if self.kind is Kind.ONE else self.m)

    def contains(self, X: Mat) -> bool:
        if X.field != self.field or X.shape != self.offset.shape:
            raise ShapeMismatch("candidate lives in a different space")
        return bool(self.contains_batch(X.a[None])[0])

    def contains_batch(self, entries) -> np.ndarray:
        """Vectorized membership on a (N, m, n) stack."""
        F = self.field
        diff = F.vsub(entries, self.offset.a)
        if self.kind is Kind.ONE:
            local = _bulk.matmul(F, self._tinv.a, diff)
            return ~local[..., 1:, :].any(axis=(-2, -1))
        local = _bulk.matmul(F, diff, self._tinv.a)
        return ~local[..., :, 1:].any(axis=(-2, -1))

    def point_entries(self) -> np.ndarray:
        """(cardinality, m, n) stack of all members, in parameter order."""
        F = self.field
        if self.kind is Kind.ONE:
            xs = _bulk.all_matrices(F, 1, self.n)
            pts = F.vmul(self.direction[None, :, None], xs)
        else:
            ys = _bulk.all_matrices(F, self.m, 1)
            pts = F.vmul(ys, self.direction[None, None, :])
        return F.vadd(pts, self.offset.a)

    def points(self) -> "VertexSet":
        return VertexSet.from_entries(self.field, self.point_entries())

    def key(self):
        """Canonical identity: kind, defining space, lex-min member."""
        codes = _bulk.encode(self.field, self.point_entries())
        u = self.direction
        return (self.kind, tuple(int(c) for c in u), int(codes.min()))

    def canonical(self) -> "MaximalSet":
        """Same set with the completion transform and lex-min offset."""
        codes = _bulk.encode(self.field, self.point_entries())
        off = Mat.decode(self.field, int(codes.min()), self.m, self.n)
        if self.kind is Kind.ONE:
            t = complete_to_invertible_col(self.field, self.direction)
        else:
            t = complete_to_invertible_row(self.field, self.direction)
        return MaximalSet(self.kind, t, off)

    def __eq__(self, other):
        return isinstance(other, MaximalSet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        u = ",".join(str(int(c)) for c in self.direction)
        return f"MaximalSet({self.kind.value}, dir=[{u}], offset={self.offset.to_text()!r})"


class VertexSet:
    """An explicit set of matrices of one shape, stored as sorted codes."""

    def __init__(self, field: Field, m: int, n: int, codes):
        self.field = field
        self.m = m
        self.n = n
        self.codes = np.unique(np.asarray(codes, dtype=np.int64))

    @staticmethod
    def from_mats(mats) -> "VertexSet":
        mats = list(mats)
        if not mats:
            raise ValueError("empty vertex set has no shape")
        first = mats[0]
        return VertexSet(first.field, first.m, first.n,
                         [M.encode() for M in mats])

    @staticmethod
    def from_entries(field: Field, entries) -> "VertexSet":
        entries = np.asarray(entries)
        return VertexSet(field, entries.shape[-2], entries.shape[-1],
                         _bulk.encode(field, entries))

    def entries(self) -> np.ndarray:
        return _bulk.decode(self.field, self.codes, self.m, self.n)

    def mats(self):
        return [Mat.decode(self.field, int(c), self.m, self.n) for c in self.codes]

    def contains(self, X: Mat) -> bool:
        return bool(np.isin(X.encode(), self.codes))

    def __len__(self):
        return len(self.codes)

    def __iter__(self):
        return iter(self.mats())

    def __eq__(self, other):
        return (isinstance(other, VertexSet)
                and (self.field, self.m, self.n) == (other.field, other.m, other.n)
                and np.array_equal(self.codes, other.codes))

    def __repr__(self):
        return f"VertexSet(GF({self.field.q})^({self.m}x{self.n}), {len(self)} points)"


# ---------------------------------------------------------------------------
# construction through adjacent pairs
# ---------------------------------------------------------------------------

def member(M: MaximalSet, X: Mat) -> bool:
    return M.contains(X)


def maximal_sets_through(A: Mat, B: Mat):
    """The two maximal cliques containing an adjacent pair, one per kind.

    Kind ONE collects every X with column space of (X - A) inside that of
    (B - A); kind TWO is the row-space analogue.  Offsets are A itself,
    transforms are canonical completions of the monic space generators.
    """
    if not adjacent(A, B):
        raise NotAdjacent("inputs are not at arithmetic distance 1")
    D = B - A
    F = A.field
    ci = int(np.nonzero(D.a.any(axis=0))[0][0])
    u = monic_col(F, D.col(ci))
    ri = int(np.nonzero(D.a.any(axis=1))[0][0])
    v = monic_col(F, D.row(ri))
    one = MaximalSet(Kind.ONE, complete_to_invertible_col(F, u), A)
    two = MaximalSet(Kind.TWO, complete_to_invertible_row(F, v), A)
    return one, two


def intersect(M: MaximalSet, N: MaximalSet) -> VertexSet:
    """Exact intersection; may be empty for parallel cliques."""
    if (M.field, M.m, M.n) != (N.field, N.m, N.n):
        raise ShapeMismatch("cliques live in different spaces")
    small, other = (M, N) if M.cardinality() <= N.cardinality() else (N, M)
    pts = small.point_entries()
    keep = other.contains_batch(pts)
    return VertexSet.from_entries(M.field, pts[keep]) if keep.any() \
        else VertexSet(M.field, M.m, M.n, [])


# ---------------------------------------------------------------------------
# classification of explicit cliques
# ---------------------------------------------------------------------------

def _common_direction(field: Field, diffs, axis: str):
    """Monic generator shared by all rank-1 diffs along rows or columns."""
    reps = []
    for D in diffs:
        if axis == "col":
            i = int(np.nonzero(D.any(axis=0))[0][0])
            reps.append(monic_col(field, D[:, i]))
        else:
            i = int(np.nonzero(D.any(axis=1))[0][0])
            reps.append(monic_col(field, D[i, :]))
    first = reps[0]
    if all(np.array_equal(r, first) for r in reps[1:]):
        return first
    return None


def classify_clique(S: VertexSet) -> MaximalSet:
    """Classify a pairwise-adjacent set; canonical form if maximal.

    Raises NotAdjacentSet when some pair is not adjacent, and NotMaximal
    (with a concrete extension witness) when the clique is proper.
    """
    if len(S) == 0:
        raise NotAdjacentSet("empty set")
    F = S.field
    pts = S.entries()
    N = len(S)
    diffs_all = F.vsub(pts[:, None], pts[None, :])
    off = ~np.eye(N, dtype=bool)
    ok = _bulk.adjacent_mask(F, diffs_all[off])
    if not ok.all():
        raise NotAdjacentSet("some pair is not at distance 1")

    base = pts[0]  # codes are sorted, so this is the lex-min member
    A = Mat(F, base)
    if N == 1:
        host = MaximalSet(Kind.ONE,
                          complete_to_invertible_col(F, np.eye(S.m, dtype=F.dtype)[:, 0]),
                          A)
    else:
        diffs = F.vsub(pts[1:], base)
        u = _common_direction(F, diffs, "col")
        if u is not None:
            host = MaximalSet(Kind.ONE, complete_to_invertible_col(F, u), A)
        else:
            v = _common_direction(F, diffs, "row")
            # a pairwise-adjacent set always fits one of the two coset forms
            assert v is not None, "adjacent set outside both clique forms"
            host = MaximalSet(Kind.TWO, complete_to_invertible_row(F, v), A)

    if N == host.cardinality():
        return host.canonical()
    host_codes = _bulk.encode(F, host.point_entries())
    missing = np.setdiff1d(host_codes, S.codes)
    witness = Mat.decode(F, int(missing.min()), S.m, S.n)
    raise NotMaximal("clique extends to a larger one", witness=witness)


# ---------------------------------------------------------------------------
# lines
# ---------------------------------------------------------------------------

class Line:
    """An affine line inside a maximal clique: q points, parametrized."""

    def __init__(self, host: MaximalSet, alpha, beta):
        self.host = host
        self.alpha = np.asarray(alpha, dtype=host.field.dtype)
        self.beta = np.asarray(beta, dtype=host.field.dtype)
        if not self.alpha.any():
            raise ValueError("line direction must be nonzero")

    def point_entries(self) -> np.ndarray:
        F = self.host.field
        lam = np.arange(F.q, dtype=np.int64)
        coords = F.vadd(F.vmul(lam[:, None], self.alpha[None, :]), self.beta)
        P = self.host.transform
        if self.host.kind is Kind.ONE:
            block = np.zeros((F.q, self.host.m, self.host.n), dtype=F.dtype)
            block[:, 0, :] = coords
            out = _bulk.matmul(F, P.a, block)
        else:
            block = np.zeros((F.q, self.host.m, self.host.n), dtype=F.dtype)
            block[:, :, 0] = coords
            out = _bulk.matmul(F, block, P.a)
        return F.vadd(out, self.host.offset.a)

    def points(self) -> VertexSet:
        return VertexSet.from_entries(self.host.field, self.point_entries())

    def __len__(self):
        return self.host.field.q


def _host_coords(M: MaximalSet, pts) -> np.ndarray:
    """Coordinates of member points in M's parameter space."""
    F = M.field
    diff = F.vsub(pts, M.offset.a)
    if M.kind is Kind.ONE:
        return _bulk.matmul(F, M._tinv.a, diff)[:, 0, :]
    return _bulk.matmul(F, diff, M._tinv.a)[:, :, 0]


def line_through(M: MaximalSet, N: MaximalSet) -> Line:
    """The line M cap N when the kinds differ and they meet."""
    if M.kind == N.kind:
        raise WrongKinds("a line needs one clique of each kind")
    pts = intersect(M, N)
    if len(pts) == 0:
        raise Disjoint("cliques do not meet")
    assert len(pts) == M.field.q, "opposite-kind cliques meet in q points"
    coords = _host_coords(M, pts.entries())
    beta = coords[0]
    alpha = monic_col(M.field, M.field.vsub(coords[1], coords[0]))
    return Line(M, alpha, beta)


# ---------------------------------------------------------------------------
# dimension of adjacent sets and unit balls
# ---------------------------------------------------------------------------

def dim_adjacent_set(S: VertexSet) -> int:
    """Rank of the clique through 0 as a family of parameter vectors."""
    zero = 0
    if not np.isin(zero, S.codes):
        raise ZeroNotMember("dimension is defined for sets through 0")
    if len(S) < 2:
        raise NotAdjacentSet("need at least two points")
    F = S.field
    pts = S.entries()
    diffs_all = F.vsub(pts[:, None], pts[None, :])
    off = ~np.eye(len(S), dtype=bool)
    if not _bulk.adjacent_mask(F, diffs_all[off]).all():
        raise NotAdjacentSet("some pair is not at distance 1")
    nonzero = pts[S.codes != 0]
    u = _common_direction(F, nonzero, "col")
    if u is not None:
        # coordinates x with X = u x: row i of X equals u_i * x
        i = int(np.nonzero(u)[0][0])
        rows = F.vmul(nonzero[:, i, :], F.inv_table[u[i]].astype(F.dtype))
        dim = int(_bulk.rank(F, rows[None, :, :])[0])
    else:
        v = _common_direction(F, nonzero, "row")
        assert v is not None
        j = int(np.nonzero(v)[0][0])
        cols = F.vmul(nonzero[:, :, j], F.inv_table[v[j]].astype(F.dtype))
        dim = int(_bulk.rank(F, cols[None, :, :])[0])
    assert dim <= max(S.m, S.n)
    return dim


def unit_ball(A: Mat) -> VertexSet:
    """All matrices at arithmetic distance <= 1 from A."""
    sp = space(A.field, A.m, A.n)
    shifted = A.field.vadd(sp.rank1, A.a)
    codes = np.concatenate([[A.encode()], _bulk.encode(A.field, shifted)])
    return VertexSet(A.field, A.m, A.n, codes)


# ---------------------------------------------------------------------------
# the two-pencil support constraint
# ---------------------------------------------------------------------------

def two_pencil_constraint(A: Mat, B1: Mat, B2: Mat, rows, cols) -> bool:
    """Support dichotomy forced on a common neighbor of two pencil members.

    B1 != B2 must both be supported on rows x cols (a proper pencil), and A
    adjacent to both.  Returns whether A vanishes off the given rows or off
    the given columns; sweeps elsewhere assert this is always true.
    """
    rows = sorted(set(rows))
    cols = sorted(set(cols))
    m, n = A.shape
    if not rows or not cols or len(rows) >= min(m, n) or len(cols) >= min(m, n):
        raise PreconditionViolated("index sets must be nonempty and proper")
    if B1 == B2:
        raise PreconditionViolated("pencil members must differ")
    row_mask = np.zeros(m, dtype=bool)
    row_mask[rows] = True
    col_mask = np.zeros(n, dtype=bool)
    col_mask[cols] = True
    for B in (B1, B2):
        if B.a[~row_mask].any() or B.a[:, ~col_mask].any():
            raise PreconditionViolated("pencil member supported outside rows x cols")
    if not (adjacent(A, B1) and adjacent(A, B2)):
        raise PreconditionViolated("A must be adjacent to both pencil members")
    off_rows_vanish = not A.a[~row_mask].any()
    off_cols_vanish = not A.a[:, ~col_mask].any()
    return off_rows_vanish or off_cols_vanish


def two_pencil_sweep(field: Field, m: int, n: int, rows, cols):
    """Exhaustively scan all qualifying (A, B1, B2) triples.

    Returns (checked, violations) where violations lists the offending A
    codes; the expected result is an empty list.
    """
    sp = space(field, m, n)
    rows = sorted(set(rows))
    cols = sorted(set(cols))
    # pencil members: all matrices supported on rows x cols
    support = [(i, j) for i in rows for j in cols]
    K = len(support)
    pencil = np.zeros((field.q**K, m, n), dtype=field.dtype)
    combos = _bulk.decode(field, np.arange(field.q**K), 1, K)[:, 0, :]
    for t, (i, j) in enumerate(support):
        pencil[:, i, j] = combos[:, t]

    all_entries = sp.entries
    checked = 0
    violations = []
    row_mask = np.zeros(m, dtype=bool)
    row_mask[rows] = True
    col_mask = np.zeros(n, dtype=bool)
    col_mask[cols] = True
    adj_to = []
    for B in pencil:
        diffs = field.vsub(all_entries, B)
        adj_to.append(_bulk.adjacent_mask(field, diffs))
    adj_to = np.stack(adj_to)  # (pencil, space)
    off_rows_ok = ~all_entries[:, ~row_mask, :].any(axis=(1, 2))
    off_cols_ok = ~all_entries[:, :, ~col_mask].any(axis=(1, 2))
    good = off_rows_ok | off_cols_ok
    for b1 in range(len(pencil)):
        for b2 in range(b1 + 1, len(pencil)):
            qualifying = adj_to[b1] & adj_to[b2]
            checked += int(qualifying.sum())
            bad = qualifying & ~good
            if bad.any():
                violations.extend(int(c) for c in np.nonzero(bad)[0])
    return checked, sorted(set(violations))


# ---------------------------------------------------------------------------
# structural enumeration and the independent brute-force oracle
# ---------------------------------------------------------------------------

def all_maximal_sets(field: Field, m: int, n: int):
    """Every maximal clique of the space, one canonical object per set."""
    sp = space(field, m, n)
    out = {}
    for kind in (Kind.ONE, Kind.TWO):
        dirs = sp.monic_cols if kind is Kind.ONE else sp.monic_rows
        for d in dirs:
            if kind is Kind.ONE:
                t = complete_to_invertible_col(field, d)
            else:
                t = complete_to_invertible_row(field, d)
            for code in range(sp.count):
                ms = MaximalSet(kind, t, Mat.decode(field, code, m, n))
                k = ms.key()
                if k not in out:
                    out[k] = ms.canonical()
    return list(out.values())


def bron_kerbosch_cliques(field: Field, m: int, n: int):
    """All maximal cliques by pure graph search (no structure consulted).

    Returns a list of frozensets of matrix codes.  Intended as an
    independent oracle at small sizes.
    """
    sp = space(field, m, n)
    if sp.count > 4096:
        raise MemoryError("brute-force clique search is for small spaces")
    perms = sp.neighbor_perms
    nbrs = [frozenset(int(c) for c in perms[:, v]) for v in range(sp.count)]
    out = []

    def expand(R, P, X):
        if not P and not X:
            out.append(frozenset(R))
            return
        pivot = max(P | X, key=lambda v: len(P & nbrs[v]))
        for v in list(P - nbrs[pivot]):
            expand(R | {v}, P & nbrs[v], X & nbrs[v])
            P = P - {v}
            X = X | {v}

    expand(set(), set(range(sp.count)), set())
    return out


def clique_number(field: Field, m: int, n: int) -> int:
    """Clique number by exhaustive search (independent of the coset theory)."""
    return max(len(c) for c in bron_kerbosch_cliques(field, m, n))
