"""Exact parameter recovery for standard-form adjacency preservers.

Given a map table that satisfies the standard-form hypotheses (graph
homomorphism, non-degenerate, zero fixed, full-dimensional images of the
two axis cliques), reconstruct (orientation, P, Q, tau, L) so that the
standard form reproduces the table pointwise.  The pipeline mirrors the
constructive normalization: align the two image cliques onto the standard
axes, fit every row clique restriction as a weighted semi-affine map, read
the twist matrix off the denominator coefficients, and fix the remaining
diagonal freedom; the result is verified by exact functional equality over
the whole domain.

Parameters are not unique; only functional equality is promised.  One
normalization is pinned down here: denominators are scaled so their
constant term is 1, which is always possible since a denominator never
vanishes, in particular not at 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _bulk
from .cliques import (VertexSet, dim_adjacent_set, monic_col)
from .errors import (Degenerate, DimDeficient, NoFit, NotHom,
                     PreconditionViolated, UnsupportedField)
from .fields import Field, FieldHom, enumerate_homs
from .homs import (MapTable, Orientation, StandardHomParams, is_degenerate,
                   is_graph_hom, standard_table)
from .matrices import Mat, space


@dataclass(frozen=True)
class WeightedSemiAffine:
    """g(x) = k(x)^-1 x^tau P with k(x) = sum_i x_i^tau a_i + b, never 0."""

    tau: FieldHom
    P: Mat                 # n x n' over the target field
    a: tuple              # n denominator coefficients
    b: int

    def k_values(self, xs):
        """Denominator at a stack of source row vectors (N, n)."""
        F = self.tau.dst
        xt = self.tau.vapply(np.asarray(xs))
        acc = np.full(len(xt), self.b, dtype=np.int64)
        for i, ai in enumerate(self.a):
            acc = F.vadd(acc, F.vmul(xt[:, i].astype(np.int64), np.int64(ai))).astype(np.int64)
        return acc

    def evaluate(self, xs):
        """(N, n) source rows -> (N, n') images."""
        F = self.tau.dst
        xt = self.tau.vapply(np.asarray(xs))
        k = self.k_values(xs)
        if np.any(k == 0):
            raise ZeroDivisionError("denominator vanishes inside the domain")
        num = _bulk.matmul(F, xt[:, None, :], self.P.a[None])[:, 0, :]
        return F.vmul(F.inv_table[k][:, None].astype(np.int64), num)


def _row_space_points(field: Field, n: int):
    """All row vectors of length n, (q^n, n), in code order."""
    return space(field, 1, n).entries[:, 0, :]


def fit_semiaffine(src_field: Field, dst_field: Field, table,
                   tau: FieldHom | None = None) -> WeightedSemiAffine:
    """Fit a table D^n -> D'^n' as a weighted semi-affine map.

    The table rows are images in source code order and must send 0 to 0.
    With the constant denominator term pinned to 1, the relation
    k(x) g(x) = x^tau P is linear in the unknowns (a, P); the exact system
    is solved per candidate tau and each solution verified pointwise.
    Raises NoFit when no parameterization reproduces the table.
    """
    table = np.asarray(table)
    count, n2 = table.shape
    n = 0
    c = 1
    while c < count:
        c *= src_field.q
        n += 1
    if c != count:
        raise ValueError("table length is not a power of the field order")
    if table[0].any():
        raise ValueError("fit requires g(0) = 0")
    xs = _row_space_points(src_field, n)
    taus = [tau] if tau is not None else enumerate_homs(src_field, dst_field)
    F = dst_field
    for cand in taus:
        xt = cand.vapply(xs).astype(np.int64)
        # unknowns: [a_0 .. a_{n-1}, P_00 .. P_{0,n2-1}, P_10, ...]
        nunk = n + n * n2
        rows = []
        rhs = []
        for j in range(n2):
            block = np.zeros((count, nunk), dtype=np.int64)
            block[:, :n] = F.vmul(xt, table[:, j][:, None].astype(np.int64))
            for i in range(n):
                block[:, n + i * n2 + j] = F.vneg(xt[:, i])
            rows.append(block)
            rhs.append(F.vneg(table[:, j]).astype(np.int64))
        A_sys = np.concatenate(rows, axis=0)
        b_sys = np.concatenate(rhs, axis=0)
        sol = _bulk.solve_affine(F, A_sys, b_sys)
        if sol is None:
            continue
        x0, basis = sol
        # enumerate the solution coset when it is small enough to scan
        if len(basis) == 0:
            candidates = x0[None]
        elif F.q ** len(basis) <= 256:
            coeffs = _bulk.decode(F, np.arange(F.q ** len(basis)), 1, len(basis))[:, 0, :]
            shifts = np.zeros((len(coeffs), len(x0)), dtype=np.int64)
            for t in range(len(basis)):
                shifts = F.vadd(shifts, F.vmul(coeffs[:, t][:, None].astype(np.int64),
                                               basis[t][None])).astype(np.int64)
            candidates = F.vadd(x0[None], shifts)
        else:
            candidates = x0[None]
        for u in candidates:
            wsa = WeightedSemiAffine(cand, Mat(F, u[n:].reshape(n, n2)),
                                     tuple(int(t) for t in u[:n]), 1)
            if np.any(wsa.k_values(xs) == 0):
                continue
            if np.array_equal(np.asarray(wsa.evaluate(xs), dtype=np.int64),
                              table.astype(np.int64)):
                return wsa
    raise NoFit("table is not weighted semi-affine in the required form")


# ---------------------------------------------------------------------------
# the full pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecoveryResult:
    params: StandardHomParams
    residual_checked: bool


def _axis_codes(f: MapTable, kind: str, i: int):
    """Codes of the matrices supported on row i (or column i)."""
    F = f.src_field
    if kind == "row":
        xs = _row_space_points(F, f.n)
        mats = np.zeros((len(xs), f.m, f.n), dtype=F.dtype)
        mats[:, i, :] = xs
    else:
        ys = _row_space_points(F, f.m)
        mats = np.zeros((len(ys), f.m, f.n), dtype=F.dtype)
        mats[:, :, i] = ys
    return _bulk.encode(F, mats)


def _common_space_rep(field: Field, diffs, axis: str):
    reps = None
    for D in diffs:
        if axis == "col":
            j = int(np.nonzero(D.any(axis=0))[0][0])
            r = monic_col(field, D[:, j])
        else:
            i = int(np.nonzero(D.any(axis=1))[0][0])
            r = monic_col(field, D[i, :])
        if reps is None:
            reps = r
        elif not np.array_equal(reps, r):
            return None
    return reps


def _complete_rows(field: Field, rows_mat) -> Mat:
    """Extend full-row-rank (r, c) to an invertible c x c (rows on top)."""
    rows_mat = np.asarray(rows_mat)
    r, c = rows_mat.shape
    out = [rows_mat[i] for i in range(r)]
    for j in range(c):
        cand = np.zeros(c, dtype=field.dtype)
        cand[j] = 1
        trial = np.stack(out + [cand])
        if int(_bulk.rank(field, trial[None])[0]) == len(out) + 1:
            out.append(cand)
            if len(out) == c:
                break
    M = Mat(field, np.stack(out))
    assert M.rank() == c
    return M


def recover_standard(f: MapTable) -> RecoveryResult:
    """Reconstruct standard-form parameters reproducing the table exactly.

    Pipeline: exhaustive homomorphism check, degeneracy check, image-clique
    dimension check, orientation detection, axis normalization, per-clique
    weighted semi-affine fits assembling the twist matrix, diagonal
    correction, and a final exact verification over the whole domain.
    """
    if f.src_field.q < 4:
        raise UnsupportedField("recovery requires a source field with >= 4 elements")
    if f.images[0].any():
        raise PreconditionViolated("recovery requires f(0) = 0")
    ok, witness = is_graph_hom(f, "exhaustive")
    if not ok:
        raise NotHom("not a graph homomorphism", witness=witness)
    deg, dwitness = is_degenerate(f)
    if deg:
        raise Degenerate("map is degenerate", witness=dwitness)

    m1 = _axis_codes(f, "row", 0)
    n1 = _axis_codes(f, "col", 0)
    dim_m1 = dim_adjacent_set(VertexSet.from_entries(f.dst_field, f.images[m1]))
    if dim_m1 != f.n:
        raise DimDeficient(f"row axis image has dimension {dim_m1}, need {f.n}",
                           witness=("row_axis", dim_m1))
    dim_n1 = dim_adjacent_set(VertexSet.from_entries(f.dst_field, f.images[n1]))
    if dim_n1 != f.m:
        raise DimDeficient(f"column axis image has dimension {dim_n1}, need {f.m}",
                           witness=("col_axis", dim_n1))

    # orientation: which kind of clique hosts the row-axis image
    diffs = f.images[m1]
    diffs = diffs[diffs.any(axis=(1, 2))]
    if _common_space_rep(f.dst_field, diffs, "col") is not None:
        return _recover_straight(f)
    h = f.transposed_images()
    res = _recover_straight(h)
    p = res.params
    params = StandardHomParams(Orientation.TRANSPOSED, p.Q.T, p.P.T, p.tau,
                               p.L.T, f.m, f.n)
    if not np.array_equal(standard_table(params).images, f.images):
        raise NoFit("transposed parameters failed the final verification")
    return RecoveryResult(params, True)


def _recover_straight(f: MapTable) -> RecoveryResult:
    F2 = f.dst_field
    m, n, m2, n2 = f.m, f.n, f.m2, f.n2
    m1 = _axis_codes(f, "row", 0)
    n1 = _axis_codes(f, "col", 0)

    d_m = f.images[m1]
    u = _common_space_rep(F2, d_m[d_m.any(axis=(1, 2))], "col")
    d_n = f.images[n1]
    v = _common_space_rep(F2, d_n[d_n.any(axis=(1, 2))], "row")
    if u is None or v is None:
        raise NoFit("axis images do not align with opposite clique kinds")

    from .cliques import complete_to_invertible_col, complete_to_invertible_row
    P0 = complete_to_invertible_col(F2, u)
    Q0 = complete_to_invertible_row(F2, v)
    img1 = _bulk.matmul(F2, P0.inverse().a[None],
                        _bulk.matmul(F2, f.images, Q0.inverse().a[None]))

    xs_n = _row_space_points(f.src_field, n)
    xs_m = _row_space_points(f.src_field, m)
    failures = []
    for tau in enumerate_homs(f.src_field, F2):
        try:
            result = _recover_straight_for_tau(f, img1, P0, Q0, tau,
                                               xs_n, xs_m)
        except NoFit as e:
            failures.append(f"{tau!r}: {e}")
            continue
        return result
    raise NoFit("no field homomorphism fits the table: " + "; ".join(failures))


def _recover_straight_for_tau(f: MapTable, img1, P0: Mat, Q0: Mat,
                              tau: FieldHom, xs_n, xs_m) -> RecoveryResult:
    F2 = f.dst_field
    m, n, m2, n2 = f.m, f.n, f.m2, f.n2
    m1 = _axis_codes(f, "row", 0)
    n1 = _axis_codes(f, "col", 0)

    # first-stage fits on the two axis cliques pin down the inner frames
    g1 = img1[m1]
    if g1[:, 1:, :].any():
        raise NoFit("row-axis image leaks outside the standard row clique")
    fit1 = fit_semiaffine(f.src_field, F2, g1[:, 0, :], tau=tau)
    if fit1.P.rank() != n:
        raise NoFit("row-axis fit is rank deficient")
    Q2 = _complete_rows(F2, fit1.P.a)

    gN = img1[n1]
    if gN[:, :, 1:].any():
        raise NoFit("column-axis image leaks outside the standard column clique")
    fitN = fit_semiaffine(f.src_field, F2, gN[:, :, 0], tau=tau)
    if fitN.P.rank() != m:
        raise NoFit("column-axis fit is rank deficient")
    P2 = _complete_rows(F2, fitN.P.a).T

    img2 = _bulk.matmul(F2, P2.inverse().a[None],
                        _bulk.matmul(F2, img1, Q2.inverse().a[None]))

    # every axis clique must now map into its standard counterpart
    L = np.zeros((n, m), dtype=np.int64)
    dref = None
    pscale = np.zeros(m, dtype=np.int64)
    for i in range(m):
        codes = _axis_codes(f, "row", i)
        block = img2[codes]
        other = np.arange(m2) != i
        if block[:, other, :].any():
            raise NoFit(f"row clique {i} does not align with its axis")
        fit_i = fit_semiaffine(f.src_field, F2, block[:, i, :], tau=tau)
        Pi = fit_i.P.a.astype(np.int64)
        if Pi[:, n:].any() or np.any((Pi[:, :n] != 0) & ~np.eye(n, dtype=bool)):
            raise NoFit(f"row clique {i} fit is not diagonal")
        diag = Pi[np.arange(n), np.arange(n)]
        if np.any(diag == 0):
            raise NoFit(f"row clique {i} fit has a vanishing diagonal entry")
        if dref is None:
            dref = diag
            pscale[i] = 1
        else:
            ratio = F2.mul(int(diag[0]), F2.inv(int(dref[0])))
            if np.any(diag != F2.vmul(dref, np.int64(ratio))):
                raise NoFit(f"row clique {i} fit is not proportional to the first")
            pscale[i] = ratio
        L[:, i] = fit_i.a

    Pstar = Mat.diag(F2, [int(p) for p in pscale] + [1] * (m2 - m))
    Qstar = Mat.diag(F2, [int(d) for d in dref] + [1] * (n2 - n))
    P_final = P0 @ P2 @ Pstar
    Q_final = Qstar @ Q2 @ Q0
    params = StandardHomParams(Orientation.STRAIGHT, P_final, Q_final, tau,
                               Mat(F2, L), m, n)
    if not np.array_equal(standard_table(params).images, f.images):
        raise NoFit("assembled parameters failed the final verification")
    return RecoveryResult(params, True)


# ---------------------------------------------------------------------------
# dimension bound
# ---------------------------------------------------------------------------

def dim_bound_check(f: MapTable, S: VertexSet) -> bool:
    """dim of the image adjacent set never exceeds dim of the source set."""
    if (S.field, S.m, S.n) != (f.src_field, f.m, f.n):
        raise PreconditionViolated("vertex set outside the table domain")
    if not np.isin(0, S.codes):
        raise PreconditionViolated("the set must contain 0")
    if f.images[0].any():
        raise PreconditionViolated("the table must fix 0")
    img = VertexSet.from_entries(f.dst_field, f.images[S.codes])
    return dim_adjacent_set(img) <= dim_adjacent_set(S)
