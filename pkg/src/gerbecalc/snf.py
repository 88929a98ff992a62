"""Sparse integer linear algebra: Smith normal form and exact solvers.

Matrices are sparse maps (row, col) -> nonzero int.  All routines are
deterministic: pivots are chosen by a fixed rule, so repeated runs on equal
inputs produce identical output.  Coboundary matrices of simplicial
complexes are extremely sparse with many +-1 entries, so greedy unit-pivot
elimination keeps fill-in low without randomized heuristics.
"""

from __future__ import annotations

from fractions import Fraction


class SparseMat:
    """Mutable sparse integer matrix stored by rows."""

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = {}  # r -> {c: v}
        if entries:
            for (r, c), v in entries.items():
                if v:
                    self.rows.setdefault(r, {})[c] = v

    def copy(self):
        m = SparseMat(self.nrows, self.ncols)
        m.rows = {r: dict(cs) for r, cs in self.rows.items()}
        return m

    def set(self, r, c, v):
        if v:
            self.rows.setdefault(r, {})[c] = v
        else:
            row = self.rows.get(r)
            if row and c in row:
                del row[c]
                if not row:
                    del self.rows[r]

    def get(self, r, c):
        return self.rows.get(r, {}).get(c, 0)

    def items(self):
        for r, cs in self.rows.items():
            for c, v in cs.items():
                yield (r, c), v

    def transpose(self):
        m = SparseMat(self.ncols, self.nrows)
        for (r, c), v in self.items():
            m.rows.setdefault(c, {})[r] = v
        return m

    def matvec(self, x):
        """y = A @ x for sparse dict x (col -> value)."""
        y = {}
        for r, cs in self.rows.items():
            s = 0
            for c, v in cs.items():
                w = x.get(c)
                if w:
                    s += v * w
            if s:
                y[r] = s
        return y


def _row_addmul(M, target, src, k, colindex=None):
    srow = M.rows.get(src)
    if not srow:
        return
    trow = M.rows.setdefault(target, {})
    for c, v in list(srow.items()):
        nv = trow.get(c, 0) + k * v
        if nv:
            trow[c] = nv
            if colindex is not None:
                colindex.setdefault(c, set()).add(target)
        else:
            trow.pop(c, None)
            if colindex is not None:
                colindex.get(c, set()).discard(target)
    if not trow:
        del M.rows[target]


def _row_swap(M, i, j, colindex=None):
    if i == j:
        return
    ri, rj = M.rows.pop(i, None), M.rows.pop(j, None)
    if rj is not None:
        M.rows[i] = rj
    if ri is not None:
        M.rows[j] = ri
    if colindex is not None:
        cs = set()
        if ri:
            cs |= set(ri)
        if rj:
            cs |= set(rj)
        for c in cs:
            rs = colindex.get(c)
            if rs is None:
                continue
            has_i, has_j = i in rs, j in rs
            rs.discard(i)
            rs.discard(j)
            if has_i:
                rs.add(j)
            if has_j:
                rs.add(i)


class _SNFState:
    """Elimination state; V is maintained transposed so column ops are row ops."""

    def __init__(self, mat, with_transforms):
        self.A = mat.copy()
        self.n, self.m = mat.nrows, mat.ncols
        self.cols = {}
        for r, cs in self.A.rows.items():
            for c in cs:
                self.cols.setdefault(c, set()).add(r)
        self.with_transforms = with_transforms
        if with_transforms:
            self.U = SparseMat(self.n, self.n, {(i, i): 1 for i in range(self.n)})
            self.Vt = SparseMat(self.m, self.m, {(i, i): 1 for i in range(self.m)})
        else:
            self.U = self.Vt = None

    def row_addmul(self, target, src, k):
        _row_addmul(self.A, target, src, k, self.cols)
        if self.U is not None:
            _row_addmul(self.U, target, src, k)

    def col_addmul(self, target, src, k):
        for r in list(self.cols.get(src, ())):
            row = self.A.rows.get(r)
            if not row or src not in row:
                self.cols.get(src, set()).discard(r)
                continue
            v = row[src]
            nv = row.get(target, 0) + k * v
            if nv:
                row[target] = nv
                self.cols.setdefault(target, set()).add(r)
            else:
                row.pop(target, None)
                self.cols.get(target, set()).discard(r)
        if self.Vt is not None:
            _row_addmul(self.Vt, target, src, k)

    def swap_rows(self, i, j):
        _row_swap(self.A, i, j, self.cols)
        if self.U is not None:
            _row_swap(self.U, i, j)

    def swap_cols(self, i, j):
        if i == j:
            return
        for r in set(self.cols.get(i, ())) | set(self.cols.get(j, ())):
            row = self.A.rows.get(r, {})
            vi, vj = row.pop(i, None), row.pop(j, None)
            if vj is not None:
                row[i] = vj
            if vi is not None:
                row[j] = vi
        ci = self.cols.pop(i, set())
        cj = self.cols.pop(j, set())
        if cj:
            self.cols[i] = cj
        if ci:
            self.cols[j] = ci
        if self.Vt is not None:
            _row_swap(self.Vt, i, j)


def smith_normal_form(mat, with_transforms=True):
    """Return (diag, U, V) with U*A*V diagonal; diag = invariant factors.

    U, V are unimodular SparseMat (None when with_transforms is False).
    """
    st = _SNFState(mat, with_transforms)
    A, cols = st.A, st.cols
    limit = min(st.n, st.m)
    diag = []
    k = 0
    while k < limit:
        pivot = None
        best = None
        for c in sorted(cols):
            if c < k or not cols[c]:
                continue
            for r in sorted(cols[c]):
                if r < k:
                    continue
                v = abs(A.rows[r][c])
                key = (v, r, c)
                if best is None or key < best:
                    best = key
                    pivot = (r, c)
                if best[0] == 1:
                    break
            if best and best[0] == 1:
                break
        if pivot is None:
            break
        st.swap_rows(k, pivot[0])
        st.swap_cols(k, pivot[1])
        while True:
            p = A.get(k, k)
            again = False
            for r in sorted(cols.get(k, ())):
                if r == k:
                    continue
                v = A.get(r, k)
                if v == 0:
                    cols.get(k, set()).discard(r)
                    continue
                if v % p == 0:
                    st.row_addmul(r, k, -v // p)
                else:
                    st.row_addmul(r, k, -(v // p))
                    st.swap_rows(k, r)
                    again = True
                    break
            if again:
                continue
            p = A.get(k, k)
            rowk = dict(A.rows.get(k, {}))
            done = True
            for c in sorted(rowk):
                if c == k:
                    continue
                v = rowk[c]
                if v % p == 0:
                    st.col_addmul(c, k, -v // p)
                else:
                    st.col_addmul(c, k, -(v // p))
                    st.swap_cols(k, c)
                    done = False
                    break
            if done:
                break
        diag.append(A.get(k, k))
        k += 1

    # repair the divisibility chain
    i = 0
    while i < len(diag) - 1:
        a, b = diag[i], diag[i + 1]
        if a != 0 and (b % a != 0):
            st.col_addmul(i, i + 1, 1)
            while True:
                p = A.get(i, i)
                v = A.get(i + 1, i)
                if v == 0:
                    break
                if p == 0 or abs(v) < abs(p):
                    st.swap_rows(i, i + 1)
                    continue
                st.row_addmul(i + 1, i, -(v // p))
            while True:
                p = A.get(i, i)
                v = A.get(i, i + 1)
                if v == 0:
                    break
                if p == 0 or abs(v) < abs(p):
                    st.swap_cols(i, i + 1)
                    continue
                st.col_addmul(i + 1, i, -(v // p))
            diag[i] = A.get(i, i)
            diag[i + 1] = A.get(i + 1, i + 1)
            i = 0
        else:
            i += 1
    for i, d in enumerate(diag):
        if d < 0:
            diag[i] = -d
            if st.U is not None:
                urow = st.U.rows.get(i, {})
                for c in list(urow):
                    urow[c] *= -1
    V = st.Vt.transpose() if st.Vt is not None else None
    return diag, st.U, V


def snf_diagonal(mat):
    """Invariant factors only (no transform bookkeeping)."""
    diag, _, _ = smith_normal_form(mat, with_transforms=False)
    return diag


def solve_int(mat, rhs):
    """Solve mat @ x = rhs over the integers.

    rhs is a dict row -> int.  Returns x as dict col -> int, or None when no
    integer solution exists.
    """
    diag, U, V = smith_normal_form(mat)
    bp = U.matvec(rhs)
    y = {}
    for r, v in bp.items():
        if r < len(diag) and diag[r] != 0:
            if v % diag[r] != 0:
                return None
            y[r] = v // diag[r]
        elif v != 0:
            return None
    return V.matvec(y)


def solve_rational(mat, rhs):
    """Solve mat @ x = rhs over the rationals (entries int or Fraction).

    Gaussian elimination with deterministic pivoting; returns dict col ->
    Fraction, or None when inconsistent.
    """
    rows = []
    for r in sorted(set(list(mat.rows) + list(rhs))):
        cs = {c: Fraction(v) for c, v in mat.rows.get(r, {}).items()}
        b = Fraction(rhs.get(r, 0))
        if cs or b:
            rows.append((cs, b))
    assigned = {}
    pivots = []
    for cs, b in rows:
        for pc, (pcs, pb) in pivots:
            coef = cs.pop(pc, None)
            if coef:
                for c, v in pcs.items():
                    nv = cs.get(c, Fraction(0)) - coef * v
                    if nv:
                        cs[c] = nv
                    else:
                        cs.pop(c, None)
                b -= coef * pb
        if not cs:
            if b != 0:
                return None
            continue
        pc = min(cs)
        pv = cs.pop(pc)
        pcs = {c: v / pv for c, v in cs.items()}
        pb = b / pv
        pivots.append((pc, (pcs, pb)))
    for pc, (pcs, pb) in reversed(pivots):
        val = pb
        for c, v in pcs.items():
            val -= v * assigned.get(c, Fraction(0))
        assigned[pc] = val
    return {c: v for c, v in assigned.items() if v}
