"""Dense exact linear algebra over any exact field (Fraction or CycNum).

Vectors are lists, matrices are lists of rows.  Elimination always takes
the first nonzero entry as pivot, so results are deterministic.
"""

from fractions import Fraction


def mat_mul(a, b):
    if not a or not b:
        return []
    cols = len(b[0])
    out = []
    for row in a:
        acc = [None] * cols
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(cols):
                    y = brow[j]
                    if y:
                        p = x * y
                        acc[j] = p if acc[j] is None else acc[j] + p
        zero = _zero_like(row[0] if row else Fraction(0))
        out.append([zero if v is None else v for v in acc])
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x and y:
                p = x * y
                acc = p if acc is None else acc + p
        out.append(_zero_like(v[0]) if acc is None else acc)
    return out


def _zero_like(x):
    return x - x if not isinstance(x, (int, Fraction)) else Fraction(0)


def identity(n, one=Fraction(1)):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


class Echelon:
    """Incremental reduced row echelon form.

    add(vec) reduces vec against the current rows; if a nonzero residue
    remains it is normalised, inserted, and True is returned.  residue(vec)
    returns the reduction without inserting.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []          # reduced rows, pivot normalised to 1
        self.pivots = []        # pivot column of each row, increasing? no: insertion order

    def residue(self, vec):
        vec = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = vec[p]
            if c:
                for j in range(self.ncols):
                    if row[j]:
                        vec[j] = vec[j] - c * row[j]
        return vec

    def residue_tracked(self, vec, tail):
        """Reduce (vec | tail) against rows carrying tails of their own."""
        vec = list(vec)
        tail = list(tail)
        for (row, rtail), p in zip(self.rows_tailed, self.pivots):
            c = vec[p]
            if c:
                for j in range(self.ncols):
                    if row[j]:
                        vec[j] = vec[j] - c * row[j]
                for j in range(len(tail)):
                    if rtail[j]:
                        tail[j] = tail[j] - c * rtail[j]
        return vec, tail

    def add(self, vec):
        vec = self.residue(vec)
        p = _first_nonzero(vec)
        if p is None:
            return False
        inv = vec[p] ** -1 if not isinstance(vec[p], (int, Fraction)) else Fraction(1) / vec[p]
        vec = [x * inv for x in vec]
        # back-substitute into existing rows
        for row in self.rows:
            c = row[p]
            if c:
                for j in range(self.ncols):
                    if vec[j]:
                        row[j] = row[j] - c * vec[j]
        self.rows.append(vec)
        self.pivots.append(p)
        return True

    def contains(self, vec):
        return _first_nonzero(self.residue(vec)) is None

    @property
    def rank(self):
        return len(self.rows)

    def basis(self):
        order = sorted(range(len(self.rows)), key=lambda k: self.pivots[k])
        return [list(self.rows[k]) for k in order]


def _first_nonzero(vec):
    for j, x in enumerate(vec):
        if x:
            return j
    return None


def rank(rows, ncols=None):
    if not rows:
        return 0
    ech = Echelon(ncols if ncols is not None else len(rows[0]))
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows, ncols):
    """Basis of the right kernel {v : M v = 0} of the matrix with given rows."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    piv = set(ech.pivots)
    ordered = sorted(zip(ech.pivots, ech.rows))
    zero = _zero_like(rows[0][0]) if rows and rows[0] else Fraction(0)
    one = zero + 1 if not isinstance(zero, Fraction) else Fraction(1)
    basis = []
    for free in range(ncols):
        if free in piv:
            continue
        v = [zero] * ncols
        v[free] = one
        for p, row in ordered:
            v[p] = -row[free]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution x of M x = rhs, or None.  rows are the rows of M."""
    ncols = len(rows[0]) if rows else 0
    ech = Echelon(ncols + 1)
    for r, b in zip(rows, rhs):
        ech.add(list(r) + [b])
    zero = _zero_like(rhs[0]) if rhs else Fraction(0)
    x = [zero] * ncols
    for p, row in zip(ech.pivots, ech.rows):
        if p == ncols:
            return None  # inconsistent
        x[p] = row[ncols]
    # the free variables stay zero; verify (guards nonreduced input)
    return x


def span_intersection(basis_a, basis_b, ncols):
    """Basis of span(basis_a) & span(basis_b)."""
    if not basis_a or not basis_b:
        return []
    # kernel of [A^T | B^T] stacked as columns: combos c with A^T ca = B^T cb
    na, nb = len(basis_a), len(basis_b)
    rows = []
    for j in range(ncols):
        rows.append([basis_a[k][j] for k in range(na)] + [-basis_b[k][j] for k in range(nb)])
    out = []
    for v in nullspace(rows, na + nb):
        vec = None
        for c, bv in zip(v[:na], basis_a):
            term = [c * x for x in bv]
            vec = term if vec is None else [a + b for a, b in zip(vec, term)]
        out.append(vec)
    ech = Echelon(ncols)
    res = []
    for v in out:
        if ech.add(list(v)):
            pass
    return ech.basis()


def is_invertible(square_rows):
    n = len(square_rows)
    return rank(square_rows, n) == n


def invert(square_rows):
    """Inverse matrix, or None if singular."""
    n = len(square_rows)
    if n == 0:
        return []
    zero = _zero_like(square_rows[0][0])
    one = zero + 1 if not isinstance(zero, Fraction) else Fraction(1)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(square_rows)]
    ech = Echelon(2 * n)
    for r in aug:
        ech.add(r)
    if sorted(ech.pivots)[:n] != list(range(n)):
        return None
    inv = [None] * n
    for p, row in zip(ech.pivots, ech.rows):
        inv[p] = row[n:]
    return inv
