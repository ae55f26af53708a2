"""Exact dense linear algebra over small fields: Q, GF(p) and Q(i).

Matrices are lists of lists.  Entries are Fractions for Q, ints in [0, p)
for GF(p) and GaussianRational for Q(i).  Two fast paths matter in
practice: GF(2) rows are packed into Python ints (XOR elimination), and
integer matrices over Q go through fraction-free Bareiss elimination.
Everything else is plain Gaussian elimination over the field.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussrat import GaussianRational


# ---------------------------------------------------------------------------
# fields


class FieldQ:
    name = "q"

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def coerce(x):
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def is_zero(a):
        return not a


class FieldGF:
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"f{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, Fraction):
            den = pow(x.denominator % self.p, self.p - 2, self.p)
            return (x.numerator % self.p) * den % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0


class FieldQi:
    name = "qi"

    zero = GaussianRational(0)
    one = GaussianRational(1)

    @staticmethod
    def coerce(x):
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return GaussianRational(1) / a

    @staticmethod
    def is_zero(a):
        return not a


QQ = FieldQ()
F2 = FieldGF(2)
QQI = FieldQi()


def field_from_name(name: str):
    if name == "q":
        return QQ
    if name == "qi":
        return QQI
    if name.startswith("f"):
        return FieldGF(int(name[1:]))
    raise ValueError(f"unknown field {name!r}")


# ---------------------------------------------------------------------------
# GF(2) bitset kernels


def _pack_rows_f2(rows):
    packed = []
    for row in rows:
        v = 0
        for j, x in enumerate(row):
            if int(x) & 1:
                v |= 1 << j
        packed.append(v)
    return packed


def rank_f2(rows, ncols=None) -> int:
    """Rank over GF(2); rows may be bit-packed ints or lists of 0/1."""
    if rows and not isinstance(rows[0], int):
        rows = _pack_rows_f2(rows)
    pivots = []
    rank = 0
    for v in rows:
        for pv in pivots:
            low = pv & -pv
            if v & low:
                v ^= pv
        if v:
            pivots.append(v)
            rank += 1
    return rank


def nullspace_f2(rows, ncols):
    """Basis of {x : M x = 0} over GF(2), vectors as bit-packed ints."""
    if rows and not isinstance(rows[0], int):
        rows = _pack_rows_f2(rows)
    # Row-reduce the transpose augmented with identity: zero rows of the
    # reduced transpose expose null vectors in the augmentation.
    cols = []
    for j in range(ncols):
        v = 0
        for i, r in enumerate(rows):
            if (r >> j) & 1:
                v |= 1 << i
        cols.append((v, 1 << j))
    basis = []
    pivots = []
    for v, tag in cols:
        for pv, ptag in pivots:
            low = pv & -pv
            if v & low:
                v ^= pv
                tag ^= ptag
        if v:
            pivots.append((v, tag))
        else:
            basis.append(tag)
    return basis


def bits_to_vector(bits: int, ncols: int):
    return [(bits >> j) & 1 for j in range(ncols)]


# ---------------------------------------------------------------------------
# exact rank over Q for integer matrices (sparse elimination)


def rank_int(rows) -> int:
    """Rank over Q of an integer matrix.

    Sparse Gaussian elimination with exact rational scaling; pivots of
    absolute value 1 are preferred, which keeps chain-complex boundary
    matrices integral throughout.
    """
    sparse = []
    for r in rows:
        d = {j: Fraction(int(x)) for j, x in enumerate(r) if x}
        if d:
            sparse.append(d)
    return _rank_sparse_fractions(sparse)


def _rank_sparse_fractions(sparse) -> int:
    rank = 0
    col_count = {}
    for row in sparse:
        for j in row:
            col_count[j] = col_count.get(j, 0) + 1
    while sparse:
        # favour +-1 pivots in short rows and thin columns (fill-in control)
        best = None
        for ri, row in enumerate(sparse):
            for j, v in row.items():
                unit = 0 if abs(v) == 1 else 1
                score = (unit, (len(row) - 1) * (col_count[j] - 1))
                if best is None or score < best[0]:
                    best = (score, ri, j)
            if best is not None and best[0] == (0, 0):
                break
        _, ri, pc = best
        pivot_row = sparse.pop(ri)
        pv = pivot_row[pc]
        rank += 1
        for j in pivot_row:
            col_count[j] -= 1
        survivors = []
        for row in sparse:
            if pc in row:
                f = row[pc] / pv
                for j in row:
                    col_count[j] -= 1
                for j, v in pivot_row.items():
                    row[j] = row.get(j, Fraction(0)) - f * v
                row = {j: v for j, v in row.items() if v}
                for j in row:
                    col_count[j] = col_count.get(j, 0) + 1
            if row:
                survivors.append(row)
        sparse = survivors
    return rank


# ---------------------------------------------------------------------------
# generic elimination over a field


def _is_int_matrix(rows):
    for r in rows:
        for x in r:
            if isinstance(x, int):
                continue
            if isinstance(x, Fraction) and x.denominator == 1:
                continue
            return False
    return True


def rank(rows, field=QQ) -> int:
    """Matrix rank over the given field."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if isinstance(field, FieldGF) and field.p == 2:
        return rank_f2([[field.coerce(x) for x in r] for r in rows])
    if field is QQ and _is_int_matrix(rows):
        return rank_int(rows)
    return len(rref(rows, field)[1])


def rref(rows, field=QQ):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [[field.coerce(x) for x in r] for r in rows]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if not field.is_zero(m[i][col]):
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = field.inv(m[row][col])
        m[row] = [field.mul(inv, x) for x in m[row]]
        for i in range(nrows):
            if i != row and not field.is_zero(m[i][col]):
                c = m[i][col]
                m[i] = [field.sub(x, field.mul(c, y)) for x, y in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return m, pivots


def nullspace(rows, ncols, field=QQ):
    """Basis of the right kernel {x : M x = 0} as a list of vectors."""
    if not rows:
        basis = []
        for j in range(ncols):
            v = [field.zero] * ncols
            v[j] = field.one
            basis.append(v)
        return basis
    if isinstance(field, FieldGF) and field.p == 2:
        bits = nullspace_f2([[field.coerce(x) for x in r] for r in rows], ncols)
        return [bits_to_vector(b, ncols) for b in bits]
    red, pivots = rref(rows, field)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for j in free:
        v = [field.zero] * ncols
        v[j] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.sub(field.zero, red[i][j])
        basis.append(v)
    return basis


def solve(rows, rhs, field=QQ):
    """One solution of M x = rhs, or None if inconsistent."""
    if not rows:
        return None if any(not field.is_zero(field.coerce(b)) for b in rhs) else []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    for i in range(len(red)):
        if all(field.is_zero(x) for x in red[i][:ncols]) and not field.is_zero(red[i][ncols]):
            return None
    x = [field.zero] * ncols
    for i, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = red[i][ncols]
    return x


def mat_vec(rows, x, field=QQ):
    out = []
    for r in rows:
        s = field.zero
        for a, b in zip(r, x):
            s = field.add(s, field.mul(field.coerce(a), field.coerce(b)))
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# exact rational linear programming (two-phase primal simplex, Bland's rule)


class LPResult:
    def __init__(self, status, value=None, x=None):
        self.status = status  # "optimal" | "infeasible" | "unbounded"
        self.value = value
        self.x = x

    def __repr__(self):
        return f"LPResult({self.status}, value={self.value})"


def lp_maximize(a_eq, b_eq, c) -> LPResult:
    """maximize c.x subject to a_eq x = b_eq, x >= 0, in exact rationals.

    Small dense tableau simplex; Bland's rule guarantees termination.
    Suitable for the desk-scale simplex-intersection queries only.
    """
    m = len(a_eq)
    n = len(c)
    A = [[Fraction(x) for x in row] for row in a_eq]
    b = [Fraction(x) for x in b_eq]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    # phase 1: minimize sum of artificials
    total = n + m
    tab = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m

    def reduced_costs(active):
        z = [Fraction(0)] * (total + 1)
        for i, bi in enumerate(basis):
            cb = cost[bi]
            if cb:
                for j in range(total + 1):
                    z[j] += cb * tab[i][j]
        return [cost[j] - z[j] if j < total else -z[j] for j in list(range(total)) + [total]], z

    def pivot(row, col):
        pv = tab[row][col]
        tab[row] = [x / pv for x in tab[row]]
        for i in range(m):
            if i != row and tab[i][col]:
                f = tab[i][col]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[row])]
        basis[row] = col

    def simplex(minimize_cost, allowed):
        while True:
            # reduced cost for minimization: pick entering with negative rc
            z = [Fraction(0)] * (total + 1)
            for i, bi in enumerate(basis):
                cb = minimize_cost[bi]
                if cb:
                    for j in range(total + 1):
                        z[j] += cb * tab[i][j]
            enter = None
            for j in allowed:
                if minimize_cost[j] - z[j] < 0:
                    enter = j
                    break
            if enter is None:
                return z[total]
            leave = None
            best = None
            for i in range(m):
                if tab[i][enter] > 0:
                    ratio = tab[i][total] / tab[i][enter]
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave is None:
                return None  # unbounded
            pivot(leave, enter)

    allowed1 = list(range(total))
    val1 = simplex(cost, allowed1)
    if val1 is None or val1 > 0:
        return LPResult("infeasible")

    # drive artificials out of the basis where possible, drop redundant rows
    for i in range(m):
        if basis[i] >= n:
            piv_col = None
            for j in range(n):
                if tab[i][j]:
                    piv_col = j
                    break
            if piv_col is not None:
                pivot(i, piv_col)

    # phase 2: maximize c over structural columns (artificials pinned at 0)
    cost2 = [-Fraction(x) for x in c] + [Fraction(0)] * m
    allowed2 = list(range(n))
    val2 = simplex(cost2, allowed2)
    if val2 is None:
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i][total]
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    return LPResult("optimal", value, x)
