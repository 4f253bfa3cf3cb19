"""Exact rational linear algebra and univariate rational functions.

Everything here works over Fraction; no floats anywhere.  Polynomials are
plain coefficient lists (index = exponent), rational functions are
(num, den) pairs kept gcd-reduced with monic denominator.  This is the
substrate for scalar Laurent-series inversion in the matrix engine.
"""

from fractions import Fraction

F0 = Fraction(0)
F1 = Fraction(1)


# ---------------------------------------------------------------------------
# dense matrices over Fraction
# ---------------------------------------------------------------------------

def mat_rank(rows):
    """Rank of a list-of-lists Fraction matrix (destructive on a copy)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = F1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                c = m[i][col]
                m[i] = [a - c * b for a, b in zip(m[i], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def mat_nullspace(rows):
    """Basis of the right nullspace of an m x n Fraction matrix."""
    m = [list(r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    pivots = {}  # col -> row
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = F1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                c = m[i][col]
                m[i] = [a - c * b for a, b in zip(m[i], m[row])]
        pivots[col] = row
        row += 1
        if row == len(m):
            break
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        v = [F0] * ncols
        v[fc] = F1
        for pc, pr in pivots.items():
            v[pc] = -m[pr][fc]
        basis.append(v)
    return basis


class Solver:
    """LU-style solver: factor a square invertible matrix once, solve many."""

    def __init__(self, rows):
        n = len(rows)
        aug = [list(r) + [F1 if i == j else F0 for j in range(n)]
               for i, r in enumerate(rows)]
        for col in range(n):
            piv = None
            for i in range(col, n):
                if aug[i][col]:
                    piv = i
                    break
            if piv is None:
                raise ValueError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = F1 / aug[col][col]
            aug[col] = [v * inv for v in aug[col]]
            for i in range(n):
                if i != col and aug[i][col]:
                    c = aug[i][col]
                    aug[i] = [a - c * b for a, b in zip(aug[i], aug[col])]
        self.n = n
        self.inv = [r[n:] for r in aug]

    def solve(self, b):
        return [sum(self.inv[i][j] * b[j] for j in range(self.n) if b[j])
                for i in range(self.n)]


# ---------------------------------------------------------------------------
# polynomials over Fraction: list of coefficients, p[i] is the z^i coefficient
# ---------------------------------------------------------------------------

def p_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def p_add(a, b):
    n = max(len(a), len(b))
    out = [F0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return p_trim(out)


def p_sub(a, b):
    n = max(len(a), len(b))
    out = [F0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return p_trim(out)


def p_mul(a, b):
    if not a or not b:
        return []
    out = [F0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if not c:
            continue
        for j, d in enumerate(b):
            if d:
                out[i + j] += c * d
    return p_trim(out)


def p_scale(a, c):
    if not c:
        return []
    return [v * c for v in a]


def p_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [F0] * max(0, len(a) - len(b) + 1)
    inv = F1 / b[-1]
    while p_trim(a) and len(a) >= len(b):
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i, d in enumerate(b):
            a[k + i] -= c * d
        a.pop()
    return p_trim(q), p_trim(a)


def p_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, p_divmod(a, b)[1]
    if a:
        inv = F1 / a[-1]
        a = [v * inv for v in a]
    return a


# ---------------------------------------------------------------------------
# rational functions: (num, den), den monic, gcd(num, den) = 1
# ---------------------------------------------------------------------------

RF_ZERO = ((), (F1,))


def rf_make(num, den):
    num, den = p_trim(list(num)), p_trim(list(den))
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return RF_ZERO
    g = p_gcd(num, den)
    if len(g) > 1:
        num = p_divmod(num, g)[0]
        den = p_divmod(den, g)[0]
    lead = den[-1]
    if lead != 1:
        inv = F1 / lead
        num = [v * inv for v in num]
        den = [v * inv for v in den]
    return (tuple(num), tuple(den))


def rf_from_poly(p):
    return rf_make(p, [F1])


def rf_add(x, y):
    return rf_make(p_add(p_mul(list(x[0]), list(y[1])),
                         p_mul(list(y[0]), list(x[1]))),
                   p_mul(list(x[1]), list(y[1])))


def rf_sub(x, y):
    return rf_make(p_sub(p_mul(list(x[0]), list(y[1])),
                         p_mul(list(y[0]), list(x[1]))),
                   p_mul(list(x[1]), list(y[1])))


def rf_mul(x, y):
    return rf_make(p_mul(list(x[0]), list(y[0])),
                   p_mul(list(x[1]), list(y[1])))


def rf_inv(x):
    if not x[0]:
        raise ZeroDivisionError("inverting zero rational function")
    return rf_make(list(x[1]), list(x[0]))


def rf_is_zero(x):
    return not x[0]


def rf_mat_inverse(mat):
    """Invert a square matrix of rational functions over Q(z).

    Returns the inverse as a list of lists of rational functions, or None
    if the matrix is singular.
    """
    n = len(mat)
    one = rf_from_poly([F1])
    aug = [[mat[i][j] for j in range(n)] +
           [one if i == j else RF_ZERO for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if not rf_is_zero(aug[i][col]):
                piv = i
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = rf_inv(aug[col][col])
        aug[col] = [rf_mul(inv, v) for v in aug[col]]
        for i in range(n):
            if i != col and not rf_is_zero(aug[i][col]):
                c = aug[i][col]
                aug[i] = [rf_sub(a, rf_mul(c, b))
                          for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def rf_is_laurent(x):
    """True if the rational function is a Laurent polynomial (monomial den)."""
    den = x[1]
    return sum(1 for c in den if c) <= 1


def rf_laurent_coeffs(x, floor=None):
    """Expand num/den as a Laurent series in z^{-1}.

    Returns dict exponent -> Fraction.  If the denominator is a monomial the
    expansion is exact and finite (floor may be None); otherwise coefficients
    are produced for exponents >= floor, which must then be given.
    """
    num, den = list(x[0]), list(x[1])
    if not num:
        return {}
    shift = 0
    while den and not den[0]:
        den.pop(0)
        shift += 1
    if len(den) == 1:
        inv = F1 / den[0]
        return {i - shift: c * inv for i, c in enumerate(num) if c}
    if floor is None:
        raise ValueError("non-polynomial expansion needs a floor")
    # den = z^t (d_t + d_{t-1} z^-1 + ...): geometric series in z^-1
    t = len(den) - 1
    dt = den[-1]
    inv_dt = F1 / dt
    # u_j = d_{t-j} / d_t for j >= 1
    u = {j: den[t - j] * inv_dt for j in range(1, t + 1) if den[t - j]}
    topnum = len(num) - 1
    depth = topnum - t - shift - floor  # lowest needed power of (1+u)^-1
    series = {0: F1}  # expansion of (1 + u)^{-1} in powers of z^-1
    term = {0: F1}
    for _ in range(max(0, depth)):
        nxt = {}
        for j, c in term.items():
            for k, d in u.items():
                nxt[j + k] = nxt.get(j + k, F0) - c * d
        term = {j: c for j, c in nxt.items() if c and j <= max(0, depth)}
        if not term:
            break
        for j, c in term.items():
            series[j] = series.get(j, F0) + c
    out = {}
    for i, c in enumerate(num):
        if not c:
            continue
        for j, d in series.items():
            e = i - t - shift - j
            if e >= floor:
                out[e] = out.get(e, F0) + c * d * inv_dt
    return {e: c for e, c in out.items() if c}


# ---------------------------------------------------------------------------
# sparse scalar matrices indexed by box numbers
# ---------------------------------------------------------------------------

class SMat:
    """Sparse matrix over Fraction, indexed by box numbers 1..N.

    Used for the shift operators F, F^t, subspace projectors, centralizer
    elements and everything else scalar in End V.
    """

    __slots__ = ("d",)

    def __init__(self, entries=None):
        self.d = {}
        if entries:
            for (r, c), v in entries.items():
                v = Fraction(v)
                if v:
                    self.d[(r, c)] = v

    @classmethod
    def unit(cls, boxes):
        m = cls()
        m.d = {(b, b): F1 for b in boxes}
        return m

    @classmethod
    def elem(cls, r, c, v=F1):
        m = cls()
        v = Fraction(v)
        if v:
            m.d = {(r, c): v}
        return m

    def __bool__(self):
        return bool(self.d)

    def __eq__(self, other):
        return isinstance(other, SMat) and self.d == other.d

    def __hash__(self):
        return hash(frozenset(self.d.items()))

    def __add__(self, other):
        out = dict(self.d)
        for k, v in other.d.items():
            s = out.get(k, F0) + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        m = SMat()
        m.d = out
        return m

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        m = SMat()
        m.d = {k: -v for k, v in self.d.items()}
        return m

    def scale(self, c):
        c = Fraction(c)
        m = SMat()
        if c:
            m.d = {k: v * c for k, v in self.d.items()}
        return m

    def __matmul__(self, other):
        by_row = {}
        for (r, c), v in other.d.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, c), v in self.d.items():
            for c2, v2 in by_row.get(c, ()):
                k = (r, c2)
                s = out.get(k, F0) + v * v2
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        m = SMat()
        m.d = out
        return m

    def transpose(self):
        m = SMat()
        m.d = {(c, r): v for (r, c), v in self.d.items()}
        return m

    def trace(self):
        return sum((v for (r, c), v in self.d.items() if r == c), F0)

    def restrict(self, rows=None, cols=None):
        m = SMat()
        m.d = {(r, c): v for (r, c), v in self.d.items()
               if (rows is None or r in rows) and (cols is None or c in cols)}
        return m

    def apply(self, box):
        """Image of basis vector `box` as dict target_box -> Fraction."""
        return {r: v for (r, c), v in self.d.items() if c == box}

    def entry(self, r, c):
        return self.d.get((r, c), F0)

    def items(self):
        return self.d.items()


def smat_power(m, k, boxes):
    out = SMat.unit(boxes)
    for _ in range(k):
        out = out @ m
    return out

