"""Matrices over U(gl_N)[z] and Laurent series in z^{-1}.

A ZSeries is a Laurent object sum_m a_m z^m with a_m in U(gl_N), known
exactly for all exponents m >= floor (floor None = known everywhere, i.e.
an exact Laurent polynomial).  Floors propagate through arithmetic so a
comparison can always report the range on which it actually checked.

An EMat is a sparse box-indexed matrix of ZSeries.  Everything is kept in
one ambient index set (the boxes of a pyramid); subspace restrictions are
projector multiplications, matching the calculus the whole construction is
phrased in.

Matrix inversion splits off the known scalar part P (an exact Laurent
polynomial matrix), inverts it over Q(z) by Gaussian elimination, and
resums the correction by a Neumann series.  The identity M = P + Q is
exact, so no error estimates are needed: all uncertainty lives in the
floor of Q and propagates mechanically.
"""

from fractions import Fraction

from .ratlin import (F0, F1, SMat, rf_make, rf_mat_inverse, rf_is_laurent,
                     rf_laurent_coeffs, RF_ZERO)
from .uea import Env


def _floor_max(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class ZSeries:
    __slots__ = ("c", "floor")

    def __init__(self, c=None, floor=None):
        self.c = {}
        if c:
            for m, e in c.items():
                if e and (floor is None or m >= floor):
                    self.c[m] = e
        self.floor = floor

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def of(cls, env, exp=0):
        if not isinstance(env, Env):
            env = Env.scalar(env)
        return cls({exp: env} if env else {}, None)

    def is_known_zero(self):
        return not self.c

    def is_exact_zero(self):
        return not self.c and self.floor is None

    def top(self):
        return max(self.c) if self.c else None

    def coeff(self, m):
        return self.c.get(m, Env.zero())

    def __add__(self, other):
        floor = _floor_max(self.floor, other.floor)
        out = dict(self.c)
        for m, e in other.c.items():
            s = out.get(m)
            s = e if s is None else s + e
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return ZSeries(out, floor)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        z = ZSeries()
        z.c = {m: -e for m, e in self.c.items()}
        z.floor = self.floor
        return z

    def scale(self, v):
        """Multiply by a Fraction (or int)."""
        v = Fraction(v)
        z = ZSeries()
        if v:
            z.c = {m: e.scale(v) for m, e in self.c.items()}
        z.floor = self.floor
        return z

    def shift(self, k):
        z = ZSeries()
        z.c = {m + k: e for m, e in self.c.items()}
        z.floor = None if self.floor is None else self.floor + k
        return z

    def _combine(self, other, fn):
        """Generic convolution; fn multiplies coefficients."""
        floor = None
        cands = []
        if self.floor is not None:
            if other.c:
                cands.append(self.floor + max(other.c))
            if other.floor is not None:
                cands.append(self.floor + other.floor - 1)
        if other.floor is not None:
            if self.c:
                cands.append(other.floor + max(self.c))
        if cands:
            floor = max(cands)
        out = {}
        for m1, e1 in self.c.items():
            for m2, e2 in other.c.items():
                m = m1 + m2
                if floor is not None and m < floor:
                    continue
                p = fn(e1, e2)
                if p:
                    s = out.get(m)
                    s = p if s is None else s + p
                    if s:
                        out[m] = s
                    elif m in out:
                        del out[m]
        return ZSeries(out, floor)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    def bracket(self, other):
        return self._combine(other, lambda a, b: a.bracket(b))

    def truncate(self, floor):
        if floor is None:
            return self
        return ZSeries({m: e for m, e in self.c.items() if m >= floor},
                       _floor_max(self.floor, floor))

    def map_env(self, fn):
        out = {}
        for m, e in self.c.items():
            v = fn(e)
            if v:
                out[m] = v
        return ZSeries(out, self.floor)

    def scalar_coeffs(self):
        """The known scalar part as dict exp -> Fraction."""
        out = {}
        for m, e in self.c.items():
            s = e.scalar_part()
            if s:
                out[m] = s
        return out

    def __repr__(self):
        from .uea import format_env
        bits = []
        for m in sorted(self.c, reverse=True):
            bits.append("z^%d*(%s)" % (m, format_env(self.c[m])))
        body = " + ".join(bits) if bits else "0"
        if self.floor is not None:
            body += " + O(z^%d)" % (self.floor - 1)
        return body


def series_equal(a, b):
    """Compare two ZSeries on the common known range.

    Returns (equal, floor): floor is the lowest exponent actually compared
    (None when the comparison was exact on all exponents).
    """
    floor = _floor_max(a.floor, b.floor)
    ka = {m: e for m, e in a.c.items() if floor is None or m >= floor}
    kb = {m: e for m, e in b.c.items() if floor is None or m >= floor}
    return ka == kb, floor


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class EMat:
    __slots__ = ("e",)

    def __init__(self, e=None):
        self.e = {}
        if e:
            for k, z in e.items():
                if z.c or z.floor is not None:
                    self.e[k] = z

    @classmethod
    def identity(cls, boxes):
        return cls({(b, b): ZSeries.of(F1) for b in boxes})

    @classmethod
    def from_smat(cls, m, exp=0):
        return cls({k: ZSeries.of(v, exp) for k, v in m.items()})

    def rows(self):
        return sorted({r for (r, _) in self.e})

    def cols(self):
        return sorted({c for (_, c) in self.e})

    def entry(self, r, c):
        return self.e.get((r, c), ZSeries.zero())

    def __add__(self, other):
        out = dict(self.e)
        for k, z in other.e.items():
            cur = out.get(k)
            out[k] = z if cur is None else cur + z
        return EMat(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        m = EMat()
        m.e = {k: -z for k, z in self.e.items()}
        return m

    def scale(self, v):
        m = EMat()
        m.e = {k: z.scale(v) for k, z in self.e.items()}
        return m

    def _combine(self, other, fn):
        by_row = {}
        for (r, c), z in other.e.items():
            by_row.setdefault(r, []).append((c, z))
        out = {}
        for (r, c), z in self.e.items():
            mids = by_row.get(c)
            if not mids:
                continue
            for c2, z2 in mids:
                p = z._combine(z2, fn)
                if p.c or p.floor is not None:
                    k = (r, c2)
                    cur = out.get(k)
                    out[k] = p if cur is None else cur + p
        return EMat(out)

    def __matmul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    def bracket1(self, other):
        """Bracket on the U(g) factor, product on the matrix factor."""
        return self._combine(other, lambda a, b: a.bracket(b))

    def lmul_smat(self, m):
        return EMat.from_smat(m) @ self

    def rmul_smat(self, m):
        return self @ EMat.from_smat(m)

    def restrict(self, rows=None, cols=None):
        m = EMat()
        m.e = {(r, c): z for (r, c), z in self.e.items()
               if (rows is None or r in rows) and (cols is None or c in cols)}
        return m

    def shift(self, k):
        m = EMat()
        m.e = {key: z.shift(k) for key, z in self.e.items()}
        return m

    def truncate(self, floor):
        return EMat({k: z.truncate(floor) for k, z in self.e.items()})

    def map_entries(self, fn):
        return EMat({k: fn(z) for k, z in self.e.items()})

    def is_known_zero(self):
        return all(z.is_known_zero() for z in self.e.values())

    def worst_floor(self):
        fl = None
        for z in self.e.values():
            fl = _floor_max(fl, z.floor)
        return fl

    def coeff_smat(self, m):
        """Scalar part of the z^m coefficient as an SMat (nonscalar parts
        are ignored; use coeff_env for the full coefficient)."""
        out = SMat()
        for (r, c), z in self.e.items():
            v = z.coeff(m).scalar_part()
            if v:
                out.d[(r, c)] = v
        return out

    def coeff_mat(self, m):
        """The z^m coefficient as an EMat of plain elements."""
        out = {}
        for (r, c), z in self.e.items():
            e = z.coeff(m)
            if e:
                out[(r, c)] = ZSeries.of(e)
        return EMat(out)


def mat_series_equal(a, b):
    keys = set(a.e) | set(b.e)
    floor = None
    ok = True
    for k in keys:
        eq, fl = series_equal(a.entry(*k), b.entry(*k))
        ok = ok and eq
        floor = _floor_max(floor, fl)
    return ok, floor


# ---------------------------------------------------------------------------
# the matrices E_j of the tautological element
# ---------------------------------------------------------------------------

def e_full(view):
    """E: entry (a,b) is the generator e_{ba}, over the view's boxes."""
    out = {}
    for a in view.boxes:
        for b in view.boxes:
            out[(a, b)] = ZSeries.of(Env.gen(b, a))
    return EMat(out)


def e_deg2(view, j2):
    """E_j for doubled degree j2 (entries e_{ba} with deg e_{ba} = j)."""
    out = {}
    for a in view.boxes:
        for b in view.boxes:
            if view.deg2(b, a) == j2:
                out[(a, b)] = ZSeries.of(Env.gen(b, a))
    return EMat(out)


def e_le0(view):
    out = {}
    for a in view.boxes:
        for b in view.boxes:
            if view.deg2(b, a) <= 0:
                out[(a, b)] = ZSeries.of(Env.gen(b, a))
    return EMat(out)


def e_p_matrix(view, lagrangian=frozenset()):
    """The part of E spanned by the PBW complement p of m: degree <= 1/2
    pairs minus the lagrangian."""
    out = {}
    for a in view.boxes:
        for b in view.boxes:
            if view.deg2(b, a) <= 1 and (b, a) not in lagrangian:
                out[(a, b)] = ZSeries.of(Env.gen(b, a))
    return EMat(out)


# ---------------------------------------------------------------------------
# inversion
# ---------------------------------------------------------------------------

class SingularMatrixError(ArithmeticError):
    pass


def _scalar_inverse(scal, rows, cols, floor):
    """Invert the exact Laurent-polynomial scalar matrix given by
    scal[(r, c)] = {exp: Fraction} over Q(z).

    Returns an EMat mapping span(rows) -> span(cols), valid to `floor`
    (floor=None allowed when the inverse is itself Laurent-polynomial).
    """
    n = len(rows)
    vmin = 0
    for d in scal.values():
        if d:
            vmin = min(vmin, min(d))
    mat = []
    for r in rows:
        line = []
        for c in cols:
            d = scal.get((r, c), {})
            if d:
                top = max(d)
                num = [F0] * (top - vmin + 1)
                for e, v in d.items():
                    num[e - vmin] = v
                line.append(rf_make(num, [F1]))
            else:
                line.append(RF_ZERO)
        mat.append(line)
    inv = rf_mat_inverse(mat)
    if inv is None:
        raise SingularMatrixError("scalar part is singular over Q(z)")
    all_laurent = all(rf_is_laurent(x) for row in inv for x in row)
    out = {}
    for i in range(n):
        for j in range(n):
            x = inv[i][j]
            if not x[0]:
                continue
            if all_laurent:
                coeffs = rf_laurent_coeffs(x)
                fl = None
            else:
                if floor is None:
                    raise ValueError(
                        "inverse is not polynomial; a floor is required")
                coeffs = rf_laurent_coeffs(x, floor + vmin)
                fl = floor
            z = ZSeries({e - vmin: Env.scalar(v) for e, v in coeffs.items()},
                        None if fl is None else fl)
            # inv maps row-space back to column-space
            out[(cols[i], rows[j])] = z
    return EMat(out), all_laurent


def inverse(M, rows, cols, floor=None, max_terms=400):
    """Inverse of M as a map span(cols) -> span(rows).

    M must be supported on rows x cols with len(rows) == len(cols).  The
    result Y satisfies Y @ M = 1 on span(cols) and M @ Y = 1 on span(rows),
    on the range of exponents indicated by the floors of its entries.

    Splits M = P + Q with P the known scalar Laurent-polynomial part; P is
    inverted exactly over Q(z), then Y = sum_k (-P^{-1} Q)^k P^{-1}.  The
    Neumann series must lose weight (or terminate); if it does not, the
    iteration cap trips.
    """
    rows = sorted(rows)
    cols = sorted(cols)
    if len(rows) != len(cols):
        raise ValueError("inverse needs equal row and column counts")
    for (r, c) in M.e:
        if r not in set(rows) or c not in set(cols):
            raise ValueError("matrix supported outside rows x cols")

    scal = {}
    qent = {}
    worst = None
    for (r, c), z in M.e.items():
        sc = z.scalar_coeffs()
        if sc:
            scal[(r, c)] = sc
        rest = {m: e - Env.scalar(e.scalar_part()) for m, e in z.c.items()}
        rest = {m: e for m, e in rest.items() if e}
        if rest or z.floor is not None:
            qent[(r, c)] = ZSeries(rest, z.floor)
        worst = _floor_max(worst, z.floor)
    Q = EMat(qent)

    slack = 4
    tops = [z.top() for z in M.e.values() if z.top() is not None]
    width = (max(tops) - floor + 2) if (tops and floor is not None) else 4
    for attempt in range(6):
        exp_floor = None if floor is None else floor - slack
        Pinv, _ = _scalar_inverse(scal, rows, cols, exp_floor)
        S = (Pinv @ Q).scale(-1)
        if floor is not None:
            S = S.truncate(floor - slack)
            acc = Pinv.truncate(floor)
        else:
            acc = Pinv
        term = Pinv
        ok = False
        for _ in range(max_terms):
            term = S @ term
            if floor is not None:
                term = term.truncate(floor)
            if term.is_known_zero():
                ok = True
                break
            acc = acc + term
        if not ok and not term.is_known_zero():
            raise ArithmeticError("Neumann series did not terminate")
        # remaining tail lies below the floor of the next term
        tail_floor = term.worst_floor()
        if tail_floor is not None:
            acc = EMat({k: ZSeries(z.c, _floor_max(z.floor, tail_floor))
                        for k, z in acc.e.items()})
        got = acc.worst_floor()
        if floor is None or got is None or got <= floor:
            if floor is not None:
                acc = acc.truncate(floor)
            return acc
        slack += width + slack
    raise ArithmeticError("could not reach requested floor %r" % (floor,))


# ---------------------------------------------------------------------------
# generalized quasideterminants
# ---------------------------------------------------------------------------

def quasidet(M, rows_all, cols_all, keep_cols, keep_rows, floor=None):
    """|M|_{U,W}: U = keep_cols inside cols_all, W = keep_rows inside
    rows_all, computed from the complementary block:

        |M|_{U,W} = 1_W (M - M 1_{U^c} (1_{W^c} M 1_{U^c})^{-1} 1_{W^c} M) 1_U
    """
    uc = sorted(set(cols_all) - set(keep_cols))
    wc = sorted(set(rows_all) - set(keep_rows))
    if len(uc) != len(wc):
        raise ValueError("complementary spaces have different dimensions")
    keep_rows = set(keep_rows)
    keep_cols = set(keep_cols)
    if not uc:
        return M.restrict(rows=keep_rows, cols=keep_cols)
    block = M.restrict(rows=set(wc), cols=set(uc))
    binv = inverse(block, wc, uc, floor=floor)
    right = M.restrict(rows=set(wc), cols=keep_cols)
    left = M.restrict(rows=keep_rows, cols=set(uc))
    out = M.restrict(rows=keep_rows, cols=keep_cols) - (left @ (binv @ right))
    if floor is not None:
        out = out.truncate(floor)
    return out


def quasidet_definitional(M, rows_all, cols_all, keep_cols, keep_rows, floor):
    """|M|_{U,W} = (1_U M^{-1} 1_W)^{-1}: the defining formula, used as an
    independent oracle against the complementary-block route.

    Re-inverting a series known down to some floor loses exponent range, so
    the inner inversion runs with growing slack until the outer one covers
    the requested floor."""
    for slack in (4, 8, 16, 32):
        inner = None if floor is None else floor - slack
        minv = inverse(M, sorted(rows_all), sorted(cols_all), floor=inner)
        x = minv.restrict(rows=set(keep_cols), cols=set(keep_rows))
        try:
            out = inverse(x, sorted(keep_cols), sorted(keep_rows),
                          floor=floor)
        except ArithmeticError:
            continue
        got = out.worst_floor()
        if floor is None or got is None or got <= floor:
            return out if floor is None else out.truncate(floor)
    raise ArithmeticError("could not reach requested floor %r" % (floor,))


def residue(xdict, m=-1):
    """Coefficient extraction for a formal Laurent variable represented as
    dict exponent -> EMat."""
    return xdict.get(m, EMat())
