"""Reduction modulo the left ideal attached to a pyramid.

The ideal I is generated (as a left ideal) by b - (f|b) for b in m, where
m is the span of the lagrangian pairs together with everything of degree
>= 1.  Since x * b == x * (f|b) mod I, a monomial is reduced by normal
ordering with the m-generators sorted last and then stripping them off the
tail one at a time, each strip contributing the scalar (f|b).

For the gradings handled here m is always spanned by elementary pairs, so
this gives a complete rewriting procedure: the surviving monomials use
only generators from the PBW complement p, and within p the context order
coincides with the plain generator order, so results compose with ordinary
Env arithmetic.

The nilpotent-invariance side n = l^perp + (degree >= 1) is only ever used
linearly, so l^perp may be a non-elementary subspace: its basis is found
as the nullspace of the symplectic pairing against l.
"""

from fractions import Fraction

from .ratlin import F0, F1, mat_nullspace
from .uea import Env, ge, gi, kazhdan_deg2, straighten_into
from .envmatrix import ZSeries, EMat


class WContext:
    """All data needed to reduce mod I and to test ad-n invariance for one
    pyramid and one choice of lagrangian."""

    def __init__(self, view, lagrangian=frozenset()):
        self.view = view
        self.lagrangian = frozenset(lagrangian)
        boxes = view.boxes
        for (a, b) in self.lagrangian:
            if view.deg2(a, b) != 1:
                raise ValueError("lagrangian pair (%d,%d) is not of degree"
                                 " one half" % (a, b))

        self.m_gens = set()
        self.f_of = {}
        for a in boxes:
            for b in boxes:
                d2 = view.deg2(a, b)
                if d2 >= 2 or (a, b) in self.lagrangian:
                    g = ge(a, b)
                    self.m_gens.add(g)
                    self.f_of[g] = Fraction(view.f_pairing(a, b))

        self.key = {}
        for a in boxes:
            for b in boxes:
                g = ge(a, b)
                self.key[g] = (1 if g in self.m_gens else 0, a, b)

        self.p_pairs = tuple(sorted(
            (a, b) for a in boxes for b in boxes
            if ge(a, b) not in self.m_gens))
        self._n_basis = None

    # -- reduction ---------------------------------------------------------

    def reduce(self, x):
        """Canonical representative of x + I in the PBW complement."""
        ordered = {}
        for w, c in x.terms():
            straighten_into(ordered, c, w, keyf=self.key)
        out = {}
        for w, c in ordered.items():
            if not c:
                continue
            i = len(w)
            while i and w[i - 1] in self.m_gens:
                c *= self.f_of[w[i - 1]]
                if not c:
                    break
                i -= 1
            if not c:
                continue
            key = w[:i]
            s = out.get(key, F0) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        r = Env.zero()
        r.t = out
        return r

    def reduces_to_zero(self, x):
        return not self.reduce(x)

    def reduce_series(self, z):
        return ZSeries({m: self.reduce(e) for m, e in z.c.items()}, z.floor)

    def reduce_mat(self, mat):
        return EMat({k: self.reduce_series(z) for k, z in mat.e.items()})

    # -- the invariance condition -----------------------------------------

    def n_basis(self):
        """A basis of n = l^perp + (degree >= 1), as Env elements."""
        if self._n_basis is not None:
            return self._n_basis
        view = self.view
        boxes = view.boxes
        out = []
        for a in boxes:
            for b in boxes:
                if view.deg2(a, b) >= 2:
                    out.append(Env.gen(a, b))
        half = [(a, b) for a in boxes for b in boxes
                if view.deg2(a, b) == 1]
        if half:
            idx = {p: i for i, p in enumerate(half)}
            rows = []
            for l in sorted(self.lagrangian):
                row = [F0] * len(half)
                for q in half:
                    w = view.omega(l, q)
                    if w:
                        row[idx[q]] = Fraction(w)
                rows.append(row)
            if rows:
                basis = mat_nullspace(rows)
            else:
                basis = [[F1 if i == j else F0 for j in range(len(half))]
                         for i in range(len(half))]
            for vec in basis:
                elt = Env.zero()
                for i, v in enumerate(vec):
                    if v:
                        elt = elt + Env.gen(*half[i]).scale(v)
                out.append(elt)
        self._n_basis = out
        return out

    def is_w_element(self, x):
        """True when [a, x] lies in I for every a in n."""
        for a in self.n_basis():
            if not self.reduces_to_zero(a.bracket(x)):
                return False
        return True

    def is_w_series(self, z):
        return all(self.is_w_element(e) for e in z.c.values())

    def is_w_matrix(self, mat):
        return all(self.is_w_series(z) for z in mat.e.values())

    def first_noninvariant(self, mat):
        """Diagnostic: (a, (r, c), exp) for the first failing witness."""
        for a in self.n_basis():
            for (r, c), z in sorted(mat.e.items()):
                for m, e in sorted(z.c.items()):
                    if not self.reduces_to_zero(a.bracket(e)):
                        return a, (r, c), m
        return None


# ---------------------------------------------------------------------------
# transport along grading chains
# ---------------------------------------------------------------------------
#
# Two contexts with the same subspace m (a grading handoff with a matched
# Lagrangian pair) have the same ideal and the same invariance algebra, so a
# representative carries over untouched.  Within one grading, the isomorphism
# between the isotropic choices iso1 and iso2 factors through iso = 0; the
# leg from smaller to larger isotropic subspace is induced by the identity
# on representatives (the ideal only grows), while the opposite leg needs a
# genuine preimage: a representative of the same class modulo the larger
# ideal that is invariant modulo the smaller one.  That preimage is the
# solution of an exact linear system over the Kazhdan-bounded part of the
# reduced monomial basis, and it exists because the two W-algebras are
# isomorphic as Kazhdan-filtered algebras.


def _mono_env(w, c=F1):
    e = Env.zero()
    e.t = {tuple(w): c}
    return e


def kazhdan_words(view, delta2):
    """Monomials spanning the Kazhdan-filtered piece of the iso=0 reduction.

    Factors run over the complement pairs (degree <= 1/2, hence positive
    doubled Kazhdan weight 2 - deg2), in nondecreasing generator order, with
    total doubled weight <= delta2.  Includes the empty monomial."""
    gens = []
    for a in view.boxes:
        for b in view.boxes:
            d2 = view.deg2(a, b)
            if d2 <= 1:
                gens.append((ge(a, b), 2 - d2))
    gens.sort()
    words = []

    def rec(prefix, start, room):
        words.append(tuple(prefix))
        for i in range(start, len(gens)):
            g, wt = gens[i]
            if wt <= room:
                prefix.append(g)
                rec(prefix, i, room - wt)
                prefix.pop()

    if delta2 is not None and delta2 >= 0:
        rec([], 0, delta2)
    return words


class _AffineSolver:
    """Incremental exact Gauss-Jordan elimination over sparse rational rows.

    Rows are constraints sum_c coeffs[c] * x_c = rhs; stored rows keep the
    invariant that no stored row mentions another row's pivot column."""

    def __init__(self):
        self.rows = {}

    def clone(self):
        s = _AffineSolver.__new__(_AffineSolver)
        s.rows = {p: (dict(r), v) for p, (r, v) in self.rows.items()}
        return s

    def add(self, coeffs, rhs):
        row = {c: v for c, v in coeffs.items() if v}
        while True:
            piv = None
            for c in row:
                if c in self.rows:
                    piv = c
                    break
            if piv is None:
                break
            coef = row.pop(piv)
            hr, hv = self.rows[piv]
            for col, val in hr.items():
                nv = row.get(col, F0) - coef * val
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)
            rhs -= coef * hv
        if not row:
            if rhs:
                raise ValueError("inconsistent linear system")
            return
        piv = max(row)
        coef = row.pop(piv)
        if coef != F1:
            row = {c: v / coef for c, v in row.items()}
            rhs /= coef
        for p, (hr, hv) in self.rows.items():
            c = hr.get(piv)
            if c:
                del hr[piv]
                for col, val in row.items():
                    nv = hr.get(col, F0) - c * val
                    if nv:
                        hr[col] = nv
                    else:
                        hr.pop(col, None)
                self.rows[p] = (hr, hv - c * rhs)
        self.rows[piv] = (row, rhs)

    def solution(self):
        """One solution, with all free coordinates set to zero."""
        return {p: v for p, (_, v) in self.rows.items()}


def _invariance_system(ctx0, words):
    """Constraints making sum_i x_i * words[i] ad-invariant modulo the
    iso=0 ideal, plus the reduced image of each candidate monomial."""
    sys = _AffineSolver()
    for a in ctx0.n_basis():
        eqs = {}
        for i, w in enumerate(words):
            img = ctx0.reduce(a.bracket(_mono_env(w)))
            for tw, tc in img.t.items():
                eqs.setdefault(tw, {})[i] = tc
        for tw in sorted(eqs):
            sys.add(eqs[tw], F0)
    return sys


def _lift_one(base_sys, words, mimages, ctx0, ctx_iso, x):
    x_red = ctx_iso.reduce(x)
    if not x_red:
        return Env.zero()
    sys = base_sys.clone()
    eqs = {}
    for i, img in enumerate(mimages):
        for tw, tc in img.t.items():
            eqs.setdefault(tw, {})[i] = tc
    for tw in sorted(set(eqs) | set(x_red.t)):
        sys.add(eqs.get(tw, {}), x_red.t.get(tw, F0))
    sol = sys.solution()
    acc = {}
    for i, v in sol.items():
        if v:
            acc[words[i]] = acc.get(words[i], F0) + v
    y = Env.zero()
    y.t = {w: c for w, c in acc.items() if c}
    y = ctx0.reduce(y)
    for a in ctx0.n_basis():
        if not ctx0.reduces_to_zero(a.bracket(y)):
            raise ArithmeticError("lift is not invariant modulo the"
                                  " iso=0 ideal")
    if not ctx_iso.reduces_to_zero(y - x_red):
        raise ArithmeticError("lift does not match the input class")
    return y


def gg_lift(view, iso, xs, delta2=None):
    """Representatives of the same classes, invariant modulo the iso=0
    ideal (the inverse direction of the natural quotient map).

    xs is a list of elements whose classes modulo the iso ideal lie in the
    W-algebra of (view, iso).  The lifts are found by exact linear algebra
    and re-verified; failure to lift raises."""
    ctx0 = WContext(view, frozenset())
    ctx_iso = WContext(view, frozenset(iso))
    if delta2 is None:
        x2 = {b: view.x2_of(b) for b in view.boxes}
        delta2 = 0
        for x in xs:
            k = kazhdan_deg2(ctx_iso.reduce(x), x2)
            if k is not None and k > delta2:
                delta2 = k
    words = kazhdan_words(view, delta2)
    base = _invariance_system(ctx0, words)
    mimages = [ctx_iso.reduce(_mono_env(w)) for w in words]
    return [_lift_one(base, words, mimages, ctx0, ctx_iso, x) for x in xs]


def transport_reps(xs, dst_ctx):
    """Composite chain transport of right-aligned iso=0 representatives.

    Walks the adjacency chain from the right-aligned grading to the target:
    matched-Lagrangian handoffs keep the representative, quotient-direction
    isotropic moves re-reduce it, and moves against the quotient direction
    lift it first.  Returns the reduced representatives in dst_ctx."""
    from .pyramid import lagrangian_pair, right_aligned_chain
    view = dst_ctx.view
    seq = list(reversed(right_aligned_chain(view)))
    cur_iso = frozenset()
    reps = list(xs)
    for g_cur, g_next in zip(seq, seq[1:]):
        l_next, lt_cur = lagrangian_pair(g_next, g_cur)
        if not (cur_iso <= lt_cur):
            reps = gg_lift(g_cur, cur_iso, reps)
        cur_iso = l_next
    if not (cur_iso <= dst_ctx.lagrangian):
        reps = gg_lift(view, cur_iso, reps)
    return [dst_ctx.reduce(x) for x in reps]


def transport(x, dst_ctx):
    """Image of the class of a right-aligned iso=0 representative under the
    composite chain isomorphism, reduced in the target context."""
    return transport_reps([x], dst_ctx)[0]
