"""The generator matrix of the W-algebra, built by peeling columns.

For a right-aligned pyramid (the grading is then even, so the lagrangian
is empty and m = g[>=1]) the matrix is defined recursively: a single
column gives z + E, and otherwise, writing X' for the matrix of the
pyramid with the leftmost column of the bottom rectangle removed,

    X(z) = X'(z) 1_{V_-^u}
         - (1/r1) [X'(z), 1_{F^t V_-^d} E_{-1}]^1
         - X'(z) F^t (z 1_V + E_0 + D) 1_{V_-^d}
         + Res_x x^{-1} X'(z) 1_{V_-^u} (1 + x^{-1} F)^{-1} X'(x) F^t 1_{V_-^d}

with r1 the number of rows of maximal length.  Its entries decompose over
the elementary hom labels (h, k, src, tgt) as

    1_{V_+ cap (F^t)^h V_-} X(z) 1_{V_- cap F^k V_+}
      = -delta_{h,k} (-z)^{k+1} (F^t)^k + sum_l (-z)^l x_{(h,k,src,tgt,l)} U^i

with the coefficient polynomials of degree <= min(h,k); the extracted
x_{label} reduce to the PBW generators of the W-algebra attached to the
centralizer basis element phi_l(e_{tgt,src}).
"""

from fractions import Fraction

from .ratlin import SMat, smat_power
from .uea import Env, kazhdan_deg2, symbol
from .envmatrix import ZSeries, EMat, e_full, e_deg2
from .centralizer import (hom_labels, centralizer_labels, Label,
                          shifted_identity, label_gamma_deg2,
                          SliceProjection)
from .reduction import WContext, transport_reps


def _proj(boxset):
    return EMat.from_smat(SMat.unit(boxset))


def _view_key(view):
    return (tuple(view.rowlen), tuple(view.rowx2),
            tuple(sorted(view.boxnum.items())))


_CACHE = {}


def clear_cache():
    _CACHE.clear()


def w_tilde(view):
    """The unreduced generator matrix, by the column-peeling recursion.
    Requires a right-aligned view."""
    if not view.is_right_aligned():
        raise ValueError("the recursion is defined for right-aligned"
                         " pyramids; transport handles other gradings")
    key = _view_key(view)
    got = _CACHE.get(key)
    if got is not None:
        return got
    if view.p1 == 1:
        out = EMat.identity(view.boxes).shift(1) + e_full(view)
    else:
        sub = view.remove_left_column()
        wp = w_tilde(sub)
        r1 = Fraction(len(view.v_minus_d()))
        ft = EMat.from_smat(view.ft_matrix())
        f = view.f_matrix()
        one_vmu = _proj(view.v_minus_u())
        one_vmd = _proj(view.v_minus_d())
        one_ftvmd = _proj(view.ft_v_minus_d())
        e_m1 = e_deg2(view, -2)
        e_0 = e_deg2(view, 0)
        dmat = EMat.from_smat(view.d_matrix(frozenset()))
        shell0 = EMat.identity(view.boxes).shift(1) + e_0 + dmat

        t1 = wp @ one_vmu
        t2 = (wp.bracket1(one_ftvmd @ e_m1)).scale(Fraction(-1) / r1)
        t3 = (wp @ ft @ shell0 @ one_vmd).scale(-1)
        mid = EMat()
        for j in range(0, view.p1 + 1):
            cj = wp.coeff_mat(j)
            if not cj.e:
                continue
            fj = EMat.from_smat(smat_power(f, j, view.boxes))
            mid = mid + fj.scale(Fraction((-1) ** j)) @ cj
        t4 = wp @ one_vmu @ mid @ ft @ one_vmd
        out = t1 + t2 + t3 + t4
    _CACHE[key] = out
    return out


def decompose_w(view, wt):
    """Split the generator matrix over the hom labels.

    Returns dict Label -> Env with the raw (unreduced) coefficient
    elements, checking on the way that the matrix has the required block
    structure: support in V_+ x V_-, degree bounds min(h,k), and the
    scalar diagonal -(-z)^{k+1} (F^t)^k.
    """
    vp = view.v_plus()
    vm = view.v_minus()
    for (a, b), zs in wt.e.items():
        if zs.is_known_zero():
            continue
        if a not in vp or b not in vm:
            raise ArithmeticError("entry (%d,%d) outside V_+ x V_-" % (a, b))
    out = {}
    for (h, k, src, tgt) in hom_labels(view):
        zs = wt.entry(src, tgt)
        lmax = min(h, k)
        same_row = (view.box_row(src) == view.box_row(tgt)
                    and view.box_k(tgt) - view.box_k(src) == k)
        for m, env in zs.c.items():
            if m <= lmax:
                continue
            sc = env.scalar_part()
            rest = env - Env.scalar(sc)
            expected = Fraction(0)
            if h == k and same_row and m == k + 1:
                expected = Fraction((-1) ** k)
            if rest or sc != expected:
                raise ArithmeticError(
                    "entry (%d,%d): unexpected term at z^%d" % (src, tgt, m))
        for ell in range(lmax + 1):
            env = zs.coeff(ell)
            out[Label(h, k, src, tgt, ell)] = env.scale(
                Fraction((-1) ** ell))
    return out


def assemble_w(view, gens):
    """Inverse of decompose_w: rebuild the matrix from labelled pieces."""
    out = shifted_identity(view)
    add = {}
    for lab, env in gens.items():
        if not env:
            continue
        zs = add.setdefault((lab.src, lab.tgt), {})
        cur = zs.get(lab.ell, Env.zero())
        zs[lab.ell] = cur + env.scale(Fraction((-1) ** lab.ell))
    return out + EMat({k: ZSeries(v) for k, v in add.items()})


class GeneratorSet:
    """Generators of W(gl_N, f) for one pyramid: raw representatives from
    the recursion and their reductions mod the ideal."""

    def __init__(self, view, lagrangian=frozenset()):
        self.view = view
        self.ctx = WContext(view, lagrangian)
        self.wt = w_tilde(view)
        self.raw = decompose_w(view, self.wt)
        self.labels = centralizer_labels(view)
        self.red = {lab: self.ctx.reduce(env)
                    for lab, env in self.raw.items()}

    def generator(self, lab):
        return self.red[lab]

    def w_matrix(self):
        """The reduced generator matrix (image of the recursion mod I)."""
        return self.ctx.reduce_mat(self.wt)

    def transport(self, dst_ctx):
        """The same W-algebra elements re-expressed for another grading of
        the same nilpotent, via the composite chain isomorphism."""
        labs = sorted(self.raw)
        reps = transport_reps([self.raw[lab] for lab in labs], dst_ctx)
        return dict(zip(labs, reps))


def premet_check(gs, sp=None):
    """Check both defining conditions of a Premet map on a GeneratorSet.

    Returns dict Label -> (filtration_ok, symbol_ok).
    """
    view = gs.view
    if sp is None:
        sp = SliceProjection(view)
    x2 = {b: view.x2_of(b) for b in view.boxes}
    out = {}
    for lab in gs.labels:
        red = gs.red[lab]
        delta2 = 2 - label_gamma_deg2(view, lab)
        kd = kazhdan_deg2(red, x2)
        ok_i = kd is None or kd <= delta2
        ok_ii = False
        if ok_i:
            sym = Env(symbol(red, delta2, x2))
            got = sp.eta_f(sym)
            want = {(sp.labels.index(lab),): Fraction(1)}
            ok_ii = got == want
        out[lab] = (ok_i, ok_ii)
    return out


# ---------------------------------------------------------------------------
# closed form for two-column pyramids
# ---------------------------------------------------------------------------

def two_column_w_tilde(view):
    """Closed-form generator matrix for partitions 2^p 1^q (right-aligned),
    written out entry by entry; an independent oracle for the recursion."""
    parts = view.partition().parts
    p = sum(1 for x in parts if x == 2)
    q = sum(1 for x in parts if x == 1)
    if p + q != len(parts) or any(x > 2 for x in parts) or p == 0:
        raise ValueError("closed form applies to partitions 2^p 1^q")
    if not view.is_right_aligned():
        raise ValueError("closed form assumes the right-aligned view")
    r = p + q
    rr = Fraction(r)

    def zs_lin(zcoef, env):
        d = {}
        if zcoef:
            d[1] = Env.scalar(zcoef)
        if env:
            d[0] = d.get(0, Env.zero()) + env
        return ZSeries(d)

    out = {}
    for i in range(1, r + 1):
        for j in range(p + 1, r + 1):
            ent = zs_lin(Fraction(i == j), Env.gen(j, i))
            if ent.c:
                out[(i, j)] = ent
        for j in range(1, p + 1):
            total = ZSeries.of(Env.gen(j + r, i))
            for h in range(1, p + 1):
                left = zs_lin(Fraction(i == h), Env.gen(h, i))
                rgt = zs_lin(Fraction(h == j),
                             Env.gen(j + r, h + r)
                             - Env.scalar(rr if h == j else 0))
                total = total - left * rgt
            for h in range(p + 1, r + 1):
                left = zs_lin(Fraction(i == h), Env.gen(h, i))
                total = total + left * ZSeries.of(Env.gen(j, h))
            if total.c:
                out[(i, j + r)] = total
    return EMat(out)
