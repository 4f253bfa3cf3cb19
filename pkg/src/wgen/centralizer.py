"""The centralizer g^f inside gl_N and its role as the target of symbols.

For a pyramid with shift matrices F (left) and F^t (right), the
centralizer of F decomposes into pieces indexed by (h, k, ell): a basis is
given by phi_ell(E_{tgt,src}) where src runs over the rightmost boxes of
rows of length h+1, tgt over the leftmost boxes of rows of length k+1, and

    phi_ell(A) = sum_{i=0}^{ell} F^i (F^t)^ell A (F^t)^ell F^{ell-i},

which vanishes for ell > min(h, k).

This module also builds:

  * the scalar-coefficient matrix Z(z), whose entries are linear in the
    centralizer basis and which the generator matrix must degenerate to at
    the top of the Kazhdan filtration;
  * the projection pi_f: g -> g^f along the complement spanned by the
    pairs e_cd with c not a leftmost box, or c leftmost and of positive
    degree;
  * eta_f, the induced algebra map from symbols (commutative monomials in
    the e_ab) to polynomials in the centralizer coordinates.

Polynomials in centralizer coordinates are plain dicts mapping sorted
tuples of basis-label indices to Fractions.
"""

from collections import namedtuple
from fractions import Fraction

from .ratlin import F0, F1, SMat, Solver, smat_power
from .uea import Env
from .envmatrix import ZSeries, EMat, e_full, e_deg2


Label = namedtuple("Label", "h k src tgt ell")


def phi_ell(view, a, ell):
    """phi_ell applied to an SMat."""
    if ell == 0:
        return a
    f = view.f_matrix()
    ft = view.ft_matrix()
    boxes = view.boxes
    ftl = smat_power(ft, ell, boxes)
    core = ftl @ a @ ftl
    out = SMat()
    for i in range(ell + 1):
        out = out + (smat_power(f, i, boxes) @ core
                     @ smat_power(f, ell - i, boxes))
    return out


def hom_labels(view):
    """The (h, k, src, tgt) labels of the elementary basis of
    Hom(V_+ cap (F^t)^h V_-, V_- cap F^k V_+), all h, k."""
    out = []
    p1 = view.p1
    for h in range(p1):
        srcs = sorted(view.v_plus_cap_fth(h))
        if not srcs:
            continue
        for k in range(p1):
            tgts = sorted(view.v_minus_cap_fk(k))
            for s in srcs:
                for t in tgts:
                    out.append((h, k, s, t))
    return out


def centralizer_labels(view):
    out = []
    for (h, k, s, t) in hom_labels(view):
        for ell in range(min(h, k) + 1):
            out.append(Label(h, k, s, t, ell))
    return out


def centralizer_basis(view):
    """[(Label, SMat)] spanning the centralizer of the left shift."""
    out = []
    for lab in centralizer_labels(view):
        a = SMat.elem(lab.tgt, lab.src)
        out.append((lab, phi_ell(view, a, lab.ell)))
    return out


def gf_dimension(partition):
    g = partition.parts
    return sum(min(pi, pj) for pi in g for pj in g)


def label_gamma_deg2(view, lab):
    """Doubled degree of phi_ell(E_{tgt,src}) in the pyramid grading."""
    return view.x2_of(lab.tgt) - view.x2_of(lab.src) + 2 * lab.ell


def shifted_inverse(view):
    """z 1_{V_+} (1 + z F^t)^{-1}, with no projector on the right."""
    ft = view.ft_matrix()
    vp = view.v_plus()
    out = EMat()
    for k in range(view.p1):
        blk = SMat.unit(vp) @ smat_power(ft, k, view.boxes)
        if blk.d:
            out = out + EMat.from_smat(blk, k + 1).scale(Fraction((-1) ** k))
    return out


def shifted_identity(view):
    """z 1_{V_+} (1 + z F^t)^{-1} 1_{V_-}: the scalar backbone shared by
    Z(z) and the generator matrix."""
    return shifted_inverse(view) @ EMat.from_smat(SMat.unit(view.v_minus()))


def z_matrix(view):
    """Z(z): entry (src, tgt) carries phi_z(e_{tgt,src}) as an element of
    the enveloping algebra (it is linear, so lives in the Lie algebra)."""
    out = shifted_identity(view)
    add = {}
    for (h, k, s, t) in hom_labels(view):
        zs = {}
        for ell in range(min(h, k) + 1):
            m = phi_ell(view, SMat.elem(t, s), ell)
            env = Env.from_smat(m)
            if env:
                zs[ell] = env.scale(Fraction((-1) ** ell))
        if zs:
            add[(s, t)] = ZSeries(zs)
    return out + EMat(add)


def z_matrix_recursive(view):
    """Independent route to Z(z): peel the leftmost column off the bottom
    rectangle and rebuild by the same shape of recursion the generator
    matrix satisfies, with all enveloping-algebra products replaced by
    their linearizations."""
    if view.p1 == 1:
        return EMat.identity(view.boxes).shift(1) + e_full(view)
    sub = view.remove_left_column()
    zp = z_matrix_recursive(sub)
    r1 = Fraction(len(view.v_minus_d()))
    e_m1 = e_deg2(view, -2)
    ftvmd = view.ft_v_minus_d()
    vmd = view.v_minus_d()
    vmu = view.v_minus_u()
    ft = EMat.from_smat(view.ft_matrix())
    f = view.f_matrix()
    one_ftvmd = EMat.from_smat(SMat.unit(ftvmd))
    one_vmd = EMat.from_smat(SMat.unit(vmd))
    one_vmu = EMat.from_smat(SMat.unit(vmu))

    t1 = zp @ one_vmu
    t2 = (zp.bracket1(one_ftvmd @ e_m1)).scale(Fraction(-1) / r1)
    t3 = (zp @ ft @ one_vmd).shift(1).scale(-1)
    sinv = shifted_inverse(view)
    t4 = (sinv @ ft @ e_deg2(view, 0) @ one_vmd).scale(-1)
    # residue: sum_j (-F)^j (x^j coefficient of Z') F^t 1_{V_-^d}
    res = EMat()
    for j in range(0, view.p1 + 1):
        cj = zp.coeff_mat(j)
        if not cj.e:
            continue
        fj = EMat.from_smat(smat_power(f, j, view.boxes))
        res = res + fj.scale(Fraction((-1) ** j)) @ cj @ ft @ one_vmd
    t5 = sinv @ one_vmu @ res
    return t1 + t2 + t3 + t4 + t5


# ---------------------------------------------------------------------------
# polynomials in centralizer coordinates
# ---------------------------------------------------------------------------

def cp_zero():
    return {}


def cp_var(i):
    return {(i,): F1}


def cp_const(v):
    v = Fraction(v)
    return {(): v} if v else {}


def cp_iadd(a, b):
    for k, v in b.items():
        s = a.get(k, F0) + v
        if s:
            a[k] = s
        elif k in a:
            del a[k]
    return a


def cp_add(a, b):
    return cp_iadd(dict(a), b)


def cp_scale(a, v):
    v = Fraction(v)
    if not v:
        return {}
    return {k: c * v for k, c in a.items()}


def cp_mul(a, b):
    out = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = tuple(sorted(k1 + k2))
            s = out.get(k, F0) + v1 * v2
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out


def format_cp(p, labels):
    if not p:
        return "0"
    bits = []
    for k in sorted(p):
        c = p[k]
        mono = "*".join(
            "t[%d,%d,%d->%d,%d]" % (labels[i].h, labels[i].k, labels[i].src,
                                    labels[i].tgt, labels[i].ell)
            for i in k) or "1"
        bits.append("%s*%s" % (c, mono))
    return " + ".join(bits)


# ---------------------------------------------------------------------------
# the projection onto g^f and the symbol map eta_f
# ---------------------------------------------------------------------------

def u_perp_pairs(view):
    """Pairs (c, d) spanning the chosen complement of g^f: either c is not
    a leftmost box, or it is and e_cd has positive degree."""
    vm = view.v_minus()
    out = []
    for c in view.boxes:
        for d in view.boxes:
            if c not in vm or view.deg2(c, d) > 0:
                out.append((c, d))
    return out


class SliceProjection:
    """pi_f and eta_f for one pyramid: g = g^f (+) U^perp, solved once.

    Since U^perp is spanned by elementary pairs, the complementary
    coordinates (the pairs not in U^perp) form a slice of dimension
    dim g^f, and the projection along U^perp is determined by the
    restriction of the centralizer basis to that slice.  Solvability of
    the restricted square system is exactly the direct-sum property."""

    def __init__(self, view):
        self.view = view
        boxes = view.boxes
        n = len(boxes)
        self.labels = centralizer_labels(view)
        self.perp = u_perp_pairs(view)
        d = len(self.labels)
        if d + len(self.perp) != n * n:
            raise ArithmeticError("centralizer basis and complement do not"
                                  " fill the algebra")
        perp_set = set(self.perp)
        coords = [(a, b) for a in boxes for b in boxes
                  if (a, b) not in perp_set]
        if len(coords) != d:
            raise ArithmeticError("complement coordinate count is off")
        cpos = {p: i for i, p in enumerate(coords)}
        rows = [[F0] * d for _ in range(d)]
        for j, (_, m) in enumerate(centralizer_basis(view)):
            for (a, b), v in m.items():
                i = cpos.get((a, b))
                if i is not None:
                    rows[i][j] = v
        self.solver = Solver(rows)
        self._cpos = cpos
        self._dim = d
        self._fac = {}

    def pi_f(self, a, b):
        """Coordinates of the g^f component of e_ab, indexed by label."""
        rhs = [F0] * self._dim
        i = self._cpos.get((a, b))
        if i is None:
            # e_ab lies in U^perp: its g^f component vanishes
            return tuple(rhs)
        rhs[i] = F1
        return tuple(self.solver.solve(rhs))

    def factor(self, a, b):
        """eta_f(e_ab) = pi_f(e_ab) + (f|e_ab), as a polynomial."""
        key = (a, b)
        got = self._fac.get(key)
        if got is None:
            got = cp_const(self.view.f_pairing(a, b))
            for i, v in enumerate(self.pi_f(a, b)):
                if v:
                    cp_iadd(got, {(i,): v})
            self._fac[key] = got
        return got

    def eta_f(self, x):
        """Apply eta_f to an element of the enveloping algebra, read as its
        symbol (i.e. with the factors commuting)."""
        total = {}
        for w, c in x.terms():
            poly = cp_const(c)
            for g in w:
                poly = cp_mul(poly, self.factor(g >> 8, g & 0xFF))
            cp_iadd(total, poly)
        return total

    def label_index(self, lab):
        return self.labels.index(lab)
