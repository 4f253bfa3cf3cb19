"""The Lax-side operators: the shell z + F + E_p + D, the polynomial
operator T obtained from it by the (V_-, V_+) quasideterminant, and the
Yangian-type operator L obtained by cutting further down to the bottom
rectangle.  Each has an independent recursive route used for
cross-checking.
"""

from fractions import Fraction

from .ratlin import SMat
from .envmatrix import EMat, e_p_matrix, e_deg2, quasidet
from .generators import w_tilde


def _proj(boxset):
    return EMat.from_smat(SMat.unit(boxset))


def shell(view, lagrangian=frozenset()):
    """z 1_V + F + E_p + D."""
    return (EMat.identity(view.boxes).shift(1)
            + EMat.from_smat(view.f_matrix())
            + e_p_matrix(view, lagrangian)
            + EMat.from_smat(view.d_matrix(lagrangian)))


def t_matrix(view, lagrangian=frozenset()):
    """T(z) = |z + F + E_p + D|_{V_-, V_+}: polynomial in z."""
    sh = shell(view, lagrangian)
    boxes = view.boxes
    return quasidet(sh, boxes, boxes,
                    keep_cols=view.v_minus(), keep_rows=view.v_plus())


def t_recursive(view):
    """T(z) by column peeling (right-aligned views)."""
    if not view.is_right_aligned():
        raise ValueError("the recursion assumes a right-aligned view")
    if view.p1 == 1:
        return shell(view)
    sub = view.remove_left_column()
    tp = t_recursive(sub)
    r1 = Fraction(len(view.v_minus_d()))
    ft = EMat.from_smat(view.ft_matrix())
    one_vmu = _proj(view.v_minus_u())
    one_vmd = _proj(view.v_minus_d())
    one_ftvmd = _proj(view.ft_v_minus_d())
    e_m1 = e_deg2(view, -2)
    shell0 = (EMat.identity(view.boxes).shift(1) + e_deg2(view, 0)
              + EMat.from_smat(view.d_matrix(frozenset())))
    t1 = tp @ one_vmu
    t2 = (tp.bracket1(one_ftvmd @ e_m1)).scale(Fraction(-1) / r1)
    t3 = (tp @ ft @ shell0 @ one_vmd).scale(-1)
    return t1 + t2 + t3



def _quasidet_at(mat, rows, cols, keep_cols, keep_rows, floor):
    """Quasideterminant guaranteed valid down to the requested floor.

    Internal products can raise the propagated floor above the request, so
    retry with growing slack until the achieved floor covers it."""
    if floor is None:
        return quasidet(mat, rows, cols, keep_cols=keep_cols,
                        keep_rows=keep_rows, floor=None)
    for slack in (0, 2, 6, 18):
        out = quasidet(mat, rows, cols, keep_cols=keep_cols,
                       keep_rows=keep_rows, floor=floor - slack)
        got = out.worst_floor()
        if got is None or got <= floor:
            return out.truncate(floor)
    raise ArithmeticError("could not reach requested floor %r" % (floor,))


def l_tilde(view, lagrangian=frozenset(), floor=None, t=None):
    """The unreduced Yangian-type operator, via the hereditary route
    |T|_{V_-^d, V_+^d}."""
    if t is None:
        t = t_matrix(view, lagrangian)
    return _quasidet_at(t, view.v_plus(), view.v_minus(),
                        keep_cols=view.v_minus_d(),
                        keep_rows=view.v_plus_d(), floor=floor)


def l_direct(view, lagrangian=frozenset(), floor=None):
    """One-shot route: quasideterminant of the shell straight down to the
    bottom rectangle."""
    sh = shell(view, lagrangian)
    boxes = view.boxes
    return _quasidet_at(sh, boxes, boxes,
                        keep_cols=view.v_minus_d(),
                        keep_rows=view.v_plus_d(), floor=floor)


def l_recursive(view, floor=None):
    """The column-peeling recursion for the Yangian-type operator
    (right-aligned views)."""
    if not view.is_right_aligned():
        raise ValueError("the recursion assumes a right-aligned view")
    if view.p1 == 1:
        return shell(view)
    sub = view.remove_left_column()
    for slack in (3, 9, 27):
        inner_floor = None if floor is None else floor - slack
        lp = l_recursive(sub, inner_floor)
        lq = quasidet(lp, sub.v_plus_d(), sub.v_minus_d(),
                      keep_cols=view.ft_v_minus_d(),
                      keep_rows=view.v_plus_d(), floor=inner_floor)
        r1 = Fraction(len(view.v_minus_d()))
        ft = EMat.from_smat(view.ft_matrix())
        one_vmd = _proj(view.v_minus_d())
        one_ftvmd = _proj(view.ft_v_minus_d())
        e_m1 = e_deg2(view, -2)
        shell0 = (EMat.identity(view.boxes).shift(1) + e_deg2(view, 0)
                  + EMat.from_smat(view.d_matrix(frozenset())))
        out = ((lq.bracket1(one_ftvmd @ e_m1)).scale(Fraction(-1) / r1)
               - lq @ ft @ shell0 @ one_vmd)
        got = out.worst_floor()
        if floor is None or got is None or got <= floor:
            return out.truncate(floor) if floor is not None else out
    raise ArithmeticError("could not reach requested floor %r" % (floor,))


def quasidet_of_w(view, floor=None, wt=None):
    """|X(z)|_{V_-^d, V_+^d} of the (raw) generator matrix; the main
    comparison target for the Yangian-type operator."""
    if wt is None:
        wt = w_tilde(view)
    return _quasidet_at(wt, view.v_plus(), view.v_minus(),
                        keep_cols=view.v_minus_d(),
                        keep_rows=view.v_plus_d(), floor=floor)


def w_quasidet_recursive(view, floor=None):
    """Independent route to |X(z)|_{V_-^d, V_+^d}: quasideterminant of the
    sub-pyramid's generator matrix down to (F^t V_-^d, V_+^d), then one
    peeling step (right-aligned views)."""
    if not view.is_right_aligned():
        raise ValueError("the recursion assumes a right-aligned view")
    if view.p1 == 1:
        return w_tilde(view)
    sub = view.remove_left_column()
    wp = w_tilde(sub)
    r1 = Fraction(len(view.v_minus_d()))
    ft = EMat.from_smat(view.ft_matrix())
    one_vmd = _proj(view.v_minus_d())
    one_ftvmd = _proj(view.ft_v_minus_d())
    e_m1 = e_deg2(view, -2)
    shell0 = (EMat.identity(view.boxes).shift(1) + e_deg2(view, 0)
              + EMat.from_smat(view.d_matrix(frozenset())))
    for slack in (3, 9, 27):
        inner_floor = None if floor is None else floor - slack
        wq = quasidet(wp, sub.v_plus(), sub.v_minus(),
                      keep_cols=view.ft_v_minus_d(),
                      keep_rows=view.v_plus_d(), floor=inner_floor)
        out = ((wq.bracket1(one_ftvmd @ e_m1)).scale(Fraction(-1) / r1)
               - wq @ ft @ shell0 @ one_vmd)
        got = out.worst_floor()
        if floor is None or got is None or got <= floor:
            return out.truncate(floor) if floor is not None else out
    raise ArithmeticError("could not reach requested floor %r" % (floor,))


def yangian_residual(lmat, i, j, h, k, a, b):
    """The coefficient of z^a w^b in the defining Yangian relation,

        (z-w)[L_ij(z), L_hk(w)] - (L_hj(w)L_ik(z) - L_hj(z)L_ik(w)),

    namely [L_{ij,a-1}, L_{hk,b}] - [L_{ij,a}, L_{hk,b-1}]
           - L_{hj,b} L_{ik,a} + L_{hj,a} L_{ik,b}.

    The result should reduce to zero mod the ideal."""
    def c(r, s, m):
        return lmat.entry(r, s).coeff(m)

    out = (c(i, j, a - 1).bracket(c(h, k, b))
           - c(i, j, a).bracket(c(h, k, b - 1))
           - c(h, j, b) * c(i, k, a)
           + c(h, j, a) * c(i, k, b))
    return out
