"""Exact sparse arithmetic in U(gl_N).

Elements are dicts {monomial: Fraction} where a monomial is a tuple of
generator codes in weakly increasing PBW order.  A generator code packs the
elementary-matrix index pair as (i << 8) | j, so the default order is
lexicographic on (i, j).  Products are normal-ordered by straightening:
swap adjacent out-of-order factors and push the commutator correction, a
terminating rewrite by the PBW theorem.

The same straightening routine accepts an alternative sort key; the ideal
reduction uses this to push the factors spanning m to the tail of every
monomial before stripping them.
"""

from fractions import Fraction

from .ratlin import F0, F1, SMat


def ge(i, j):
    return (i << 8) | j


def gi(g):
    return g >> 8, g & 255


_COMM = {}


def comm_terms(a, b):
    """[e_a, e_b] as a tuple of (generator, +-1)."""
    key = (a, b)
    t = _COMM.get(key)
    if t is None:
        i, j = a >> 8, a & 255
        h, k = b >> 8, b & 255
        terms = []
        if j == h:
            terms.append((ge(i, k), 1))
        if k == i:
            terms.append((ge(h, j), -1))
        t = tuple(terms)
        _COMM[key] = t
    return t


def straighten_into(out, coeff, word, keyf=None, start=0):
    """Accumulate coeff * (product of word) into dict `out` in normal order.

    keyf is None for the global PBW order (compare generator codes), or a
    dict generator -> sort key.  `start` is a hint: positions before it are
    known to be in order already.
    """
    stack = [(coeff, word, start)]
    while stack:
        c, w, s = stack.pop()
        desc = -1
        n = len(w) - 1
        if keyf is None:
            for idx in range(s, n):
                if w[idx] > w[idx + 1]:
                    desc = idx
                    break
        else:
            for idx in range(s, n):
                if keyf[w[idx]] > keyf[w[idx + 1]]:
                    desc = idx
                    break
        if desc < 0:
            out[w] = out.get(w, F0) + c
            continue
        a, b = w[desc], w[desc + 1]
        pre, post = w[:desc], w[desc + 2:]
        nxt = max(0, desc - 1)
        stack.append((c, pre + (b, a) + post, nxt))
        for g, sgn in comm_terms(a, b):
            stack.append((c * sgn if sgn != 1 else c, pre + (g,) + post, nxt))
    return out


def _clean(d):
    return {w: c for w, c in d.items() if c}


class Env:
    """An element of U(gl_N)."""

    __slots__ = ("t",)

    def __init__(self, t=None):
        self.t = t if t is not None else {}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def scalar(cls, c):
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def gen(cls, i, j):
        return cls({(ge(i, j),): F1})

    @classmethod
    def from_smat(cls, m):
        """The g-element with the same coefficients as the scalar matrix."""
        t = {}
        for (r, c), v in m.items():
            t[(ge(r, c),)] = v
        return cls(t)

    # -- ring structure -------------------------------------------------------

    def __bool__(self):
        return bool(self.t)

    def __eq__(self, other):
        return isinstance(other, Env) and self.t == other.t

    def __hash__(self):
        return hash(frozenset(self.t.items()))

    def __add__(self, other):
        out = dict(self.t)
        for w, c in other.t.items():
            s = out.get(w, F0) + c
            if s:
                out[w] = s
            elif w in out:
                del out[w]
        return Env(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Env({w: -c for w, c in self.t.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Env()
        return Env({w: v * c for w, v in self.t.items()})

    def __mul__(self, other):
        if not isinstance(other, Env):
            return self.scale(other)
        out = {}
        for w1, c1 in self.t.items():
            s = max(0, len(w1) - 1)
            for w2, c2 in other.t.items():
                straighten_into(out, c1 * c2, w1 + w2, None, s)
        return Env(_clean(out))

    def __rmul__(self, c):
        return self.scale(c)

    def bracket(self, other):
        return self * other - other * self

    # -- inspection ------------------------------------------------------------

    def scalar_part(self):
        return self.t.get((), F0)

    def linear_part(self):
        """dict (i, j) -> coeff over the length-one monomials."""
        return {gi(w[0]): c for w, c in self.t.items() if len(w) == 1}

    def max_len(self):
        return max((len(w) for w in self.t), default=0)

    def terms(self):
        return self.t.items()

    def __repr__(self):
        return "Env(%s)" % format_env(self)


def env_sum(elems):
    out = {}
    for e in elems:
        for w, c in e.t.items():
            s = out.get(w, F0) + c
            if s:
                out[w] = s
            elif w in out:
                del out[w]
    return Env(out)


def trace_form(x, y):
    """(x | y) = trace of XY for the linear parts of x and y."""
    lx = x.linear_part()
    ly = y.linear_part()
    tot = F0
    for (i, j), c in lx.items():
        d = ly.get((j, i))
        if d:
            tot += c * d
    return tot


# ---------------------------------------------------------------------------
# gradings of monomials
# ---------------------------------------------------------------------------

def mono_deg2(w, x2):
    """Doubled Gamma-degree of a monomial (x2: dict box -> doubled coord)."""
    tot = 0
    for g in w:
        tot += x2[g >> 8] - x2[g & 255]
    return tot


def mono_kaz2(w, x2):
    """Doubled Kazhdan degree: 2*length - doubled Gamma-degree."""
    return 2 * len(w) - mono_deg2(w, x2)


def kazhdan_deg2(x, x2):
    """Doubled Kazhdan filtration degree of an element (max over monomials).

    Returns None for the zero element.
    """
    best = None
    for w in x.t:
        k = mono_kaz2(w, x2)
        if best is None or k > best:
            best = k
    return best


def symbol(x, delta2, x2):
    """Monomials of doubled Kazhdan degree exactly delta2, as a commutative
    polynomial dict {monomial: coeff}.  Raises if x sticks out of the
    filtration level delta2."""
    out = {}
    for w, c in x.t.items():
        k = mono_kaz2(w, x2)
        if k > delta2:
            raise ValueError("element does not lie in Kazhdan level %s/2" % delta2)
        if k == delta2:
            out[w] = c
    return out


def mono_hdeg(w, h):
    """Degree of a monomial in a diagonal grading h: dict box -> Fraction."""
    tot = Fraction(0)
    for g in w:
        tot += h[g >> 8] - h[g & 255]
    return tot


def is_h_homogeneous(x, h, deg):
    return all(mono_hdeg(w, h) == deg for w in x.t)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def format_env(x):
    if not x.t:
        return "0"
    bits = []
    for w in sorted(x.t, key=lambda w: (len(w), w)):
        c = x.t[w]
        mono = "".join("e_{%d,%d}" % gi(g) for g in w) or "1"
        if c == 1 and w:
            bits.append("+ " + mono)
        elif c == -1 and w:
            bits.append("- " + mono)
        else:
            sign = "+" if c > 0 else "-"
            mag = abs(c)
            coeff = str(mag)
            bits.append("%s %s%s" % (sign, coeff, ("*" + mono) if w else ""))
    s = " ".join(bits)
    return s[2:] if s.startswith("+ ") else ("-" + s[2:] if s.startswith("- ") else s)
