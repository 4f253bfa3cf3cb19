"""Pyramids: partitions of N with a choice of good grading for gl_N.

A partition with parts p_1^{r_1} ... p_s^{r_s} (p_1 > ... > p_s) describes a
nilpotent f in gl_N by Jordan type.  A pyramid arranges the N boxes in rows
(bottom to top, by decreasing length) with prescribed x-coordinates; the
x-coordinate differences grade gl_N, and validity of the arrangement is
exactly the condition that this grading is good for f.

Conventions baked in here and relied on everywhere else:

* boxes are numbered 1..N sorted by (k, row) where k counts steps from the
  right end of the row; for a right-aligned pyramid this is "column by
  column starting from the rightmost, bottom to top".  The numbering depends
  only on the partition, never on the alignment, so the generators e_{ij}
  of U(gl_N) keep a fixed meaning while the grading varies.
* x-coordinates are stored doubled (x2 = 2x) so that everything is an int;
  degrees of elementary matrices are also doubled (deg2).
* the right alignment puts every row's right edge at x = (p_1-1)/2, the
  dynkin alignment centers every row, the left alignment mirrors right.
"""

from fractions import Fraction

from .ratlin import F0, F1, SMat, mat_rank


class Partition:
    """A partition of N, parts sorted decreasingly."""

    def __init__(self, parts):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if not parts or any(p <= 0 for p in parts):
            raise ValueError("partition parts must be positive integers")
        self.parts = parts

    @property
    def n(self):
        return sum(self.parts)

    @property
    def r(self):
        return len(self.parts)

    @property
    def p1(self):
        return self.parts[0]

    @property
    def r1(self):
        return sum(1 for p in self.parts if p == self.p1)

    def groups(self):
        """Distinct part sizes with multiplicities, as [(p_i, r_i), ...]."""
        out = []
        for p in self.parts:
            if out and out[-1][0] == p:
                out[-1][1] += 1
            else:
                out.append([p, 1])
        return [(p, r) for p, r in out]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return "Partition%r" % (self.parts,)


class Pyramid:
    """A partition plus box placement.  Also used for the sub-pyramids that
    arise when left columns are removed during recursions: those share the
    ambient box numbering of their parent."""

    def __init__(self, rowlen, rowx2, boxnum, ambient_n, validate=True):
        self.rowlen = tuple(rowlen)
        self.rowx2 = tuple(rowx2)  # x2 of the rightmost box of each row
        self.boxnum = dict(boxnum)  # (row, k) -> box number
        self.ambient_n = ambient_n
        self._info = {}
        for (row, k), b in self.boxnum.items():
            self._info[b] = (row, k, self.rowx2[row] - 2 * k)
        self.boxes = tuple(sorted(self._info))
        if validate:
            self._validate()

    # -- basic structure ----------------------------------------------------

    @property
    def nboxes(self):
        return len(self.boxes)

    @property
    def nrows(self):
        return len(self.rowlen)

    @property
    def p1(self):
        return max(self.rowlen)

    @property
    def r1(self):
        """Number of rows of maximal length = dim of the leftmost column of
        the bottom rectangle."""
        m = self.p1
        return sum(1 for q in self.rowlen if q == m)

    def partition(self):
        return Partition(self.rowlen)

    def box_row(self, b):
        return self._info[b][0]

    def box_k(self, b):
        return self._info[b][1]

    def x2_of(self, b):
        return self._info[b][2]

    def deg2(self, a, b):
        """Doubled degree of e_{ab}."""
        return self._info[a][2] - self._info[b][2]

    def x2_values(self):
        return sorted({x2 for (_, _, x2) in self._info.values()})

    def boxes_at_x2(self, x2):
        return frozenset(b for b, (_, _, v) in self._info.items() if v == x2)

    def is_right_aligned(self):
        return len(set(self.rowx2)) == 1

    def left_neighbor(self, b):
        row, k, _ = self._info[b]
        return self.boxnum.get((row, k + 1))

    def right_neighbor(self, b):
        row, k, _ = self._info[b]
        return self.boxnum.get((row, k - 1))

    def _validate(self):
        if sorted(self.rowlen, reverse=True) != list(self.rowlen):
            raise ValueError("rows must be sorted by decreasing length")
        # nesting of row intervals: a row never sticks out of a longer
        # (or equal) one; for equal lengths this forces equal placement
        spans = [(x2 - 2 * (q - 1), x2) for q, x2 in zip(self.rowlen, self.rowx2)]
        for i in range(self.nrows):
            for j in range(self.nrows):
                if self.rowlen[i] >= self.rowlen[j]:
                    if spans[j][0] < spans[i][0] or spans[j][1] > spans[i][1]:
                        raise ValueError(
                            "row %d sticks out of longer row %d: not a good grading"
                            % (j, i))
        self._check_good_grading()

    def _check_good_grading(self):
        """Safety net: ad f must be injective on g[>=1/2] and surjective
        onto g[<=-1/2], piece by piece."""
        pairs_by_deg = {}
        for a in self.boxes:
            for b in self.boxes:
                pairs_by_deg.setdefault(self.deg2(a, b), []).append((a, b))
        for j2, pairs in pairs_by_deg.items():
            tgt = pairs_by_deg.get(j2 - 2, [])
            tgt_index = {p: i for i, p in enumerate(tgt)}
            rows = []
            for (a, b) in pairs:
                v = [F0] * len(tgt)
                la = self.left_neighbor(a)
                if la is not None and (la, b) in tgt_index:
                    v[tgt_index[(la, b)]] += F1
                rb = self.right_neighbor(b)
                if rb is not None and (a, rb) in tgt_index:
                    v[tgt_index[(a, rb)]] -= F1
                rows.append(v)
            rk = mat_rank(rows) if tgt else 0
            if j2 >= 1 and rk != len(pairs):
                raise ValueError("ad f not injective in degree %s/2" % j2)
            if j2 <= 1 and rk != len(tgt):
                raise ValueError("ad f not surjective onto degree %s/2" % (j2 - 2))

    # -- distinguished subspaces (as frozensets of box numbers) -------------

    def v_plus(self):
        return frozenset(self.boxnum[(row, 0)] for row in range(self.nrows))

    def v_minus(self):
        return frozenset(self.boxnum[(row, q - 1)]
                         for row, q in enumerate(self.rowlen))

    def v_d(self):
        m = self.p1
        return frozenset(b for b, (row, _, _) in self._info.items()
                         if self.rowlen[row] == m)

    def v_u(self):
        return frozenset(self.boxes) - self.v_d()

    def v_plus_d(self):
        return self.v_plus() & self.v_d()

    def v_plus_u(self):
        return self.v_plus() & self.v_u()

    def v_minus_d(self):
        return self.v_minus() & self.v_d()

    def v_minus_u(self):
        return self.v_minus() & self.v_u()

    def v_minus_cap_fk(self, k):
        """V_- intersected with F^k V_+: leftmost boxes of rows of length k+1."""
        return frozenset(self.boxnum[(row, q - 1)]
                         for row, q in enumerate(self.rowlen) if q == k + 1)

    def v_plus_cap_fth(self, h):
        """V_+ intersected with (F^t)^h V_-: rightmost boxes of rows of length h+1."""
        return frozenset(self.boxnum[(row, 0)]
                         for row, q in enumerate(self.rowlen) if q == h + 1)

    def ft_v_minus_d(self):
        if self.p1 < 2:
            return frozenset()
        m = self.p1
        return frozenset(self.boxnum[(row, m - 2)]
                         for row, q in enumerate(self.rowlen) if q == m)

    def v_prime(self):
        """Boxes surviving removal of the leftmost column of the bottom
        rectangle."""
        m = self.p1
        gone = {self.boxnum[(row, m - 1)]
                for row, q in enumerate(self.rowlen) if q == m}
        return frozenset(self.boxes) - gone

    def subspace(self, name):
        table = {
            "V": lambda: frozenset(self.boxes),
            "V+": self.v_plus, "V-": self.v_minus,
            "Vd": self.v_d, "Vu": self.v_u,
            "V+d": self.v_plus_d, "V+u": self.v_plus_u,
            "V-d": self.v_minus_d, "V-u": self.v_minus_u,
            "FtV-d": self.ft_v_minus_d,
            "V'": self.v_prime,
        }
        if name in table:
            return table[name]()
        if name.startswith("V-capF^"):
            return self.v_minus_cap_fk(int(name[7:]))
        if name.startswith("V+capFt^"):
            return self.v_plus_cap_fth(int(name[8:]))
        raise KeyError(name)

    # -- derived pyramids ----------------------------------------------------

    def remove_left_column(self):
        """Sub-pyramid with the leftmost column of the bottom rectangle
        removed.  Box numbers are inherited, nothing is re-indexed."""
        if not self.is_right_aligned():
            raise ValueError("column removal is defined for right-aligned pyramids")
        m = self.p1
        if m < 2:
            raise ValueError("nothing left to remove: p1 = 1")
        rowlen = tuple(q - 1 if q == m else q for q in self.rowlen)
        boxnum = {(row, k): b for (row, k), b in self.boxnum.items()
                  if k < rowlen[row]}
        return Pyramid(rowlen, self.rowx2, boxnum, self.ambient_n,
                       validate=False)

    # -- scalar operators ----------------------------------------------------

    def f_matrix(self):
        """Left shift by one box (the nilpotent f restricted to this view)."""
        m = SMat()
        for b in self.boxes:
            lb = self.left_neighbor(b)
            if lb is not None:
                m.d[(lb, b)] = F1
        return m

    def ft_matrix(self):
        return self.f_matrix().transpose()

    def unit(self, boxes=None):
        return SMat.unit(self.boxes if boxes is None else boxes)

    def d_matrix(self, lagrangian=frozenset()):
        """The diagonal matrix D_m = -sum over the basis of m of U^i U_i,
        where m = lagrangian + g[>=1]."""
        m = SMat()
        x2s = [self.x2_of(b) for b in self.boxes]
        for b in self.boxes:
            cnt = sum(1 for v in x2s if v >= self.x2_of(b) + 2)
            cnt += sum(1 for (_, j) in lagrangian if j == b)
            if cnt:
                m.d[(b, b)] = Fraction(-cnt)
        return m

    def f_pairing(self, a, b):
        """(f | e_{ab}) = 1 if b is the left neighbor of a, else 0."""
        return F1 if self.left_neighbor(a) == b else F0

    def omega(self, p, q):
        """omega(e_p, e_q) = (f | [e_p, e_q]) for index pairs p, q."""
        a, b = p
        c, d = q
        val = F0
        if b == c:
            val += self.f_pairing(a, d)
        if d == a:
            val -= self.f_pairing(c, b)
        return val

    # -- rendering -----------------------------------------------------------

    def box_table(self):
        """[(box, row, k, x as Fraction), ...] sorted by box number."""
        return [(b, self._info[b][0], self._info[b][1],
                 Fraction(self._info[b][2], 2)) for b in self.boxes]

    def ascii_art(self):
        lines = []
        width = 6
        xmin = min(x2 for (_, _, x2) in self._info.values())
        for row in reversed(range(self.nrows)):
            cells = {}
            for k in range(self.rowlen[row]):
                b = self.boxnum[(row, k)]
                x2 = self.rowx2[row] - 2 * k
                cells[(x2 - xmin)] = b
            line = ""
            pos = 0
            maxpos = max(cells) if cells else -1
            while pos <= maxpos:
                if pos in cells:
                    line += ("[%3d]" % cells[pos]).ljust(width)
                    pos += 2
                else:
                    line += " " * (width // 2)
                    pos += 1
            lines.append(line.rstrip())
        return "\n".join(lines)


def build_pyramid(partition, alignment="right", offsets=None):
    """Construct the pyramid of a partition for a built-in alignment
    ('right', 'left', 'dynkin') or explicit per-row offsets.

    Offsets are the per-row left-edge positions in box widths (0 = flush
    with the longest row's left edge); halves are allowed.
    """
    if not isinstance(partition, Partition):
        partition = Partition(partition)
    parts = partition.parts
    p1 = partition.p1
    if offsets is not None:
        alignment = "custom"
    if alignment == "right":
        rowx2 = tuple((p1 - 1) for _ in parts)
    elif alignment == "left":
        rowx2 = tuple(-(p1 - 1) + 2 * (q - 1) for q in parts)
    elif alignment == "dynkin":
        rowx2 = tuple(q - 1 for q in parts)
    elif alignment == "custom":
        if offsets is None or len(offsets) != len(parts):
            raise ValueError("custom alignment needs one offset per row")
        rowx2 = []
        for q, off in zip(parts, offsets):
            off2 = Fraction(off) * 2
            if off2.denominator != 1:
                raise ValueError("offsets must be multiples of 1/2")
            rowx2.append(-(p1 - 1) + int(off2) + 2 * (q - 1))
        rowx2 = tuple(rowx2)
    else:
        raise ValueError("unknown alignment %r" % (alignment,))

    # canonical numbering by (k, row): depends only on the partition
    keys = sorted((k, row) for row, q in enumerate(parts) for k in range(q))
    boxnum = {(row, k): i + 1 for i, (k, row) in enumerate(keys)}
    return Pyramid(parts, rowx2, boxnum, partition.n)


# ---------------------------------------------------------------------------
# adjacency of good gradings and constructed Lagrangian pairs
# ---------------------------------------------------------------------------

def is_adjacent_right(p, q):
    """True if q is obtained from p by shifting each row right by 0 or 1/2."""
    if p.rowlen != q.rowlen or p.boxnum != q.boxnum:
        return False
    return all(d in (0, 1) for d in
               (qx - px for px, qx in zip(p.rowx2, q.rowx2)))


def adjacent_right_step(pyr):
    """One half-step toward right alignment: shift every row whose right
    edge is strictly left of the maximum.  Returns None if already there."""
    target = max(pyr.rowx2)
    if all(x2 == target for x2 in pyr.rowx2):
        return None
    rowx2 = tuple(x2 + 1 if x2 < target else x2 for x2 in pyr.rowx2)
    return Pyramid(pyr.rowlen, rowx2, pyr.boxnum, pyr.ambient_n)


def right_aligned_chain(pyr):
    """Chain of pairwise adjacent pyramids from pyr to the right-aligned one."""
    chain = [pyr]
    while True:
        nxt = adjacent_right_step(chain[-1])
        if nxt is None:
            return chain
        chain.append(nxt)


def lagrangian_pair(g1, g2):
    """For adjacent gradings g1 -> g2, the isotropic sets (l, lt) with
    l + g1[>=1] = lt + g2[>=1], built from the arrow picture: arrows of
    degree 1/2 in both gradings are split by vertical direction (upward
    arrows chosen), arrows of degree (1/2, 1) go to l, arrows of degree
    (1, 1/2) go to lt."""
    if not is_adjacent_right(g1, g2):
        raise ValueError("gradings are not adjacent")
    boxes = g1.boxes
    lag, lag_t, gray_up, gray_dn = set(), set(), set(), set()
    for a in boxes:
        for b in boxes:
            d1 = g1.deg2(a, b)
            d2 = g2.deg2(a, b)
            if d1 == 1 and d2 == 2:
                lag.add((a, b))
            elif d1 == 2 and d2 == 1:
                lag_t.add((a, b))
            elif d1 == 1 and d2 == 1:
                if g1.box_row(a) > g1.box_row(b):
                    gray_up.add((a, b))
                else:
                    gray_dn.add((a, b))
    if len(gray_up) != len(gray_dn):
        raise AssertionError("gray arrows do not split evenly")
    # sanity: the upward choice must be isotropic for omega on gray arrows
    for p in gray_up:
        for q in gray_up:
            if g1.omega(p, q):
                raise AssertionError("upward gray arrows are not isotropic")
    return frozenset(lag | gray_up), frozenset(lag_t | gray_up)


def m_pairs(pyr, lagrangian=frozenset()):
    """Index pairs spanning m = lagrangian + g[>=1]."""
    out = set(lagrangian)
    for a in pyr.boxes:
        for b in pyr.boxes:
            if pyr.deg2(a, b) >= 2:
                out.add((a, b))
    return frozenset(out)


def p_pairs(pyr, lagrangian=frozenset()):
    """Index pairs spanning the PBW complement p of m (degree <= 1/2 pairs
    not in the lagrangian)."""
    out = set()
    for a in pyr.boxes:
        for b in pyr.boxes:
            if pyr.deg2(a, b) <= 1 and (a, b) not in lagrangian:
                out.add((a, b))
    return frozenset(out)


# ---------------------------------------------------------------------------
# semisimple gradings commuting with the good grading ("neutral" ones)
# ---------------------------------------------------------------------------

def neutral_h(pyr, consts):
    """Diagonal grading element constant on each p_i x r_i rectangle.

    consts: one Fraction per distinct part size (largest part first).
    Returns dict box -> Fraction.
    """
    groups = pyr.partition().groups()
    if len(consts) != len(groups):
        raise ValueError("need one constant per distinct part size")
    bylen = {p: Fraction(c) for (p, _), c in zip(groups, consts)}
    return {b: bylen[pyr.rowlen[pyr.box_row(b)]] for b in pyr.boxes}


def grading_difference(g1, g2):
    """Boxwise x-difference of two good gradings, as dict box -> Fraction."""
    return {b: Fraction(g2.x2_of(b) - g1.x2_of(b), 2) for b in g1.boxes}


def h_degree(h, a, b):
    """Degree of e_{ab} in the diagonal grading h."""
    return h[a] - h[b]


def is_neutral(pyr, h):
    groups = pyr.partition().groups()
    bylen = {}
    for b in pyr.boxes:
        q = pyr.rowlen[pyr.box_row(b)]
        if q in bylen and bylen[q] != h[b]:
            return False
        bylen[q] = h[b]
    return len(bylen) == len(groups)
