"""Triangle moduli in standard form: triples (h1, h2, u+) and their coordinates.

A point of the triangle space is pinned by two diagonal group elements h1, h2
and a unipotent u+ in the open cell.  This module provides

  * Lusztig parametrizations and the coweight evaluation maps ev+/ev-,
  * the exact dictionary between the X-coordinates of a reduced word and the
    standard triple (both directions, including the primary i = -inf slots),
  * the basic Wilson matrices b_L = u+ h2 and b_R = wbar0^{-1} b_L^{-1} wbar0,
    the latter along two independent routes (structural inversion vs. the
    opposite-starred-word evaluation map) which are compared on every call,
  * Gaussian (LDU) decomposition, the unipotent twist eta with its companions
    phi/phi', the cyclic shift in closed form, and the three-torus action.

All arithmetic is exact: entries are Fraction, LaurentPoly or RatFunc.  The
torus maps H^s need exact roots, so numeric sampling should feed perfect
torus_power-th powers (symbolic variables are unrestricted).
"""

from fractions import Fraction

from .laurent import LaurentPoly, VarId, as_poly
from .lie import ReducedWord
from .matrix import Mat, MinorVanishes, monomial_clear, proj_equal

MINF = float("-inf")  # index of the primary slot (s, -inf)


# ---------------------------------------------------------------------------
# parametrizations of the unipotent parts


def _tval(t, k):
    """Coefficient at 1-based position k; t may be a dict or a sequence."""
    if isinstance(t, dict):
        return t[k]
    return t[k - 1]


def lusztig_x(rep, letters, t):
    """x_{s_1}(t_1) ... x_{s_l}(t_l)."""
    out = Mat.identity(rep.dim)
    for k, s in enumerate(letters, start=1):
        out = out * rep.x(s, _tval(t, k))
    return out


def lusztig_y(rep, letters, t):
    """y_{s_1}(t_1) ... y_{s_l}(t_l)."""
    out = Mat.identity(rep.dim)
    for k, s in enumerate(letters, start=1):
        out = out * rep.y(s, _tval(t, k))
    return out


def ev_plus(rep, letters, x):
    """prod_s H^s(x_0^s) * prod_k E^{s_k} H^{s_k}(x_i^{s_k}), i = occurrence.

    `letters` is any reduced word; x maps (s,i) with 0 <= i <= n^s to ring
    elements.  Slots (s,0) are required for every letter s of the type, not
    just those appearing in the word.
    """
    rd = rep.rd
    out = Mat.identity(rep.dim)
    for s in rd.S:
        out = out * rep.H(s, x[s, 0])
    seen = {s: 0 for s in rd.S}
    for s in letters:
        seen[s] += 1
        out = out * rep.E(s) * rep.H(s, x[s, seen[s]])
    return out


def ev_minus(rep, letters, y):
    """Same shape as ev_plus with F in place of E (lands in B^-)."""
    rd = rep.rd
    out = Mat.identity(rep.dim)
    for s in rd.S:
        out = out * rep.H(s, y[s, 0])
    seen = {s: 0 for s in rd.S}
    for s in letters:
        seen[s] += 1
        out = out * rep.F(s) * rep.H(s, y[s, seen[s]])
    return out


def merge_coweight_vars(rd, letters1, x, letters2, y):
    """Variable dictionary for ev_plus(letters1 + letters2) such that
    ev_plus(l1, x) * ev_plus(l2, y) = ev_plus(l1 + l2, merged).

    The boundary slots collide: z_{n1^s}^s = x_{n1^s}^s * y_0^s; everything
    else passes through with shifted occurrence indices.
    """
    n1 = {s: 0 for s in rd.S}
    for s in letters1:
        n1[s] += 1
    n2 = {s: 0 for s in rd.S}
    for s in letters2:
        n2[s] += 1
    z = {}
    for s in rd.S:
        for i in range(n1[s]):
            z[s, i] = x[s, i]
        z[s, n1[s]] = x[s, n1[s]] * y[s, 0]
        for j in range(1, n2[s] + 1):
            z[s, n1[s] + j] = y[s, j]
    return z


# ---------------------------------------------------------------------------
# charts


class GSChart:
    """X-coordinate chart attached to a reduced word of w0.

    Indices: (s, i) for 0 <= i <= n^s plus one primary slot (s, MINF) per
    letter.  `vars` maps each index to a VarId; pass a triangle id to tag
    the variables for surface work.
    """

    def __init__(self, rep, word, triangle=None):
        self.rep = rep
        self.rd = rep.rd
        if not isinstance(word, ReducedWord):
            word = ReducedWord(self.rd, word)
        if self.rd.word_elt(word.letters) != self.rd.w0_elt():
            raise ValueError("chart words must be reduced words of w0")
        self.word = word
        self.vars = {}
        for s, i in word.I():
            self.vars[s, i] = VarId.gs(s, i, triangle)
        for s in self.rd.S:
            self.vars[s, MINF] = VarId.gs_primary(s, triangle)

    def indices(self, primaries=True):
        out = list(self.word.I())
        if primaries:
            out += [(s, MINF) for s in self.rd.S]
        return out

    def symbol(self, s, i):
        return LaurentPoly.var(self.vars[s, i])

    def values(self, assignment=None, primaries=True):
        """Index -> ring element; symbolic when no assignment is given."""
        out = {}
        for idx in self.indices(primaries):
            if assignment is None:
                out[idx] = LaurentPoly.var(self.vars[idx])
            else:
                out[idx] = assignment[idx]
        return out


def torus_power(rd):
    """L such that H^s(v**L) stays rational for every rational v > 0."""
    return rd.type.rank + 1 if rd.type.family == "A" else 2


def random_gs_point(chart, rng, hi=4):
    """Random positive rational assignment made of exact torus powers."""
    L = torus_power(chart.rd)
    out = {}
    for idx in chart.indices():
        v = Fraction(rng.randint(1, hi), rng.randint(1, hi))
        out[idx] = v ** L
    return out


# ---------------------------------------------------------------------------
# the GS -> standard-form dictionary


def lusztig_from_gs(word, X):
    """Position -> t_k with t_{k(s,i)} = X_{s,0} ... X_{s,i-1}."""
    pref = {s: X[s, 0] for s in word.rd.S}
    t = {}
    for pos, (s, i) in enumerate(word.occ, start=1):
        t[pos] = pref[s]
        pref[s] = pref[s] * X[s, i]
    return t


def _torus(rep, per_letter):
    out = Mat.identity(rep.dim)
    for s in rep.rd.S:
        out = out * rep.H(s, per_letter[s])
    return out


def _xx(word, X):
    """The per-letter totals XX_s = prod_i X_{s,i}."""
    out = {}
    for s in word.rd.S:
        v = X[s, 0]
        for i in range(1, word.n_s[s] + 1):
            v = v * X[s, i]
        out[s] = v
    return out


def h2_from_gs(rep, word, X):
    return _torus(rep, _xx(word, X))


def h1_from_gs(rep, word, X):
    """prod_s H^s(Xtilde_s); Xtilde_s couples the primary slot of s* with the
    forward-coroot exponents of the word prefix ending where the forward
    coroot equals alpha_s^vee."""
    rd = rep.rd
    t = lusztig_from_gs(word, X)
    fw = rd.coroot_seq_forward(word.letters)
    pos_of = {}
    for k, gam in enumerate(fw, start=1):
        for s in rd.S:
            if gam == rd.simple_coroots[s]:
                assert s not in pos_of
                pos_of[s] = k
    assert len(pos_of) == len(rd.S)
    vals = {}
    for s in rd.S:
        v = X[rd.star[s], MINF] * t[pos_of[s]] ** -1
        for k in range(1, pos_of[s] + 1):
            e = rd.pair_with_root(fw[k - 1], s)
            assert e == int(e)
            if e:
                v = v * t[k] ** int(e)
        vals[s] = v
    return _torus(rep, vals)


def primary_from_standard(rep, word, h1, t):
    """X_{s,-inf} from (h1, Lusztig coefficients): the inverse of h1_from_gs.

    X_{s,-inf} = t_{k(s)} h1^{alpha_{s*}} prod_j t_j^{<r_{s_1}..r_{s_j}
    alpha_{s_j}^vee, alpha_{s*}>} with k(s) the position whose backward
    coroot is alpha_s^vee.
    """
    rd = rep.rd
    fw = rd.coroot_seq_forward(word.letters)
    bw = rd.coroot_seq_backward(word.letters)
    out = {}
    for s in rd.S:
        ks = [k for k, b in enumerate(bw, start=1)
              if b == rd.simple_coroots[s]]
        assert len(ks) == 1
        k_s = ks[0]
        v = _tval(t, k_s) * char_value(rep, h1, rd.simple_roots[rd.star[s]])
        for j in range(1, k_s + 1):
            # r_{s_1}..r_{s_j}(alpha_{s_j}^vee) = -forward coroot at j
            e = -rd.pair_with_root(fw[j - 1], rd.star[s])
            assert e == int(e)
            if e:
                v = v * _tval(t, j) ** int(e)
        out[s] = v
    return out


def gs_to_standard(chart, assignment=None):
    """The standard triple (h1, h2, u+) of a chart point."""
    rep, word = chart.rep, chart.word
    X = chart.values(assignment)
    t = lusztig_from_gs(word, X)
    return ConfigPoint(rep,
                       h1_from_gs(rep, word, X),
                       h2_from_gs(rep, word, X),
                       lusztig_x(rep, word.letters, t),
                       check=False)


# ---------------------------------------------------------------------------
# configuration points


def _is_one(e):
    return not (e - 1)


class ConfigPoint:
    """A standard-form triple (h1, h2, u+) carried with its representation.

    Membership of u+ in the open cell is not checked here: the twist and the
    cyclic shift surface MinorVanishes lazily when a needed pivot dies.
    """

    def __init__(self, rep, h1, h2, uplus, check=True):
        self.rep = rep
        self.h1 = h1
        self.h2 = h2
        self.uplus = uplus
        if check:
            assert h1.is_diagonal() and h2.is_diagonal()
            assert uplus.is_upper_triangular()
            assert all(_is_one(uplus[i, i]) for i in range(uplus.nr))

    def b_L(self):
        return self.uplus * self.h2

    def b_R(self):
        w0b = self.rep.wbar0()
        binv = self.h2.diag_inv() * self.uplus.unitri_inv()
        return _wbar0_inv(self.rep) * binv * w0b

    def triple(self):
        return self.h1, self.h2, self.uplus

    def map_entries(self, fn):
        return ConfigPoint(self.rep, self.h1.map_entries(fn),
                           self.h2.map_entries(fn),
                           self.uplus.map_entries(fn), check=False)

    def eval_positive(self, assignment):
        return ConfigPoint(self.rep,
                           self.h1.eval_positive(assignment),
                           self.h2.eval_positive(assignment),
                           self.uplus.eval_positive(assignment), check=False)

    def proj_eq(self, other):
        return (proj_equal(self.h1, other.h1)
                and proj_equal(self.h2, other.h2)
                and proj_equal(self.uplus, other.uplus))


# ---------------------------------------------------------------------------
# basic Wilson matrices


def basic_wilson_L(chart, assignment=None):
    """b_L = u+ h2, directly from the word dictionary."""
    rep, word = chart.rep, chart.word
    X = chart.values(assignment, primaries=False)
    t = lusztig_from_gs(word, X)
    return lusztig_x(rep, word.letters, t) * h2_from_gs(rep, word, X)


def basic_wilson_R(chart, assignment=None, cross_check=True):
    """b_R = wbar0^{-1} (u+ h2)^{-1} wbar0, built via the evaluation map of
    the reversed-starred word (slot (u,j) carries X_{u*, n^{u*}-j}).

    With cross_check the structural-inversion route is computed as well and
    the two scalar-cleared matrices must agree.
    """
    rep, word = chart.rep, chart.word
    rd = rep.rd
    X = chart.values(assignment, primaries=False)
    wop = word.star_opposite()
    y = {}
    for u in rd.S:
        us = rd.star[u]
        for j in range(word.n_s[us] + 1):
            y[u, j] = X[us, word.n_s[us] - j]
    out = ev_minus(rep, wop.letters, y)
    if cross_check:
        t = lusztig_from_gs(word, X)
        other = _wbar0_inv(rep) * h2_from_gs(rep, word, X).diag_inv() \
            * lusztig_x(rep, word.letters, t).unitri_inv() * rep.wbar0()
        assert monomial_clear(out)[1] == monomial_clear(other)[1], \
            "evaluation-map and inversion routes for b_R disagree"
    return out


# ---------------------------------------------------------------------------
# torus helpers


def _wbar0_inv(rep):
    inv = getattr(rep, "_wbar0_inv_cache", None)
    if inv is None:
        inv = rep.wbar0().inv()
        rep._wbar0_inv_cache = inv
    return inv


def torus_w0(rep, h):
    """w0(h) = wbar0 h wbar0^{-1} (diagonal in, diagonal out)."""
    out = rep.wbar0() * h * _wbar0_inv(rep)
    assert out.is_diagonal()
    return out


def torus_star(rep, h):
    """h* = w0(h^{-1})."""
    return torus_w0(rep, h.diag_inv())


def char_value(rep, h, lam):
    """lam(h) for a character lam in e-coordinates (integer entries); the
    leading diagonal entries of the natural rep realize the e-basis."""
    out = None
    for i, c in enumerate(lam):
        c = Fraction(c)
        assert c.denominator == 1, "character must be integral in e-basis"
        if c:
            piece = h[i, i] ** int(c)
            out = piece if out is None else out * piece
    if out is None:
        return Fraction(1)
    return out


# ---------------------------------------------------------------------------
# Gaussian decomposition, twist, cyclic shift


def gauss_decompose(g):
    """g = L D U; raises MinorVanishes(k) naming the first dead minor.

    For polynomial matrices whose pivots are not monomials, convert with
    g.to_ratfunc() first.
    """
    return g.ldu()


def principal_minor(g, k):
    """Leading principal k x k minor, by the division-free determinant."""
    return Mat([row[:k] for row in g.rows[:k]]).det()


def generalized_minor_w0(rep, u, k):
    """Delta_{lam, w0 lam}(u) for lam = e_1 + ... + e_k, as a literal minor
    of u * wbar0.  Agrees with the product of the first k LDU pivots."""
    return principal_minor(u * rep.wbar0(), k)


def _prep_cell(rep, u):
    """LDU data of u * wbar0 (RatFunc-lifted when entries are polynomials)."""
    g = u * rep.wbar0()
    if any(isinstance(e, LaurentPoly) for row in g.rows for e in row):
        g = g.to_ratfunc()
    return g.ldu()


def twist(rep, u):
    """eta(u) = [wbar0 u^T]_+ : the unipotent part of the opposite Gaussian
    decomposition of wbar0 u^T."""
    g = rep.wbar0() * rep.transpose(u)
    if any(isinstance(e, LaurentPoly) for row in g.rows for e in row):
        g = g.to_ratfunc()
    _, _, U = g.ldu()
    return U


def twist_decomposition(rep, u):
    """(phi', h0, phi) with u = phi' * h0 * wbar0^{-1} * phi, via one LDU of
    u * wbar0.  phi' is lower unitriangular, phi lower unitriangular too
    (it is wbar0 U wbar0^{-1}), h0 = [u wbar0]_0."""
    L, D, U = _prep_cell(rep, u)
    phi = rep.wbar0() * U * _wbar0_inv(rep)
    return L, D, phi


def twist_inverse(rep, u):
    """eta^{-1}(u) = phi(u)^T."""
    _, _, phi = twist_decomposition(rep, u)
    return rep.transpose(phi)


def _star_unitri(rep, u):
    """g* = wbar0 (g^{-1})^T wbar0^{-1} for unitriangular g (division-free)."""
    return rep.wbar0() * rep.transpose(u.unitri_inv()) * _wbar0_inv(rep)


def cyclic_shift(c, symbolic_ok=False):
    """One step of the order-three rotation, in closed form:

        h1' = h1* h2 w0([u wbar0]_0),  h2' = h1*,  u' = Ad_{h1*}(eta(u)*).

    Symbolic inputs are only allowed for rank <= 2 unless symbolic_ok is set
    (the RatFunc pivots grow quickly with rank).
    """
    rep = c.rep
    symbolic = any(not isinstance(e, (int, Fraction))
                   for row in c.uplus.rows for e in row)
    if symbolic and rep.rd.type.rank > 2 and not symbolic_ok:
        raise ValueError("symbolic cyclic shift is gated to rank <= 2; "
                         "evaluate at a point or pass symbolic_ok=True")
    L, D, _ = _prep_cell(rep, c.uplus)
    eta = rep.transpose(L)          # [wbar0 u^T]_+ via the phi' companion
    h1s = torus_star(rep, c.h1)
    u_new = h1s * _star_unitri(rep, eta) * h1s.diag_inv()
    h1_new = h1s * c.h2 * torus_w0(rep, D)
    return ConfigPoint(rep, h1_new, h1s, u_new, check=False)


def shifted_wilson_L(c):
    """b_L of the shifted point without forming it: h1* eta(u)*."""
    rep = c.rep
    L, _, _ = _prep_cell(rep, c.uplus)
    return torus_star(rep, c.h1) * _star_unitri(rep, rep.transpose(L))


def cyclic_shift_inv(c, symbolic_ok=False):
    """The exact inverse of cyclic_shift (not a double application).

    Solving the closed form backwards: h2' = h1* gives h1 = h2'* (star is
    an involution on the torus), u' = Ad_{h1*}(eta(u)*) gives
    eta(u) = (Ad_{h2'^{-1}} u')*, then u = eta^{-1}(...) and finally
    h2 = h2'^{-1} h1' w0([u wbar0]_0)^{-1}.  Composing with cyclic_shift in
    either order returns the original triple on the nose, which keeps
    scalar normalizations honest in products mixing S3 and S3^{-1}.
    """
    rep = c.rep
    symbolic = any(not isinstance(e, (int, Fraction))
                   for row in c.uplus.rows for e in row)
    if symbolic and rep.rd.type.rank > 2 and not symbolic_ok:
        raise ValueError("symbolic cyclic shift is gated to rank <= 2; "
                         "evaluate at a point or pass symbolic_ok=True")
    h1 = torus_star(rep, c.h2)
    eta_u = _star_unitri(rep, c.h2.diag_inv() * c.uplus * c.h2)
    u = twist_inverse(rep, eta_u)
    _, D, _ = _prep_cell(rep, u)
    h2 = c.h2.diag_inv() * c.h1 * torus_w0(rep, D).diag_inv()
    return ConfigPoint(rep, h1, h2, u, check=False)


def _antitranspose(g):
    """Flip along the antidiagonal (reverse rows and columns)."""
    n = g.nr
    return Mat([[g.rows[n - 1 - i][n - 1 - j] for j in range(n)]
                for i in range(n)])


def in_double_bruhat_w0(rep, g):
    """Whether g lies in G^{w0,w0} = B+ wbar0 B+  intersect  B- wbar0 B-.

    g in B+ wbar0 B+ iff wbar0^{-1} g is Gaussian-decomposable (LDU), and
    g in B- wbar0 B- iff the antidiagonal flip of wbar0^{-1} g is; both
    are leading-principal-minor conditions.
    """
    h = _wbar0_inv(rep) * g
    for m in (h, _antitranspose(h)):
        if any(isinstance(e, LaurentPoly) for row in m.rows for e in row):
            m = m.to_ratfunc()
        try:
            m.ldu()
        except MinorVanishes:
            return False
    return True


# ---------------------------------------------------------------------------
# three-torus action


def h3_action(c, k1, k2, k3):
    """(h1, h2, u) -> (k1^{-1} h1 w0(k2), k1^{-1} h2 w0(k3), Ad_{k1^{-1}} u)."""
    rep = c.rep
    k1i = k1.diag_inv()
    return ConfigPoint(rep,
                       k1i * c.h1 * torus_w0(rep, k2),
                       k1i * c.h2 * torus_w0(rep, k3),
                       k1i * c.uplus * k1,
                       check=False)


def h3_action_on_gs(rep, word, X, k1, k2, k3):
    """The same action on chart values: boundary slots rescale, interior
    slots are untouched.

        X_{s,0}    *= k1^{-alpha_s}
        X_{s,n^s}  *= k3^{-alpha_{s*}}
        X_{s,-inf} *= k2^{-alpha_s}
    """
    rd = rep.rd
    out = dict(X)
    for s in rd.S:
        a_s = rd.simple_roots[s]
        out[s, 0] = out[s, 0] * char_value(rep, k1, a_s) ** -1
        hi = word.n_s[s]
        out[s, hi] = out[s, hi] * char_value(
            rep, k3, rd.simple_roots[rd.star[s]]) ** -1
        if (s, MINF) in out:
            out[s, MINF] = out[s, MINF] * char_value(rep, k2, a_s) ** -1
    return out
