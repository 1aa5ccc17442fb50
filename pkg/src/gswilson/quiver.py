"""Weighted quivers, mutation, amalgamation, and the quivers attached to
reduced words (elementary, word, decorated).

Vertex ids are small tuples so that everything is hashable, deterministic
and JSON-serializable:

    ("v", s, i)        word-quiver vertex v_i^s
    ("y", s)           decorated vertex y_s (primary coordinate X_{s,-inf})
    ("dyn", t)         spectator vertex of an elementary quiver
    ("L", s), ("R", s) ends of an elementary quiver
    (..., "T", T)      any of the above tagged with a triangle id
    ("E", e, s)        edge vertex after surface amalgamation

sigma entries are Fractions in (1/2)Z, stored sparsely in both directions.
Half entries are only legal between frozen vertices; this is asserted.
"""

from fractions import Fraction

from .laurent import LaurentPoly, RatFunc, VarId, as_poly
from .lie import RootDatum

_HALF = Fraction(1, 2)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class WeightedQuiver:
    def __init__(self, vertices, frozen, sigma, d, check=True):
        self.vertices = tuple(vertices)
        self.frozen = frozenset(frozen)
        self.d = dict(d)
        self.sigma = {}
        for (i, j), v in sigma.items():
            v = Fraction(v)
            if v:
                self.sigma[i, j] = v
        if check:
            self._check()

    def _check(self):
        vs = set(self.vertices)
        assert len(vs) == len(self.vertices), "duplicate vertices"
        assert self.frozen <= vs
        for v in self.vertices:
            assert self.d[v] > 0
        for (i, j), v in self.sigma.items():
            assert i in vs and j in vs, (i, j)
            assert i != j, "loop at %r" % (i,)
            assert self.sigma.get((j, i), Fraction(0)) == -v, \
                "sigma not skew at %r,%r" % (i, j)
            if v.denominator != 1:
                assert i in self.frozen and j in self.frozen, \
                    "half arrow %r -> %r outside frozen set" % (i, j)
            assert v.denominator in (1, 2)

    # -- views -------------------------------------------------------------

    def sig(self, i, j):
        return self.sigma.get((i, j), Fraction(0))

    def eps(self, i, j):
        """Exchange matrix entry eps_ij = d_i sigma_ij / gcd(d_i, d_j)."""
        s = self.sig(i, j)
        if not s:
            return Fraction(0)
        return Fraction(self.d[i], _gcd(self.d[i], self.d[j])) * s

    def exchange_matrix(self):
        return {(i, j): self.eps(i, j) for i in self.vertices
                for j in self.vertices if self.sig(i, j)}

    def mutable(self):
        return [v for v in self.vertices if v not in self.frozen]

    def arrows(self):
        """Each unordered pair once, oriented positively: (i, j, sigma_ij>0)."""
        out = []
        for (i, j), v in sorted(self.sigma.items(), key=lambda kv: (
                self.vertices.index(kv[0][0]), self.vertices.index(kv[0][1]))):
            if v > 0:
                out.append((i, j, v))
        return out

    def opposite(self):
        return WeightedQuiver(self.vertices, self.frozen,
                              {(i, j): -v for (i, j), v in self.sigma.items()},
                              self.d, check=False)

    def relabel(self, mapping):
        f = lambda v: mapping.get(v, v)
        return WeightedQuiver([f(v) for v in self.vertices],
                              {f(v) for v in self.frozen},
                              {(f(i), f(j)): x for (i, j), x in self.sigma.items()},
                              {f(v): w for v, w in self.d.items()})

    def __eq__(self, other):
        return isinstance(other, WeightedQuiver) and \
            set(self.vertices) == set(other.vertices) and \
            self.frozen == other.frozen and self.d == other.d and \
            self.sigma == other.sigma

    # -- mutation ----------------------------------------------------------

    def mutate(self, k):
        if k in self.frozen:
            raise ValueError("cannot mutate frozen vertex %r" % (k,))
        if k not in self.d:
            raise ValueError("unknown vertex %r" % (k,))
        d = self.d
        new = {}
        for i in self.vertices:
            for j in self.vertices:
                if i == j:
                    continue
                s = self.sig(i, j)
                if i == k or j == k:
                    v = -s
                else:
                    sik, skj = self.sig(i, k), self.sig(k, j)
                    if sik and skj:
                        alpha = Fraction(d[k] * _gcd(d[i], d[j]),
                                         _gcd(d[k], d[i]) * _gcd(d[k], d[j]))
                        v = s + Fraction(abs(sik) * skj + sik * abs(skj), 2) * alpha
                    else:
                        v = s
                if v:
                    new[i, j] = v
        return WeightedQuiver(self.vertices, self.frozen, new, d)

    # -- frozen bookkeeping -------------------------------------------------

    def with_minimal_frozen(self):
        """Unfreeze every vertex whose sigma row is entirely integral."""
        keep = set()
        for i in self.frozen:
            if any(v.denominator != 1 for (a, b), v in self.sigma.items() if a == i):
                keep.add(i)
        return WeightedQuiver(self.vertices, keep, self.sigma, self.d)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {
            "vertices": [list(v) for v in self.vertices],
            "frozen": sorted([list(v) for v in self.frozen]),
            "d": [[list(v), self.d[v]] for v in self.vertices],
            "sigma": [[list(i), list(j), str(v)]
                      for (i, j), v in sorted(self.sigma.items(),
                                              key=lambda kv: str(kv[0]))
                      if v > 0],
        }

    @staticmethod
    def from_json(obj):
        tup = lambda x: tuple(x)
        sigma = {}
        for i, j, v in obj["sigma"]:
            v = Fraction(v)
            sigma[tup(i), tup(j)] = v
            sigma[tup(j), tup(i)] = -v
        return WeightedQuiver([tup(v) for v in obj["vertices"]],
                              {tup(v) for v in obj["frozen"]},
                              sigma,
                              {tup(v): w for v, w in obj["d"]})

    def to_dot(self):
        """Graphviz export; half arrows dashed, frozen vertices boxed."""
        def vid(v):
            return '"%s"' % ("_".join(str(p) for p in v),)
        lines = ["digraph quiver {"]
        for v in self.vertices:
            shape = "box" if v in self.frozen else "ellipse"
            lines.append('  %s [shape=%s,label="%s (d=%d)"];'
                         % (vid(v), shape, "_".join(str(p) for p in v), self.d[v]))
        for i, j, v in self.arrows():
            style = ' [style=dashed,label="1/2"]' if v.denominator == 2 else \
                ('' if v == 1 else ' [label="%s"]' % (v,))
            lines.append("  %s -> %s%s;" % (vid(i), vid(j), style))
        lines.append("}")
        return "\n".join(lines)

    def __str__(self):
        segs = ["%r%s(d=%d)" % (v, "*" if v in self.frozen else "", self.d[v])
                for v in self.vertices]
        return "WeightedQuiver[%s; %d arrows]" % (", ".join(segs), len(self.arrows()))


# ---------------------------------------------------------------------------
# seeds


class Seed:
    """Weighted quiver together with a cluster Poisson variable per vertex."""

    def __init__(self, quiver, variables):
        self.quiver = quiver
        self.vars = {v: (x if isinstance(x, RatFunc) else RatFunc(as_poly(x)))
                     for v, x in variables.items()}
        assert set(self.vars) == set(quiver.vertices)

    def mutate(self, k):
        q2 = self.quiver.mutate(k)
        Xk = self.vars[k]
        out = {}
        for i in self.quiver.vertices:
            if i == k:
                out[i] = Xk ** -1
                continue
            e = self.quiver.eps(i, k)
            if not e:
                out[i] = self.vars[i]
                continue
            assert e.denominator == 1, "half exchange entry at mutable vertex"
            e = int(e)
            sgn = 1 if e > 0 else -1
            out[i] = self.vars[i] * (1 + Xk ** (-sgn)) ** (-e)
        return Seed(q2, out)

    def __eq__(self, other):
        return isinstance(other, Seed) and self.quiver == other.quiver and \
            all(self.vars[v] == other.vars[v] for v in self.quiver.vertices)


# ---------------------------------------------------------------------------
# amalgamation


def amalgamate(q1, q2, F, F2, phi, minimal_frozen=True):
    """Glue q2 onto q1 along the bijection phi: F -> F2.

    F must be frozen in q1, F2 frozen in q2, with matching weights.  The
    glued vertex keeps its q1 id.  With minimal_frozen, vertices whose rows
    become entirely integral are unfrozen (the paper's minimal choice);
    chained constructions pass False and do one minimal pass at the end.
    """
    F = list(F)
    F2set = set(F2)
    assert len(F) == len(F2set)
    for v in F:
        assert v in q1.frozen, "glued vertex %r not frozen" % (v,)
        assert phi[v] in F2set, "phi image %r not in F'" % (phi[v],)
        assert q1.d[v] == q2.d[phi[v]], "weight mismatch at %r" % (v,)
    for v in F2set:
        assert v in q2.frozen, "glued vertex %r not frozen" % (v,)

    inv = {phi[v]: v for v in F}
    q2r = q2.relabel(inv)

    vertices = list(q1.vertices) + [v for v in q2r.vertices if v not in set(q1.vertices)]
    d = dict(q1.d)
    for v in q2r.vertices:
        if v in d:
            assert d[v] == q2r.d[v]
        else:
            d[v] = q2r.d[v]
    sigma = {}
    for (i, j), v in q1.sigma.items():
        sigma[i, j] = sigma.get((i, j), Fraction(0)) + v
    for (i, j), v in q2r.sigma.items():
        sigma[i, j] = sigma.get((i, j), Fraction(0)) + v
    frozen = q1.frozen | q2r.frozen
    out = WeightedQuiver(vertices, frozen, sigma, d)
    if minimal_frozen:
        out = out.with_minimal_frozen()
    return out


def amalgamate_seed(s1, s2, F, F2, phi, minimal_frozen=True):
    q = amalgamate(s1.quiver, s2.quiver, F, F2, phi, minimal_frozen=minimal_frozen)
    inv = {phi[v]: v for v in F}
    variables = {}
    for v in s1.quiver.vertices:
        variables[v] = s1.vars[v]
    for v in s2.quiver.vertices:
        w = inv.get(v, v)
        if w in variables:
            variables[w] = variables[w] * s2.vars[v]
        else:
            variables[w] = s2.vars[v]
    return Seed(q, variables)


def glue_frozen(q, F, F2, phi, minimal_frozen=True):
    """Amalgamate a quiver with itself along phi: F -> F2 (disjoint frozen
    sets); needed when two triangles of a surface share more than one edge.

    phi[v] is merged into v, sigma rows add up.  An arrow between v and
    phi[v] would become a loop; its skew partner cancels it, so both are
    dropped (the diagonal of the glued exchange matrix is zero).
    """
    F = list(F)
    F2set = set(F2)
    assert len(F) == len(F2set)
    assert not set(F) & F2set, "gluing a vertex to itself"
    for v in F:
        assert v in q.frozen, "glued vertex %r not frozen" % (v,)
        assert phi[v] in F2set and phi[v] in q.frozen
        assert q.d[v] == q.d[phi[v]], "weight mismatch at %r" % (v,)

    ren = {phi[v]: v for v in F}
    vertices = [v for v in q.vertices if v not in F2set]
    sigma = {}
    for (i, j), x in q.sigma.items():
        i2, j2 = ren.get(i, i), ren.get(j, j)
        if i2 == j2:
            continue
        s = sigma.get((i2, j2), Fraction(0)) + x
        if s:
            sigma[i2, j2] = s
        elif (i2, j2) in sigma:
            del sigma[i2, j2]
    d = {v: q.d[v] for v in vertices}
    frozen = q.frozen - F2set
    out = WeightedQuiver(vertices, frozen, sigma, d)
    if minimal_frozen:
        out = out.with_minimal_frozen()
    return out


def glue_frozen_seed(seed, F, F2, phi, minimal_frozen=True):
    q = glue_frozen(seed.quiver, F, F2, phi, minimal_frozen=minimal_frozen)
    variables = {}
    for v in q.vertices:
        variables[v] = seed.vars[v]
    for v in F:
        variables[v] = variables[v] * seed.vars[phi[v]]
    return Seed(q, variables)


# ---------------------------------------------------------------------------
# quivers from reduced words


def elementary_quiver(rd, s, sign="+"):
    """J^+(s) (or its opposite for sign "-"), all vertices frozen."""
    if not isinstance(rd, RootDatum):
        rd = RootDatum(rd)
    assert s in rd.S
    vs = [("L", s)] + [("dyn", t) for t in rd.S if t != s] + [("R", s)]
    d = {("L", s): rd.d[s], ("R", s): rd.d[s]}
    for t in rd.S:
        if t != s:
            d[("dyn", t)] = rd.d[t]
    sigma = {(("R", s), ("L", s)): Fraction(1), (("L", s), ("R", s)): Fraction(-1)}
    for t in rd.S:
        if t != s and rd.cartan[s, t] != 0:
            u = ("dyn", t)
            sigma[("L", s), u] = _HALF
            sigma[u, ("L", s)] = -_HALF
            sigma[u, ("R", s)] = _HALF
            sigma[("R", s), u] = -_HALF
    q = WeightedQuiver(vs, set(vs), sigma, d)
    return q if sign == "+" else q.opposite()


def dynkin_label(v):
    """Dynkin label of a word/decorated-quiver vertex id."""
    if v[0] in ("v", "y", "L", "R", "dyn"):
        return v[1]
    raise ValueError("no Dynkin label on %r" % (v,))


def word_quiver(rd, word, sign="+"):
    """J^eps(s_1..s_l) with vertices ("v", s, i), i = 0..n^s."""
    if not isinstance(rd, RootDatum):
        rd = RootDatum(rd)
    word = tuple(word)
    assert word, "empty word has no quiver"
    for s in word:
        assert s in rd.S, "letter %r outside S" % (s,)

    count = {t: 0 for t in rd.S}
    s1 = word[0]
    ren = {("L", s1): ("v", s1, 0), ("R", s1): ("v", s1, 1)}
    for t in rd.S:
        if t != s1:
            ren[("dyn", t)] = ("v", t, 0)
    q = elementary_quiver(rd, s1, sign).relabel(ren)
    count[s1] = 1
    cur = {t: ("v", t, 0) for t in rd.S}
    cur[s1] = ("v", s1, 1)

    for s in word[1:]:
        nxt = elementary_quiver(rd, s, sign)
        ren = {("L", s): cur[s], ("R", s): ("v", s, count[s] + 1)}
        for t in rd.S:
            if t != s:
                ren[("dyn", t)] = cur[t]
        nxt = nxt.relabel(ren)
        F = [cur[t] for t in rd.S]
        phi = {v: v for v in F}
        q = amalgamate(q, nxt, F, F, phi, minimal_frozen=False)
        count[s] += 1
        cur[s] = ("v", s, count[s])

    return q.with_minimal_frozen()


def decorated_quiver(rd, word):
    """J~^+(s) for a reduced word of w0: word quiver + y_s vertices/arrows."""
    if not isinstance(rd, RootDatum):
        rd = RootDatum(rd)
    word = tuple(word)
    if len(word) != rd.N or not rd.is_reduced(word):
        raise ValueError("decorated quiver needs a reduced word of w0")
    q = word_quiver(rd, word, "+")

    betas = rd.coroot_seq_backward(word)
    alphas = _root_seq_backward(rd, word)
    k_of = {}
    for s in rd.S:
        hits = [k + 1 for k, b in enumerate(betas) if b == rd.simple_coroots[s]]
        assert len(hits) == 1, (s, hits)
        k_of[s] = hits[0]
        assert alphas[k_of[s] - 1] == rd.simple_roots[s]

    vertices = list(q.vertices) + [("y", s) for s in rd.S]
    d = dict(q.d)
    sigma = dict(q.sigma)
    frozen = set(q.frozen) | {("y", s) for s in rd.S}
    for s in rd.S:
        d[("y", s)] = rd.d[s]

    # H(s) part: eps_st = sgn(k(t)-k(s))/2 * C_ts
    for s in rd.S:
        for t in rd.S:
            if s == t:
                continue
            ks, kt = k_of[s], k_of[t]
            eps = Fraction(_sgn(kt - ks), 2) * rd.cartan[t, s]
            if eps:
                g = _gcd(rd.d[s], rd.d[t])
                sigma[("y", s), ("y", t)] = eps * Fraction(g, rd.d[s])

    # connecting arrows v_{i-1}^t -> y_s -> v_i^t at level t = s_{k(s)}
    occ_index = {}
    seen = {t: 0 for t in rd.S}
    for pos, t in enumerate(word, start=1):
        seen[t] += 1
        occ_index[pos] = (t, seen[t])
    for s in rd.S:
        t, i = occ_index[k_of[s]]
        a, b = ("v", t, i - 1), ("y", s)
        sigma[a, b] = sigma.get((a, b), Fraction(0)) + 1
        sigma[b, a] = sigma.get((b, a), Fraction(0)) - 1
        a, b = ("y", s), ("v", t, i)
        sigma[a, b] = sigma.get((a, b), Fraction(0)) + 1
        sigma[b, a] = sigma.get((b, a), Fraction(0)) - 1

    return WeightedQuiver(vertices, frozen, sigma, d), k_of


def _sgn(x):
    return (x > 0) - (x < 0)


def _root_seq_backward(rd, word):
    out, e = [], rd.id_elt()
    for s in reversed(word):
        out.append(rd.act(e, rd.simple_roots[s]))
        e = rd.mul(e, rd.refl(s))
    return list(reversed(out))


def decorated_seed(rd, word, T=None):
    """Seed on J~^+(word) with GS coordinate variables (optionally triangle-tagged)."""
    q, _ = decorated_quiver(rd, word)
    variables = {}
    for v in q.vertices:
        if v[0] == "v":
            variables[v] = LaurentPoly.var(VarId.gs(v[1], v[2], T=T))
        else:
            variables[v] = LaurentPoly.var(VarId.gs_primary(v[1], T=T))
    return Seed(q, variables)


def surface_seed(surface, dec=None):
    """Seed of the amalgamated quiver of a decorated triangulation.

    Lives in the surface module (it needs the triangulation data model);
    re-exported here because it is quiver-level functionality.
    """
    from .surface import surface_seed as _impl
    return _impl(surface, dec)
