"""Wilson lines over dotted triangulated surfaces.

A surface here is purely combinatorial: ideal triangles whose corners
0,1,2 are ordered counterclockwise, side p running from corner p to
corner p+1 (mod 3), sides glued in pairs along interior edges.  Every
triangle carries a dot at one corner which anchors its coordinate chart:
with the dot at corner d, side d is the chart's first edge, side d+1 the
second, side d+2 the third, i.e. side p sits at chart position
e = (p - d) mod 3.

A corridor is a list of (triangle, in-side, out-side) steps walking
through consecutively glued triangles.  Each step cuts off one corner:

    out == in + 2 (mod 3):  left turn,  cut corner = in,   factor in B+
    out == in + 1 (mod 3):  right turn, cut corner = out,  factor in B-

and the position of the dot relative to the cut corner says how far the
chart must be rotated before the basic factor applies:

    t = (cut - dot) mod 3, reported as 0, 1 or -1 (instead of 2).

The Wilson line of a corridor is the left-to-right product of the step
factors b_L / b_R of the t-fold cyclically shifted chart of each step's
triangle (leftmost factor = first step).  Visiting the same physical
triangle twice reuses the same chart variables: charts are tagged by the
triangle id, never by the step number.

Edge substitution.  Each chart side carries, for every Dynkin letter s,
one frozen coordinate of degree -alpha_s: at chart position 0 it is
X[s,0], at position 1 the primary X[s,-inf], at position 2 it is
X[s*,n^{s*}].  Along an interior edge the coordinate of degree -alpha_s
on the side LISTED FIRST in the gluing is paired with the coordinate of
degree -alpha_{s*} on the second side; their product is the edge
function, so the substitution sends the first to the single edge
variable Z[s,E] and the second to 1.  A boundary side's coordinate is
renamed to its own Z[s,E].  Every frozen coordinate of every triangle is
hit exactly once, which is why self-folded triangles are rejected.
"""

import json
from fractions import Fraction

from .lie import RootDatum, ReducedWord, NaturalRep, longest_word_standard
from .laurent import VarId, LaurentPoly, RatFunc
from .matrix import Mat
from .conf3 import (MINF, GSChart, gs_to_standard, basic_wilson_L,
                    basic_wilson_R, cyclic_shift, cyclic_shift_inv)
from .quiver import (WeightedQuiver, Seed, decorated_seed, amalgamate_seed,
                     glue_frozen_seed)


# ---------------------------------------------------------------------------
# the triangulation data model


def _as_step(step):
    if isinstance(step, dict):
        return (step["triangle"], int(step["in"]), int(step["out"]))
    t, a, b = step
    return (t, int(a), int(b))


class DottedTriangulation:
    """Ideal triangulation with a chart word and a dotted corner per triangle.

    triangles: iterable of (id, word) / (id, word, dot) tuples or dicts
        {"id":, "word":, "dot":}.  Ids must be non-negative ints (they end
        up as the T-tag inside VarId sort keys).  Words are reduced words
        of w0; the dot defaults to corner 0.
    gluings: ((Ta,pa),(Tb,pb)) or ((Ta,pa),(Tb,pb),name) -- the side listed
        first is the one that keeps the edge variables.
    boundary: (T,p) or (T,p,name).

    Every side must be covered exactly once by gluings+boundary, and a
    gluing may not identify two sides of the same triangle.
    """

    def __init__(self, lt, triangles, gluings, boundary=()):
        self.rd = lt if isinstance(lt, RootDatum) else RootDatum(lt)
        self.rep = NaturalRep(self.rd)

        self.ids = []
        self._words = {}
        self._dots = {}
        for tr in triangles:
            if isinstance(tr, dict):
                tid, word, dot = tr["id"], tr["word"], tr.get("dot", 0)
            else:
                tid, word = tr[0], tr[1]
                dot = tr[2] if len(tr) > 2 else 0
            if not isinstance(tid, int) or tid < 0:
                raise ValueError("triangle ids must be non-negative ints, "
                                 "got %r" % (tid,))
            if tid in self._words:
                raise ValueError("duplicate triangle id %r" % (tid,))
            if not isinstance(word, ReducedWord):
                word = ReducedWord(self.rd, word)
            if self.rd.word_elt(word.letters) != self.rd.w0_elt():
                raise ValueError("triangle %r: word is not a reduced word "
                                 "of w0" % (tid,))
            if dot not in (0, 1, 2):
                raise ValueError("triangle %r: dot must be 0, 1 or 2" % (tid,))
            self.ids.append(tid)
            self._words[tid] = word
            self._dots[tid] = dot
        self.ids = tuple(self.ids)

        def check_side(side):
            t, p = side
            if t not in self._words:
                raise ValueError("unknown triangle %r in edge data" % (t,))
            if p not in (0, 1, 2):
                raise ValueError("side index %r out of range" % (p,))
            return (t, int(p))

        self.gluings = []   # (name, (Ta,pa), (Tb,pb))
        self.boundary = []  # (name, (T,p))
        names = set()
        for k, g in enumerate(gluings):
            g = list(g)
            name = g[2] if len(g) > 2 else "D%d" % (k + 1)
            a, b = check_side(g[0]), check_side(g[1])
            if a[0] == b[0]:
                raise ValueError("self-folded triangle at edge %r" % (name,))
            if name in names:
                raise ValueError("duplicate edge name %r" % (name,))
            names.add(name)
            self.gluings.append((name, a, b))
        for k, bd in enumerate(boundary):
            bd = list(bd)
            name = bd[2] if len(bd) > 2 else "B%d" % (k + 1)
            side = check_side((bd[0], bd[1]))
            if name in names:
                raise ValueError("duplicate edge name %r" % (name,))
            names.add(name)
            self.boundary.append((name, side))

        self._partner = {}
        self._edge_of = {}
        for name, a, b in self.gluings:
            for x, y in ((a, b), (b, a)):
                if x in self._edge_of:
                    raise ValueError("side %r glued twice" % (x,))
                self._edge_of[x] = name
                self._partner[x] = y
        for name, side in self.boundary:
            if side in self._edge_of:
                raise ValueError("side %r both glued and boundary" % (side,))
            self._edge_of[side] = name
        for tid in self.ids:
            for p in range(3):
                if (tid, p) not in self._edge_of:
                    raise ValueError("side (%r,%d) is neither glued nor "
                                     "boundary" % (tid, p))

    def word(self, tid):
        return self._words[tid]

    def dot(self, tid):
        return self._dots[tid]

    def is_closed(self):
        return not self.boundary

    def chart(self, tid):
        return GSChart(self.rep, self._words[tid], triangle=tid)

    def partner(self, tid, p):
        """The glued (triangle, side) across from (tid, p), or None."""
        return self._partner.get((tid, p))

    def edge_name(self, tid, p):
        return self._edge_of[tid, p]

    def edge_names(self):
        return [name for name, _, _ in self.gluings] + \
               [name for name, _ in self.boundary]

    # -- the frozen coordinate of degree -alpha_s carried by a side --------

    def side_coord(self, tid, p, s):
        e = (p - self._dots[tid]) % 3
        if e == 0:
            return VarId.gs(s, 0, T=tid)
        if e == 1:
            return VarId.gs_primary(s, T=tid)
        u = self.rd.star[s]
        return VarId.gs(u, self._words[tid].n_s[u], T=tid)

    def side_vertex(self, tid, p, s):
        """Quiver vertex of the same frozen coordinate (pre-relabelling)."""
        e = (p - self._dots[tid]) % 3
        if e == 0:
            v = ("v", s, 0)
        elif e == 1:
            v = ("y", s)
        else:
            u = self.rd.star[s]
            v = ("v", u, self._words[tid].n_s[u])
        return v + ("T", tid)

    def substitution(self):
        """Chart variable -> edge variable (or 1), as Laurent polynomials."""
        sub = {}

        def put(var, value):
            assert var not in sub, var
            sub[var] = value

        for name, (ta, pa), (tb, pb) in self.gluings:
            for s in self.rd.S:
                put(self.side_coord(ta, pa, s),
                    LaurentPoly.var(VarId.edge(s, name)))
                put(self.side_coord(tb, pb, self.rd.star[s]),
                    LaurentPoly.const(1))
        for name, (t, p) in self.boundary:
            for s in self.rd.S:
                put(self.side_coord(t, p, s),
                    LaurentPoly.var(VarId.edge(s, name)))
        return sub

    def to_json(self):
        return {
            "type": str(self.rd.type),
            "triangles": [{"id": t, "word": list(self._words[t].letters),
                           "dot": self._dots[t]} for t in self.ids],
            "gluings": [[list(a), list(b), name]
                        for name, a, b in self.gluings],
            "boundary": [[side[0], side[1], name]
                         for name, side in self.boundary],
        }

    @staticmethod
    def from_json(obj, lt=None):
        if isinstance(obj, str):
            obj = json.loads(obj)
        lt = obj.get("type", lt)
        if lt is None:
            raise ValueError("no Lie type in the surface data")
        return DottedTriangulation(
            lt,
            [(tr["id"], tr["word"], tr.get("dot", 0))
             for tr in obj["triangles"]],
            [[tuple(g[0]), tuple(g[1])] + list(g[2:])
             for g in obj["gluings"]],
            obj.get("boundary", []))

    def __str__(self):
        return "DottedTriangulation(%s, %d triangles, %d interior, %d boundary)" \
            % (self.rd.type, len(self.ids), len(self.gluings),
               len(self.boundary))

    __repr__ = __str__


# ---------------------------------------------------------------------------
# corridors and turning data


class TurningData:
    """Per-step turning directions and chart shifts of a corridor."""

    __slots__ = ("tau", "t")

    def __init__(self, tau, t):
        self.tau = tuple(tau)
        self.t = tuple(t)

    def __eq__(self, other):
        return isinstance(other, TurningData) and \
            (self.tau, self.t) == (other.tau, other.t)

    def to_json(self):
        return {"tau": list(self.tau), "t": list(self.t)}

    def __str__(self):
        return "tau=(%s) t=(%s)" % (",".join(self.tau),
                                    ",".join(str(k) for k in self.t))

    __repr__ = __str__


def _steps(tri, corridor, closed=False):
    steps = [_as_step(st) for st in corridor]
    if not steps:
        raise ValueError("empty corridor")
    for tid, a, b in steps:
        if tid not in tri._words:
            raise ValueError("unknown triangle %r in corridor" % (tid,))
        if a not in (0, 1, 2) or b not in (0, 1, 2):
            raise ValueError("side index out of range in step %r"
                             % ((tid, a, b),))
        if a == b:
            raise ValueError("degenerate corridor step %r: a corridor "
                             "enters and leaves through different sides"
                             % ((tid, a, b),))
    pairs = list(zip(steps, steps[1:]))
    if closed:
        pairs.append((steps[-1], steps[0]))
    for (t1, _, out1), (t2, in2, _) in pairs:
        if tri.partner(t1, out1) != (t2, in2):
            raise ValueError("corridor breaks between (%r, side %d) and "
                             "(%r, side %d): sides are not glued"
                             % (t1, out1, t2, in2))
    return steps


def turning_data(tri, corridor):
    """TurningData of a corridor on a dotted triangulation."""
    tau, t = [], []
    for tid, a, b in _steps(tri, corridor):
        if (b - a) % 3 == 2:
            tau.append("L")
            cut = a
        else:
            tau.append("R")
            cut = b
        k = (cut - tri.dot(tid)) % 3
        t.append(k if k != 2 else -1)
    return TurningData(tau, t)


def reverse_corridor(corridor):
    return [(tid, b, a) for tid, a, b in
            reversed([_as_step(st) for st in corridor])]


# ---------------------------------------------------------------------------
# Wilson lines


def _subs_entry(e, sub):
    if isinstance(e, LaurentPoly):
        return e.subs(sub)
    if isinstance(e, RatFunc):
        return RatFunc(e.num.subs(sub), e.den.subs(sub))
    return e


def _fold_entry(e):
    if isinstance(e, RatFunc) and e.is_laurent():
        return e.as_laurent()
    return e


def _chart_assignment(chart, tid, assignment, need_primaries):
    if assignment is None:
        raise ValueError("point mode needs an assignment")
    try:
        a = assignment[tid]
    except (KeyError, TypeError):
        raise ValueError("no assignment for triangle %r" % (tid,))
    missing = [idx for idx in chart.indices(primaries=need_primaries)
               if idx not in a]
    if missing:
        raise ValueError("triangle %r: unassigned chart indices %s"
                         % (tid, sorted(missing)))
    return a


def _step_factor(tri, step, tau, t, assignment):
    tid = step[0]
    chart = tri.chart(tid)
    a = None
    if assignment is not None:
        a = _chart_assignment(chart, tid, assignment,
                              need_primaries=(t != 0))
    if t == 0:
        if tau == "L":
            return basic_wilson_L(chart, a)
        return basic_wilson_R(chart, a, cross_check=False)
    c = gs_to_standard(chart, a)
    c = cyclic_shift(c) if t == 1 else cyclic_shift_inv(c)
    return c.b_L() if tau == "L" else c.b_R()


def wilson_line(tri, corridor, mode="symbolic", assignment=None,
                substitute=True):
    """The matrix of a corridor's Wilson line.

    mode "symbolic": entries in the chart variables; with substitute=True
    (the default) the edge substitution of the triangulation is applied,
    so entries are Laurent polynomials in the Z[s,E].  mode "point":
    assignment = {triangle id: {(s,i): positive rational}} and entries
    are exact rationals (primaries (s,-inf) are only consulted on steps
    with a nonzero shift).
    """
    if mode not in ("symbolic", "point"):
        raise ValueError("mode must be 'symbolic' or 'point'")
    if mode == "point" and assignment is None:
        raise ValueError("point mode needs an assignment")
    steps = _steps(tri, corridor)
    td = turning_data(tri, corridor)
    out = None
    for step, tau, t in zip(steps, td.tau, td.t):
        f = _step_factor(tri, step, tau, t,
                         assignment if mode == "point" else None)
        out = f if out is None else out * f
    if mode == "symbolic" and substitute:
        sub = tri.substitution()
        out = out.map_entries(lambda e: _subs_entry(e, sub))
    return out.map_entries(_fold_entry)


def wilson_loop_trace(tri, corridor, mode="symbolic", assignment=None,
                      substitute=True):
    """Trace of a closed corridor's Wilson loop (checks closure)."""
    steps = _steps(tri, corridor, closed=True)
    return wilson_line(tri, steps, mode=mode, assignment=assignment,
                       substitute=substitute).trace()


def multiplicativity_check(tri, corridor, k, mode="symbolic",
                           assignment=None):
    """Whether the corridor's Wilson line equals the product of the Wilson
    lines of its first k and last M-k steps -- exactly, no scalar slack.

    Substitution is deferred so the split factors multiply in the raw
    chart variables.
    """
    steps = _steps(tri, corridor)
    if not 0 <= k <= len(steps):
        raise ValueError("split index out of range")
    whole = wilson_line(tri, steps, mode=mode, assignment=assignment,
                        substitute=False)
    if k == 0 or k == len(steps):
        part = wilson_line(tri, steps, mode=mode, assignment=assignment,
                           substitute=False)
        return part == whole
    left = wilson_line(tri, steps[:k], mode=mode, assignment=assignment,
                       substitute=False)
    right = wilson_line(tri, steps[k:], mode=mode, assignment=assignment,
                        substitute=False)
    return left * right == whole


def random_surface_point(tri, rng, hi=4):
    """Per-triangle positive rational chart point (exact torus powers)."""
    from .conf3 import random_gs_point
    return {tid: random_gs_point(tri.chart(tid), rng, hi=hi)
            for tid in tri.ids}


# ---------------------------------------------------------------------------
# stock surfaces; each returns (triangulation, corridors dict)


def _words_for(lt, ids, words):
    std = longest_word_standard(lt)
    if words is None:
        return {tid: std for tid in ids}
    if not isinstance(words, dict):
        words = dict(zip(ids, words))
    return {tid: words.get(tid, std) for tid in ids}


def triangle_surface(lt, word=None, dot=0):
    """One triangle, all sides boundary.  Corridors: the three peripheral
    lines past each corner; "loop_order" lists them in the order whose
    composition (with a w0-representative inserted after each factor) is
    the disk monodromy, a scalar.
    """
    w = {1: word if word is not None else longest_word_standard(lt)}
    tri = DottedTriangulation(lt, [(1, w[1], dot)], [],
                              [(1, 0, "E3"), (1, 1, "E1"), (1, 2, "E2")])
    corridors = {
        "g32": [(1, 0, 2)], "g21": [(1, 2, 1)], "g13": [(1, 1, 0)],
        # peripheral lines compose with a w0-representative after each
        # factor; in this order the circuit is the full disk monodromy
        "loop_order": ["g32", "g21", "g13"],
    }
    return tri, corridors


def quadrilateral_surface(lt, words=None, dots=(0, 1)):
    """Square with one diagonal; triangle 1 = (v0,v1,v2), 2 = (v0,v2,v3).

    Corridors: "g13" crosses the diagonal (shift-free for the default
    dots), "g21"/"g32"/"g43"/"g14" are the peripherals past v1,v2,v3,v0,
    and "loop" is the closed peripheral circuit g43,g32,g21,g14.
    """
    w = _words_for(lt, (1, 2), words)
    tri = DottedTriangulation(
        lt,
        [(1, w[1], dots[0]), (2, w[2], dots[1])],
        [((1, 2), (2, 0), "D")],
        [(1, 0, "E1"), (1, 1, "E2"), (2, 1, "E3"), (2, 2, "E4")])
    corridors = {
        "g13": [(1, 0, 2), (2, 0, 1)],
        "g21": [(1, 1, 0)],
        "g32": [(2, 1, 0), (1, 2, 1)],
        "g43": [(2, 2, 1)],
        "g14": [(1, 0, 2), (2, 0, 2)],
    }
    corridors["loop_order"] = ["g43", "g32", "g21", "g14"]
    return tri, corridors


def hexagon_surface(lt, words=None):
    """Hexagon cut by three diagonals into a fan of four triangles.

    The "main" corridor runs Ein -> Eout with turning pattern (L,R,L,R)
    and no chart shifts, so it stays fully symbolic at any rank.
    """
    ids = (1, 2, 3, 4)
    w = _words_for(lt, ids, words)
    dots = {1: 0, 2: 2, 3: 1, 4: 0}
    tri = DottedTriangulation(
        lt,
        [(t, w[t], dots[t]) for t in ids],
        [((1, 2), (2, 1), "D1"), ((2, 2), (3, 1), "D2"),
         ((3, 0), (4, 2), "D3")],
        [(1, 0, "Ein"), (1, 1, "S1"), (2, 0, "S2"),
         (3, 2, "S3"), (4, 0, "Eout"), (4, 1, "S4")])
    corridors = {"main": [(1, 0, 2), (2, 1, 2), (3, 1, 0), (4, 2, 0)]}
    return tri, corridors


def annulus_surface(lt, words=None):
    """Annulus made of two triangles; the "main" corridor E0 -> E4 crosses
    four corridor cells with turning data tau=(L,L,R,R), t=(0,0,-1,1).
    """
    w = _words_for(lt, (1, 2), words)
    tri = DottedTriangulation(
        lt,
        [(1, w[1], 2), (2, w[2], 0)],
        [((1, 1), (2, 0), "E1"), ((1, 0), (2, 2), "E2")],
        [(1, 2, "E0"), (2, 1, "E4")])
    corridors = {"main": [(1, 2, 1), (2, 0, 2), (1, 0, 1), (2, 0, 1)]}
    return tri, corridors


def a1_snake_product(edges, turning):
    """Rank-1 snake-product oracle for corridor Wilson lines.

    H(z_0) T_1 H(z_1) T_2 ... T_M H(z_M), where H(z) = diag(z^1/2, z^-1/2),
    T_nu = [[1,1],[0,1]] for a left turn and [[1,0],[1,1]] for a right one,
    and z_0..z_M are the Z[s=1,E] variables of the edges the corridor
    crosses, in traversal order (entry edge, the M-1 interior crossings,
    exit edge).  With that identification the corridor's substituted
    Wilson line equals this product on the nose -- no scalar correction.
    """
    if len(edges) != len(turning) + 1:
        raise ValueError("need one more crossed edge than turning letters")

    def H(edge):
        v = edge if isinstance(edge, VarId) else VarId.edge(1, edge)
        return Mat([[LaurentPoly.monomial(1, {v: Fraction(1, 2)}),
                     LaurentPoly.const(0)],
                    [LaurentPoly.const(0),
                     LaurentPoly.monomial(1, {v: Fraction(-1, 2)})]])

    one, zero = LaurentPoly.const(1), LaurentPoly.const(0)
    T = {"L": Mat([[one, one], [zero, one]]),
         "R": Mat([[one, zero], [one, one]])}
    out = H(edges[0])
    for tau, edge in zip(turning, edges[1:]):
        out = out * T[tau] * H(edge)
    return out


def punctured_torus_surface(lt, words=None):
    """Once-punctured torus: the annulus with its two boundary sides glued.
    The "main" corridor closes up into a loop.
    """
    w = _words_for(lt, (1, 2), words)
    tri = DottedTriangulation(
        lt,
        [(1, w[1], 2), (2, w[2], 0)],
        [((1, 1), (2, 0), "E1"), ((1, 0), (2, 2), "E2"),
         ((1, 2), (2, 1), "F")],
        [])
    corridors = {"main": [(1, 2, 1), (2, 0, 2), (1, 0, 1), (2, 0, 1)]}
    return tri, corridors


# ---------------------------------------------------------------------------
# the amalgamated seed of a triangulation


def surface_seed(tri, dec=None):
    """Seed of the triangulation: per-triangle decorated seeds, disjoint
    union, then frozen-gluing along every interior edge (variables
    multiply into the edge functions).  dec optionally overrides chart
    words per triangle id.

    Glued and boundary vertices are relabelled ("E", edge, s); the final
    quiver gets the minimal frozen set.
    """
    if dec:
        tri = DottedTriangulation(
            tri.rd,
            [(t, dec.get(t, tri.word(t)), tri.dot(t)) for t in tri.ids],
            [(a, b, name) for name, a, b in tri.gluings],
            [(side[0], side[1], name) for name, side in tri.boundary])
    rd = tri.rd
    out = None
    for tid in tri.ids:
        sd = decorated_seed(rd, tri.word(tid).letters, T=tid)
        m = {v: v + ("T", tid) for v in sd.quiver.vertices}
        q0 = sd.quiver.relabel(m)
        # side coordinates are frozen by construction even when their rows
        # happen to be integral (rank-1 words have no half arrows at all)
        sides = {tri.side_vertex(tid, p, s) for p in range(3) for s in rd.S}
        q0 = WeightedQuiver(q0.vertices, q0.frozen | sides, q0.sigma, q0.d)
        sd = Seed(q0, {m[v]: x for v, x in sd.vars.items()})
        out = sd if out is None else \
            amalgamate_seed(out, sd, [], [], {}, minimal_frozen=False)

    ren = {}
    for name, (ta, pa), (tb, pb) in tri.gluings:
        F = [tri.side_vertex(ta, pa, s) for s in rd.S]
        F2 = [tri.side_vertex(tb, pb, rd.star[s]) for s in rd.S]
        out = glue_frozen_seed(out, F, F2, dict(zip(F, F2)),
                               minimal_frozen=False)
        for s, v in zip(rd.S, F):
            ren[v] = ("E", name, s)
    for name, (t, p) in tri.boundary:
        for s in rd.S:
            ren[tri.side_vertex(t, p, s)] = ("E", name, s)

    q = out.quiver.relabel(ren)
    # interior edges defrost when their rows come out integral; boundary
    # edges are coefficient variables and stay frozen no matter what
    keep = {("E", name, s) for name, _ in tri.boundary for s in rd.S}
    q = WeightedQuiver(q.vertices, q.with_minimal_frozen().frozen | keep,
                       q.sigma, q.d)
    variables = {ren.get(v, v): x for v, x in out.vars.items()}
    return Seed(q, variables)
