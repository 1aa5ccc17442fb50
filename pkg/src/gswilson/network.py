"""Planar networks whose path weights expand basic Wilson line entries.

Conventions (shared by every classical family):

* The network lives on ``dim V`` horizontal rails, one per basis vector of
  the natural representation.  Rail 1 carries the highest weight vector and
  is drawn at the *bottom*; rails are oriented from east to west, and so are
  the paths.
* An L-network (for b_L) has downward verticals, one bundle per letter of
  the reduced word, ordered west->east by word position; its transfer
  matrices read  h2_bar * x_{s_1}(t_1) ... x_{s_N}(t_N)  off the picture.
  An R-network (for b_R) has upward verticals placed at mirrored columns
  (position k sits at column N+1-k) built from the *starred* letters, which
  is the H-left normal form  h2_bar(XX_{s*}) * y_{s*_N}(t_N) ... y_{s*_1}(t_1).
* Vertical bundles are read off the one-parameter subgroup matrices
  directly: every non-diagonal entry c*t^p of x_s(t) (resp. y_s(t)) becomes
  one directed edge with multiplier c*t_k^p.  This makes the type-B crossing
  rule ("north to south or east to west" at the long t^2 line) and the
  type-D sheet rule automatic: the t^2 jump and the sheet-skipping edges are
  single edges, never chains, and no edge ever joins rails n and n+1 in
  type D.  The only extra care is the west->east order *inside* a bundle,
  fixed below so that no two edges of one bundle can be chained.
* A path of type (alpha, beta) enters from the east on rail beta and leaves
  west on rail alpha.  Its weight is the product of the multipliers of the
  traversed verticals times a terminal factor: the diagonal entry of
  h2_bar = prod_s Hbar^s(XX_s) at the *starting* rail for an L-network and
  at the *ending* rail for an R-network (XX_{s*} on the R side).  The
  matrix entry is then  h_g * sum of path weights  with the scalar
  h_g = prod_s XX_s^{min exponent of H^s}  (= prod_s XX_s^{-C^{s,1*}}).
* Chambers are kept as labelled rectangles.  For types A and C they give a
  second, independent weight computation (product of the chamber variables
  lying entirely above the path) and path_weight checks the two agree; for
  B (half chambers) and D (two sheets) they are rendering annotations only.

The module never touches the matrix route at import time; expansion_check
imports conf3 lazily so the two computations stay independent oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .laurent import LaurentPoly, VarId, monomial_pow
from .lie import LieType, ReducedWord, natural_rep

_T = VarId.generic("t")


def _one():
    return LaurentPoly.const(1)


# ---------------------------------------------------------------------------
# building blocks


@dataclass(frozen=True)
class Vertical:
    key: tuple            # (segment, column, slot): global west->east order
    x: Fraction           # rendering column (within the segment grid)
    src: int              # rail the path comes from (1-based)
    dst: int              # rail the path moves to
    mult: LaurentPoly     # monomial multiplier c * t_k^p
    label: str            # "l3", "l'3", "l''3" style, for diagrams
    seg: int = 0

    def __repr__(self):
        return "Vertical(%s: %d->%d, %s)" % (self.label, self.src, self.dst,
                                             self.mult)


@dataclass(frozen=True)
class Chamber:
    lo: int               # band rails (lo, hi), lo < hi
    hi: int
    west: object          # Fraction or None (unbounded)
    east: object
    value: LaurentPoly    # X_{s,i}, 2*X_{n,i} or the scalar 1/2
    label: str
    sheet: str = ""       # "f"/"b" for type D middle bands, "" otherwise
    seg: int = 0
    checked: bool = True  # participates in the chamber-product cross-check


@dataclass
class Segment:
    side: str                     # "L" or "R"
    word: ReducedWord
    tag: object                   # triangle tag for the GS variables
    terminal: list                # rail (1-based) -> diagonal of h2_bar
    scalar: LaurentPoly           # h_g of this segment
    width: int                    # number of columns occupied


@dataclass
class Network:
    lt: LieType
    dim: int
    segments: list
    verticals: list               # Vertical, sorted west->east
    chambers: list
    closed: bool = False

    @property
    def scalar(self):
        out = _one()
        for seg in self.segments:
            out = out * seg.scalar
        return out

    def substitute(self, mapping):
        """New network with variables substituted in every multiplier."""
        segs = [Segment(s.side, s.word, s.tag,
                        [None] + [t.subs(mapping) for t in s.terminal[1:]],
                        s.scalar.subs(mapping), s.width)
                for s in self.segments]
        vs = [Vertical(v.key, v.x, v.src, v.dst, v.mult.subs(mapping),
                       v.label, v.seg) for v in self.verticals]
        ch = [Chamber(c.lo, c.hi, c.west, c.east, c.value.subs(mapping),
                      c.label, c.sheet, c.seg, c.checked)
              for c in self.chambers]
        return Network(self.lt, self.dim, segs, vs, ch, self.closed)


@dataclass(frozen=True)
class NetPath:
    alpha: int
    beta: int
    verticals: tuple      # traversal order, east -> west

    def __str__(self):
        hops = " ".join("%s(%d->%d)" % (v.label, v.src, v.dst)
                        for v in self.verticals)
        return "P[%d,%d]: %s" % (self.alpha, self.beta, hops or "straight")


# ---------------------------------------------------------------------------
# basic networks


def _gs_var(s, i, tag):
    return LaurentPoly.var(VarId.gs(s, i, tag))


def _t_monomials(word, tag):
    """Position k -> t_k = X_{s,0} ... X_{s,i-1} (i-th occurrence of s)."""
    pref = {s: _gs_var(s, 0, tag) for s in word.rd.S}
    out = {}
    for pos, (s, i) in enumerate(word.occ, start=1):
        out[pos] = pref[s]
        pref[s] = pref[s] * _gs_var(s, i, tag)
    return out


def _xx_monomials(word, tag):
    out = {}
    for s in word.rd.S:
        v = _gs_var(s, 0, tag)
        for i in range(1, word.n_s[s] + 1):
            v = v * _gs_var(s, i, tag)
        out[s] = v
    return out


def _letter_edges(rep, s, side):
    """(src, dst, coeff, power) for the verticals of one letter.

    Read off the symbolic one-parameter subgroup so the per-type tables
    (mirror pairs for B/C/D, the 2t and t^2 lines of B_n) cannot drift from
    the representation matrices.
    """
    t = LaurentPoly.var(_T)
    g = rep.x(s, t) if side == "L" else rep.y(s, t)
    out = []
    for i in range(rep.dim):
        for j in range(rep.dim):
            if i == j:
                continue
            p = g.rows[i][j]
            if isinstance(p, LaurentPoly) and p:
                c, exps = p.as_monomial()
                out.append((j + 1, i + 1, int(c), int(exps.get(_T, 0))))
    # Order within the bundle, west -> east.  The rule has one job: make it
    # impossible to traverse two edges of the same bundle in a row, so the
    # bundle's transfer matrix is exactly x_s(t) / y_s(t).  Downward bundles
    # (L) put the upper pair west of the lower pair; upward bundles (R) the
    # other way around; the long t^2 edge of B_n goes east (L) / west (R).
    if side == "L":
        out.sort(key=lambda e: (-e[1], e[3]))
    else:
        out.sort(key=lambda e: (e[0], -e[3]))
    # Paths run east->west, so a chain inside the bundle would take an
    # eastern edge v and then a western edge u with u.src == v.dst.
    for a, u in enumerate(out):
        for v in out[a + 1:]:
            assert u[0] != v[1], "bundle order would create a chain"
    return out


def _edge_marks(edges):
    """Prime marks: '' t^2-edge, unprimed the lowest single step."""
    singles = sorted((e for e in edges if e[3] == 1),
                     key=lambda e: min(e[0], e[1]))
    marks = {}
    for pos, e in enumerate(singles):
        marks[e] = "'" * pos
    for e in edges:
        if e[3] == 2:
            marks[e] = "''"
    return marks


def _bundle(rep, word, side, tag, seg=0):
    """All verticals of one basic network, sorted west->east."""
    tmon = _t_monomials(word, tag)
    star = rep.rd.star
    n = len(word.letters)
    vs = []
    for pos, s in enumerate(word.letters, start=1):
        letter = s if side == "L" else star[s]
        col = pos if side == "L" else n + 1 - pos
        edges = _letter_edges(rep, letter, side)
        marks = _edge_marks(edges)
        for slot, e in enumerate(edges):
            src, dst, c, p = e
            mult = tmon[pos] ** p
            if c != 1:
                mult = mult * c
            # Rail-disjoint pairs share the column (chamber bounds are at
            # integer columns); only the 3-edge bundle of B_n spreads out.
            x = Fraction(col) + (Fraction(slot - 1, 3)
                                 if len(edges) == 3 else Fraction(0))
            vs.append(Vertical((seg, col, slot), x, src, dst, mult,
                               "l%s%d" % (marks[e], pos), seg))
    vs.sort(key=lambda v: v.key)
    return vs


def _terminals(rep, word, side, tag):
    """Rail -> diagonal entry of h2_bar (XX_{s*} on the R side)."""
    xx = _xx_monomials(word, tag)
    star = rep.rd.star
    out = [None]
    for a in range(rep.dim):
        v = _one()
        for s in rep.rd.S:
            e = rep.Hbar_exps[s][a]
            assert e == int(e) >= 0
            if e:
                base = xx[s] if side == "L" else xx[star[s]]
                v = v * base ** int(e)
        out.append(v)
    return out


def _scalar(rep, word, side, tag):
    xx = _xx_monomials(word, tag)
    star = rep.rd.star
    out = _one()
    for s in rep.rd.S:
        base = xx[s] if side == "L" else xx[star[s]]
        out = out * monomial_pow(base, rep.H_scalar_exp[s])
    return out


def _col(word, side, pos):
    return Fraction(pos if side == "L" else len(word.letters) + 1 - pos)


def _band_bounds(word, side, s, i, shift=Fraction(0)):
    """(west, east) column bounds of the chamber X_{s,i} in its band."""
    lo = word.k[s, i] if i >= 1 else None
    hi = word.k[s, i + 1] if i < word.n_s[s] else None
    if side == "L":
        west = None if lo is None else _col(word, side, lo) + shift
        east = None if hi is None else _col(word, side, hi) + shift
    else:
        west = None if hi is None else _col(word, side, hi) + shift
        east = None if lo is None else _col(word, side, lo) + shift
    return west, east


def _chambers(rep, word, side, tag, seg=0):
    lt = rep.rd.type
    n = lt.rank
    star = rep.rd.star
    out = []

    def add(s, i, lo, hi, coeff=1, sheet="", shift=Fraction(0), checked=True):
        west, east = _band_bounds(word, side, s, i, shift)
        val = _gs_var(s, i, tag)
        label = "X[%d,%d]" % (s, i)
        if coeff != 1:
            val = val * coeff
            label = "2" + label
        out.append(Chamber(lo, hi, west, east, val, label, sheet, seg,
                           checked))

    if lt.family == "A":
        for s in rep.rd.S:
            band = s if side == "L" else star[s]
            for i in range(word.n_s[s] + 1):
                add(s, i, band, band + 1)
    elif lt.family == "C":
        for s in rep.rd.S:
            for i in range(word.n_s[s] + 1):
                if s < n:
                    add(s, i, s, s + 1)
                    add(s, i, 2 * n - s, 2 * n + 1 - s)
                else:
                    add(s, i, n, n + 1)
    elif lt.family == "B":
        # Rendering annotations; the edge-multiplier weights reconcile with
        # these via the 1/2 chambers, so they are excluded from the check.
        third = Fraction(1, 3) if side == "L" else -Fraction(1, 3)
        for s in rep.rd.S:
            for i in range(word.n_s[s] + 1):
                if s < n:
                    add(s, i, s, s + 1, checked=False)
                    add(s, i, 2 * n + 1 - s, 2 * n + 2 - s, checked=False)
                    continue
                lo1, hi1 = (n, n + 1) if side == "L" else (n + 1, n + 2)
                lo2, hi2 = (n + 1, n + 2) if side == "L" else (n, n + 1)
                add(s, i, lo1, hi1, shift=third, checked=False)
                add(s, i, lo2, hi2, coeff=2, shift=-third, checked=False)
        for i in range(1, word.n_s[n] + 1):
            c = _col(word, side, word.k[n, i])
            west, east = sorted((c - Fraction(1, 3), c + Fraction(1, 3)))
            lo = n + 1 if side == "L" else n
            out.append(Chamber(lo, lo + 1, west, east,
                               LaurentPoly.const(Fraction(1, 2)), "1/2",
                               "", seg, False))
    elif lt.family == "D":
        for s in rep.rd.S:
            sv = s if side == "L" else star[s]
            for i in range(word.n_s[s] + 1):
                if s <= n - 2:
                    add(s, i, s, s + 1, checked=False)
                    add(s, i, 2 * n - s, 2 * n + 1 - s, checked=False)
                elif sv == n - 1:
                    add(s, i, n - 1, n, sheet="f", checked=False)
                    add(s, i, n + 1, n + 2, sheet="b", checked=False)
                else:
                    add(s, i, n, n + 2, sheet="f", checked=False)
                    add(s, i, n - 1, n + 1, sheet="b", checked=False)
    return out


def basic_network(lt, word, side="L", tag=None, seg=0):
    """The basic network N_L/N_R of a reduced word of w0."""
    if side not in ("L", "R"):
        raise ValueError("side must be 'L' or 'R'")
    if not isinstance(lt, LieType):
        lt = LieType.parse(lt)
    rep = natural_rep(lt)
    if not isinstance(word, ReducedWord):
        word = ReducedWord(rep.rd, word)
    if rep.rd.word_elt(word.letters) != rep.rd.w0_elt():
        raise ValueError("networks need a reduced word of w0")
    segment = Segment(side, word, tag, _terminals(rep, word, side, tag),
                      _scalar(rep, word, side, tag), len(word.letters))
    return Network(lt, rep.dim, [segment],
                   _bundle(rep, word, side, tag, seg),
                   _chambers(rep, word, side, tag, seg))


# ---------------------------------------------------------------------------
# paths


def enumerate_paths(net, alpha=None, beta=None):
    """All network paths, DFS order (shorter continuations first)."""
    order = list(reversed(net.verticals))        # traversal is east -> west
    out = []

    def go(rail, start, acc, b):
        if alpha is None or rail == alpha:
            out.append(NetPath(rail, b, tuple(acc)))
        for idx in range(start, len(order)):
            v = order[idx]
            if v.src == rail:
                acc.append(v)
                go(v.dst, idx + 1, acc, b)
                acc.pop()

    for b in ([beta] if beta is not None else range(1, net.dim + 1)):
        go(b, 0, [], b)
    return out


def enumerate_closed_paths(net):
    """Closed paths of the wrapped-around network: east and west ends glued.

    Paths are monotone westward and each vertical is used at most once, so
    the closed paths are exactly the (gamma, gamma) open paths.
    """
    out = []
    for gamma in range(1, net.dim + 1):
        out.extend(enumerate_paths(net, gamma, gamma))
    return out


def _segment_rails(net, path):
    """Per segment: (east entry rail, west exit rail) along the path."""
    m = len(net.segments)
    entry = [None] * m
    cur_seg, cur_rail = m - 1, path.beta
    entry[cur_seg] = cur_rail
    for v in path.verticals:
        while v.seg < cur_seg:
            cur_seg -= 1
            entry[cur_seg] = cur_rail
        cur_rail = v.dst
    while cur_seg > 0:
        cur_seg -= 1
        entry[cur_seg] = cur_rail
    exits = [entry[nu - 1] if nu else path.alpha for nu in range(m)]
    return list(zip(entry, exits))


def _pieces(path):
    """Westward rail profile: [(west_x, east_x, rail)], x=None unbounded."""
    xs = [v.x for v in path.verticals]
    rails = [path.beta] + [v.dst for v in path.verticals]
    bounds = [None] + xs + [None]
    return [(bounds[j + 1], bounds[j], rails[j]) for j in range(len(rails))]


def _chamber_weight(net, path):
    """Product of checked chamber variables lying entirely above the path."""
    pieces = _pieces(path)
    wt = _one()
    for c in net.chambers:
        if not c.checked:
            continue
        above = True
        for west, east, rail in pieces:
            lo = c.west if (west is None or (c.west is not None
                                             and c.west > west)) else west
            hi = c.east if (east is None or (c.east is not None
                                             and c.east < east)) else east
            empty = (lo is not None and hi is not None and lo >= hi)
            if not empty and rail > c.lo:
                above = False
                break
        if above:
            wt = wt * c.value
    return wt


def path_weight(net, path, cross_check=None):
    """Edge-multiplier weight; cross-checked against chambers for A/C."""
    wt = _one()
    for v in path.verticals:
        wt = wt * v.mult
    rails = _segment_rails(net, path)
    for seg, (east_rail, west_rail) in zip(net.segments, rails):
        wt = wt * seg.terminal[east_rail if seg.side == "L" else west_rail]
    if cross_check is None:
        cross_check = (len(net.segments) == 1
                       and net.lt.family in ("A", "C"))
    if cross_check:
        cw = _chamber_weight(net, path)
        assert cw == wt, "chamber product disagrees with edge multipliers"
    return wt


def entry_poly(net, alpha, beta):
    """h_g * sum of path weights: the (alpha, beta) matrix coefficient."""
    total = LaurentPoly.const(0)
    for p in enumerate_paths(net, alpha, beta):
        total = total + path_weight(net, p)
    return net.scalar * total


def trace_poly(net):
    """Closed-network trace: h_g * sum over closed path weights."""
    total = LaurentPoly.const(0)
    for p in enumerate_closed_paths(net):
        total = total + path_weight(net, p)
    return net.scalar * total


# ---------------------------------------------------------------------------
# concatenation


def concatenate(nets, closed=False):
    """Concatenate networks west->east (factor order of the matrix product).

    Each input keeps its own variables (pass distinct tags when building) —
    gluing-induced identifications are a substitution done by the caller.
    """
    nets = list(nets)
    if not nets:
        raise ValueError("nothing to concatenate")
    lt, dim = nets[0].lt, nets[0].dim
    for n2 in nets[1:]:
        if n2.dim != dim or n2.lt != lt:
            raise ValueError("cannot concatenate networks of different type")
    segments, verticals, chambers = [], [], []
    offset = Fraction(0)
    for left_seg, net in enumerate(nets):
        if len(net.segments) != 1:
            raise ValueError("concatenate wants basic networks")
        seg = net.segments[0]
        segments.append(seg)
        for v in net.verticals:
            verticals.append(Vertical((left_seg,) + v.key[1:],
                                      v.x + offset, v.src, v.dst, v.mult,
                                      v.label, left_seg))
        for c in net.chambers:
            chambers.append(Chamber(
                c.lo, c.hi,
                None if c.west is None else c.west + offset,
                None if c.east is None else c.east + offset,
                c.value, c.label, c.sheet, left_seg, c.checked))
        offset += seg.width + 1
    verticals.sort(key=lambda v: (v.seg,) + v.key[1:])
    return Network(lt, dim, segments, verticals, chambers, closed)


# ---------------------------------------------------------------------------
# the oracle comparison


@dataclass
class EntryCheck:
    alpha: int
    beta: int
    count: int
    ok: bool


@dataclass
class ExpansionReport:
    lt: LieType
    word: tuple
    side: str
    entries: list = field(default_factory=list)

    @property
    def ok(self):
        return all(e.ok for e in self.entries)

    @property
    def n_paths(self):
        return sum(e.count for e in self.entries)

    def to_json(self):
        return {"type": str(self.lt), "word": list(self.word),
                "side": self.side, "ok": self.ok,
                "entries": [{"alpha": e.alpha, "beta": e.beta,
                             "count": e.count, "ok": e.ok}
                            for e in self.entries]}

    def __str__(self):
        bad = [e for e in self.entries if not e.ok]
        head = "%s %s N_%s: %d paths over %d entries" % (
            self.lt, list(self.word), self.side, self.n_paths,
            len(self.entries))
        if not bad:
            return head + " -- all match"
        return head + " -- MISMATCH at " + ", ".join(
            "(%d,%d)" % (e.alpha, e.beta) for e in bad)


def expansion_check(lt, word, side="L"):
    """Compare h_g * path sums against the matrix route, entry by entry."""
    from . import conf3   # lazy: keep the two oracles independent

    net = basic_network(lt, word, side)
    rep = natural_rep(net.lt)
    chart = conf3.GSChart(rep, net.segments[0].word)
    g = (conf3.basic_wilson_L(chart) if side == "L"
         else conf3.basic_wilson_R(chart, cross_check=False))
    report = ExpansionReport(net.lt, net.segments[0].word.letters, side)
    paths = {}
    for p in enumerate_paths(net):
        paths.setdefault((p.alpha, p.beta), []).append(p)
    for a in range(1, net.dim + 1):
        for b in range(1, net.dim + 1):
            ps = paths.get((a, b), [])
            total = LaurentPoly.const(0)
            for p in ps:
                total = total + path_weight(net, p)
            lhs = net.scalar * total
            rhs = g.rows[a - 1][b - 1]
            report.entries.append(EntryCheck(a, b, len(ps), lhs == rhs))
    return report


# ---------------------------------------------------------------------------
# diagrams


def _rail_label(a, side):
    return "l%s|%d>" % (side, a)


def emit_diagram(net, highlight=None, fmt="dot"):
    """Deterministic DOT or SVG rendering of a network."""
    if fmt == "dot":
        return _emit_dot(net, highlight or [])
    if fmt == "svg":
        return _emit_svg(net, highlight or [])
    raise ValueError("unsupported format %r" % (fmt,))


def _emit_dot(net, highlight):
    hi_edges = set()
    for p in highlight:
        for v in p.verticals:
            hi_edges.add(v.key)
    lines = ["digraph network {", '  rankdir="RL";',
             '  node [shape=point, width=0.05];']
    junctions = {}   # rail -> sorted x positions of incident verticals
    for v in net.verticals:
        junctions.setdefault(v.src, set()).add(v.x)
        junctions.setdefault(v.dst, set()).add(v.x)

    def node(rail, x):
        return '"r%d_%s"' % (rail, x)

    for rail in range(1, net.dim + 1):
        xs = sorted(junctions.get(rail, set()))
        chain = ['"in%d"' % rail] + [node(rail, x) for x in xs] \
            + ['"out%d"' % rail]
        lines.append('  "in%d" [shape=plaintext, label="%s"];'
                     % (rail, _rail_label(rail, "+")))
        lines.append('  "out%d" [shape=plaintext, label="%s"];'
                     % (rail, _rail_label(rail, "-")))
        for a, b in zip(chain[:-1], chain[1:]):
            lines.append("  %s -> %s [arrowhead=none];" % (b, a))
    for v in net.verticals:
        style = ', color="red", penwidth=2.0' if v.key in hi_edges else ""
        lines.append('  %s -> %s [label="%s"%s];'
                     % (node(v.src, v.x), node(v.dst, v.x), v.mult, style))
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


def _svg_panels(net):
    """Rail sets per drawing panel: two sheets for D, one otherwise."""
    if net.lt.family != "D":
        return [("", list(range(1, net.dim + 1)))]
    n = net.lt.rank
    front = [r for r in range(1, net.dim + 1) if r != n + 1]
    back = [r for r in range(1, net.dim + 1) if r != n]
    return [("front", front), ("back", back)]


def _emit_svg(net, highlight):
    UX, UY, PAD = 60, 44, 70
    xs = [v.x for v in net.verticals] or [Fraction(0)]
    xmin, xmax = min(xs) - 2, max(xs) + 2
    width = int((xmax - xmin) * UX) + 2 * PAD
    panels = _svg_panels(net)
    panel_h = (net.dim + 1) * UY
    height = panel_h * len(panels) + PAD

    def X(x):
        return PAD + float(x - xmin) * UX

    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
           'font-family="monospace" font-size="12">' % (width, height)]
    for pi, (pname, rails) in enumerate(panels):
        y0 = 20 + pi * panel_h
        ypos = {r: y0 + (len(rails) - k) * UY for k, r in enumerate(rails)}
        if pname:
            out.append('<text x="%d" y="%d">%s sheet</text>'
                       % (PAD, y0, pname))
        for r in rails:
            y = ypos[r]
            out.append('<line x1="%d" y1="%d" x2="%d" y2="%d" '
                       'stroke="black"/>' % (int(X(xmin)), y, int(X(xmax)), y))
            out.append('<text x="%d" y="%d">|%d&gt;</text>'
                       % (int(X(xmax)) + 6, y + 4, r))
        for v in net.verticals:
            if v.src not in ypos or v.dst not in ypos:
                continue
            x = X(v.x)
            out.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black" '
                       'marker-end="none"/>' % (int(x), ypos[v.src],
                                                int(x), ypos[v.dst]))
            out.append('<text x="%d" y="%d" font-size="10">%s</text>'
                       % (int(x) + 3, (ypos[v.src] + ypos[v.dst]) // 2, v.mult))
        for c in net.chambers:
            if c.sheet and c.sheet != (pname[:1] if pname else ""):
                continue
            if c.lo not in ypos or c.hi not in ypos:
                continue
            w = c.west if c.west is not None else xmin + 1
            e = c.east if c.east is not None else xmax - 1
            cx = X(Fraction(w + e) / 2)
            cy = (ypos[c.lo] + ypos[c.hi]) / 2
            out.append('<text x="%d" y="%d" fill="gray">%s</text>'
                       % (int(cx), int(cy) + 4, c.label))
        for p in highlight:
            pts = []
            rail = p.beta
            x_east = xmax
            ok = rail in ypos
            for v in p.verticals:
                if v.src not in ypos or v.dst not in ypos:
                    ok = False
                    break
                pts.append((X(x_east), ypos[rail]))
                pts.append((X(v.x), ypos[rail]))
                pts.append((X(v.x), ypos[v.dst]))
                rail, x_east = v.dst, v.x
            if not ok:
                continue
            pts.append((X(x_east), ypos[rail]))
            pts.append((X(xmin), ypos[rail]))
            path = " ".join("%d,%d" % (int(a), int(b)) for a, b in pts)
            out.append('<polyline points="%s" fill="none" stroke="red" '
                       'stroke-width="2"/>' % path)
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode()
