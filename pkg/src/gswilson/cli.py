"""Batch front end: Wilson lines/loops, check suites, diagrams, quivers.

One binary, subcommands (wilson / loop / network / quiver / check / eval).
Everything is exact and deterministic: identical invocations (including
--seed) produce byte-identical stdout.  Timings go to stderr only.

Exit codes:
    0   success (for `check`: every check passed)
    1   input error -- bad flags, unparseable files, schema violations,
        words that are not reduced words of w0, unknown suites, symbolic
        shift gate exceeded
    2   math-domain error -- a needed minor vanishes (point outside the
        open cell), zero denominators, or a failing check suite
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from .lie import (LieType, RootDatum, NaturalRep, ReducedWord, DomainError,
                  longest_word_standard, natural_rep)
from .laurent import VarId, LaurentPoly, RatFunc, is_positive_laurent
from .matrix import Mat, MinorVanishes, proj_equal, monomial_clear
from . import conf3
from . import network as net_mod
from . import quiver as quiver_mod
from . import surface as surf_mod


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# ---------------------------------------------------------------------------
# job specs


# field -> (type check, allowed values or None); a JobSpec is a JSON object
# giving the same information as the flags, validated before execution.
JOB_FIELDS = {
    "command": (str, ("wilson", "loop", "network", "quiver", "check",
                      "eval")),
    "type": (str, None),
    "word": ((str, list), None),
    "words": (dict, None),
    "mode": (str, ("symbolic", "point")),
    "side": (str, ("L", "R")),
    "surface": (str, None),
    "corridor": ((str, list), None),
    "fixture": (str, ("triangle", "quadrilateral", "hexagon", "annulus",
                      "torus")),
    "corridor_name": (str, None),
    "assignment": ((str, dict), None),
    "seed": (int, None),
    "format": (str, None),
    "out": (str, None),
    "suite": (str, None),
    "no_substitute": (bool, None),
}


def validate_job(obj):
    if not isinstance(obj, dict):
        raise InputError("job spec must be a JSON object")
    for k, v in obj.items():
        if k not in JOB_FIELDS:
            raise InputError("unknown job field %r" % (k,))
        want, allowed = JOB_FIELDS[k]
        if not isinstance(v, want):
            raise InputError("job field %r: expected %s, got %r"
                             % (k, want, type(v).__name__))
        if allowed is not None and v not in allowed:
            raise InputError("job field %r: %r not in %s" % (k, v, allowed))
    return obj


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e))
    except json.JSONDecodeError as e:
        raise InputError("bad JSON in %s: %s" % (path, e))


# ---------------------------------------------------------------------------
# input parsing helpers


def _parse_word(text):
    if isinstance(text, (list, tuple)):
        return tuple(int(s) for s in text)
    text = str(text).strip()
    if "," in text:
        return tuple(int(p) for p in text.split(","))
    return tuple(int(ch) for ch in text)


def _need_type(args):
    if not args.type:
        raise InputError("--type is required here")
    try:
        return LieType.parse(args.type)
    except ValueError as e:
        raise InputError(str(e))


def _parse_fraction(v):
    if isinstance(v, int):
        return Fraction(v)
    return Fraction(str(v))


def _parse_chart_assignment(d):
    """{"X[s=1,i=0]": "3/2", ...} -> {(s,i): Fraction} (gsp -> (s,-inf))."""
    out = {}
    for key, val in d.items():
        vid = VarId.parse(key)
        if vid.kind == "gs":
            out[vid.s, vid.i] = _parse_fraction(val)
        elif vid.kind == "gsp":
            out[vid.s, conf3.MINF] = _parse_fraction(val)
        else:
            raise InputError("assignment key %r is not a chart variable"
                             % (key,))
    return out


def _parse_surface_assignment(obj):
    return {int(tid): _parse_chart_assignment(d) for tid, d in obj.items()}


def _dump_chart_assignment(a):
    out = {}
    for (s, i), v in a.items():
        vid = VarId.gs_primary(s) if i == conf3.MINF else VarId.gs(s, int(i))
        out[str(vid)] = str(v)
    return out


def _json_text(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


FIXTURES = {
    "triangle": (surf_mod.triangle_surface, "g32"),
    "quadrilateral": (surf_mod.quadrilateral_surface, "g13"),
    "hexagon": (surf_mod.hexagon_surface, "main"),
    "annulus": (surf_mod.annulus_surface, "main"),
    "torus": (surf_mod.punctured_torus_surface, "main"),
}


def _load_surface_corridor(args):
    if args.fixture:
        lt = _need_type(args)
        fn, default_cor = FIXTURES[args.fixture]
        kw = {}
        if args.word:
            w = _parse_word(args.word)
            if args.fixture == "triangle":
                kw["word"] = w
            else:
                kw["words"] = {}
                # same word on every triangle
                tri0, _ = fn(lt)
                kw["words"] = {tid: w for tid in tri0.ids}
        tri, cors = fn(lt, **kw)
        name = args.corridor_name or default_cor
        if name not in cors or name == "loop_order":
            raise InputError("fixture %r has no corridor %r (available: %s)"
                             % (args.fixture, name,
                                sorted(k for k in cors if k != "loop_order")))
        return tri, cors[name]
    if args.surface:
        obj = _load_json(args.surface)
        tri = surf_mod.DottedTriangulation.from_json(obj, lt=args.type)
        if not args.corridor:
            raise InputError("--corridor is required with --surface")
        cor = args.corridor
        if isinstance(cor, str):
            cor = _load_json(cor)
        return tri, cor
    raise InputError("need either --fixture or --surface")


def _point_assignment(args, tri):
    if args.assignment:
        obj = args.assignment
        if isinstance(obj, str):
            obj = _load_json(obj)
        return _parse_surface_assignment(obj)
    rng = random.Random(args.seed if args.seed is not None else 0)
    return surf_mod.random_surface_point(tri, rng)


def _matrix_strs(W):
    return [[str(e) for e in row] for row in W.rows]


# ---------------------------------------------------------------------------
# subcommands


def cmd_wilson(args):
    tri, corridor = _load_surface_corridor(args)
    td = surf_mod.turning_data(tri, corridor)
    mode = args.mode or "symbolic"
    assignment = None
    used = None
    if mode == "point":
        assignment = _point_assignment(args, tri)
        used = {str(t): _dump_chart_assignment(a)
                for t, a in assignment.items()}
    try:
        W = surf_mod.wilson_line(tri, corridor, mode=mode,
                                 assignment=assignment,
                                 substitute=not args.no_substitute)
    except DomainError:
        raise
    except ValueError as e:
        raise InputError(str(e))
    out = {
        "command": "wilson",
        "type": str(tri.rd.type),
        "corridor": [list(surf_mod._as_step(st)) for st in corridor],
        "turning": td.to_json(),
        "mode": mode,
        "matrix": _matrix_strs(W),
    }
    if used is not None:
        out["assignment"] = used
    if args.format == "text":
        lines = ["turning %s" % (td,)]
        lines += ["  ".join(row) for row in out["matrix"]]
        return "\n".join(lines) + "\n", 0
    return _json_text(out), 0


def cmd_loop(args):
    tri, corridor = _load_surface_corridor(args)
    mode = args.mode or "symbolic"
    assignment = None
    used = None
    if mode == "point":
        assignment = _point_assignment(args, tri)
        used = {str(t): _dump_chart_assignment(a)
                for t, a in assignment.items()}
    try:
        tr = surf_mod.wilson_loop_trace(tri, corridor, mode=mode,
                                        assignment=assignment)
    except DomainError:
        raise
    except ValueError as e:
        raise InputError(str(e))
    if isinstance(tr, RatFunc) and tr.is_laurent():
        tr = tr.as_laurent()
    out = {
        "command": "loop",
        "type": str(tri.rd.type),
        "turning": surf_mod.turning_data(tri, corridor).to_json(),
        "mode": mode,
        "trace": str(tr),
    }
    if used is not None:
        out["assignment"] = used
    if args.format == "text":
        return "trace = %s\n" % (out["trace"],), 0
    return _json_text(out), 0


def cmd_network(args):
    lt = _need_type(args)
    word = _parse_word(args.word) if args.word else \
        longest_word_standard(lt)
    side = args.side or "L"
    try:
        net = net_mod.basic_network(lt, word, side)
    except ValueError as e:
        raise InputError(str(e))
    fmt = args.format or "dot"
    if fmt in ("dot", "svg"):
        return net_mod.emit_diagram(net, fmt=fmt), 0
    if fmt == "json":
        rep = net_mod.expansion_check(lt, word, side)
        return _json_text(rep.to_json()), 0
    raise InputError("network format must be dot, svg or json")


def cmd_quiver(args):
    if args.surface or args.fixture:
        if args.fixture:
            lt = _need_type(args)
            fn, _ = FIXTURES[args.fixture]
            tri, _ = fn(lt)
        else:
            tri = surf_mod.DottedTriangulation.from_json(
                _load_json(args.surface), lt=args.type)
        seed = surf_mod.surface_seed(tri)
    else:
        lt = _need_type(args)
        rd = RootDatum(lt)
        word = _parse_word(args.word) if args.word else \
            longest_word_standard(rd).letters
        try:
            seed = quiver_mod.decorated_seed(rd, word)
        except ValueError as e:
            raise InputError(str(e))
    q = seed.quiver
    if args.format == "dot":
        return q.to_dot() + "\n", 0
    out = {
        "command": "quiver",
        "quiver": q.to_json(),
        "variables": [[str(v), str(seed.vars[v])]
                      for v in sorted(q.vertices, key=str)],
    }
    return _json_text(out), 0


def cmd_eval(args):
    lt = _need_type(args)
    word = _parse_word(args.word) if args.word else \
        longest_word_standard(lt).letters
    rep = natural_rep(lt)
    try:
        chart = conf3.GSChart(rep, word)
    except ValueError as e:
        raise InputError(str(e))
    if args.assignment:
        obj = args.assignment
        if isinstance(obj, str):
            obj = _load_json(obj)
        a = _parse_chart_assignment(obj)
    else:
        rng = random.Random(args.seed if args.seed is not None else 0)
        a = conf3.random_gs_point(chart, rng)
    missing = [idx for idx in chart.indices() if idx not in a]
    if missing:
        raise InputError("unassigned chart indices %s" % (sorted(missing),))
    side = args.side or "L"
    b = (conf3.basic_wilson_L(chart, a) if side == "L"
         else conf3.basic_wilson_R(chart, a, cross_check=False))
    out = {
        "command": "eval",
        "type": str(lt),
        "word": list(word),
        "side": side,
        "assignment": _dump_chart_assignment(a),
        "matrix": _matrix_strs(b),
    }
    if args.format == "text":
        return "\n".join("  ".join(r) for r in out["matrix"]) + "\n", 0
    return _json_text(out), 0


# ---------------------------------------------------------------------------
# check suites


def _sample_words(lt, count, seed=0):
    """The standard word plus deterministic random reduced words of w0."""
    rd = RootDatum(lt)
    std = longest_word_standard(rd).letters
    words = [tuple(std)]
    rng = random.Random(seed)
    guard = 0
    while len(words) < count and guard < 200:
        guard += 1
        w = list(std)
        # random sequence of commutation/braid-free reshuffles via the
        # Weyl group: rebuild a reduced word from a random order of
        # simple reflections (greedy descent walk)
        e = rd.w0_elt()
        out = []
        letters = list(rd.S)
        while e != rd.id_elt():
            rng.shuffle(letters)
            for s in letters:
                if rd.length(rd.mul(rd.refl(s), e)) < rd.length(e):
                    out.append(s)
                    e = rd.mul(rd.refl(s), e)
                    break
        w = tuple(out)
        if w not in words:
            words.append(w)
    return words[:count]


def _check_network(lt_name, seed=0):
    checks = []
    lt = LieType.parse(lt_name)
    for word in _sample_words(lt, 3, seed):
        for side in ("L", "R"):
            rep = net_mod.expansion_check(lt, word, side)
            checks.append(("network %s %s N_%s" % (lt, list(word), side),
                           rep.ok, "%d paths" % rep.n_paths))
    return checks


def _check_positivity(lt_name, seed=0):
    checks = []
    lt = LieType.parse(lt_name)
    rep = natural_rep(lt)
    for word in _sample_words(lt, 3, seed):
        chart = conf3.GSChart(rep, word)
        for side, g in (("L", conf3.basic_wilson_L(chart)),
                        ("R", conf3.basic_wilson_R(chart,
                                                   cross_check=False))):
            _, B = monomial_clear(g)
            bad = []
            for row in B.rows:
                for e in row:
                    okp, wit = is_positive_laurent(e)
                    if not okp:
                        bad.extend(wit)
            checks.append(("positivity %s %s b_%s" % (lt, list(word), side),
                           not bad, "; ".join(bad[:3])))
    return checks


def _check_quiver(seed=0):
    checks = []
    rng = random.Random(seed)
    okall = True
    for _ in range(25):
        n = rng.randint(2, 6)
        vs = list(range(n))
        frozen = set()
        sigma = {}
        d = {v: rng.choice((1, 1, 2)) for v in vs}
        for i in vs:
            for j in vs:
                if i < j and rng.random() < 0.5:
                    x = Fraction(rng.randint(-3, 3))
                    if x:
                        sigma[i, j] = x
                        sigma[j, i] = -x
        q = quiver_mod.WeightedQuiver(vs, frozen, sigma, d)
        k = rng.choice(vs)
        if q.mutate(k).mutate(k) != q:
            okall = False
    checks.append(("quiver mutation involution (25 random)", okall, ""))

    rd = RootDatum("A3")
    q = quiver_mod.decorated_quiver(rd, rd.longest_std)[1]
    checks.append(("decorated k(s) A3 standard word",
                   (q[1], q[2], q[3]) == (6, 4, 1), str(q)))
    qc = quiver_mod.decorated_quiver(
        RootDatum("C3"), longest_word_standard("C3").letters)[1]
    checks.append(("decorated k(s) C3 standard word",
                   (qc[1], qc[2], qc[3]) == (1, 4, 9), str(qc)))
    return checks


def _check_shift(seed=0):
    checks = []
    for tname in ("A1", "A2", "C2"):
        rep = natural_rep(LieType.parse(tname))
        chart = conf3.GSChart(rep, longest_word_standard(tname))
        rng = random.Random(seed)
        okall = True
        for _ in range(5):
            a = conf3.random_gs_point(chart, rng)
            c = conf3.gs_to_standard(chart, a)
            s3 = conf3.cyclic_shift(
                conf3.cyclic_shift(conf3.cyclic_shift(c)))
            if not s3.proj_eq(c):
                okall = False
        checks.append(("cyclic shift S3^3 = id (%s, 5 points)" % tname,
                       okall, ""))
    return checks


def _check_relations(seed=0):
    checks = []
    for tname in ("A1", "A2", "B2"):
        rep = natural_rep(LieType.parse(tname))
        wb = rep.wbar0()
        tri, cors = surf_mod.triangle_surface(tname, dot=0)
        rng = random.Random(seed)
        pt = surf_mod.random_surface_point(tri, rng)
        prod = None
        for name in cors["loop_order"]:
            f = surf_mod.wilson_line(tri, cors[name], mode="point",
                                     assignment=pt) * wb
            prod = f if prod is None else prod * f
        checks.append(("triangle disk monodromy (%s)" % tname,
                       proj_equal(prod, Mat.identity(rep.dim)), ""))

        tri, cors = surf_mod.quadrilateral_surface(tname)
        pt = surf_mod.random_surface_point(tri, rng)
        prod = None
        for name in cors["loop_order"]:
            f = surf_mod.wilson_line(tri, cors[name], mode="point",
                                     assignment=pt) * wb
            prod = f if prod is None else prod * f
        checks.append(("quadrilateral boundary relation (%s)" % tname,
                       proj_equal(prod, Mat.identity(rep.dim)), ""))

    for tname in ("A1", "A2"):
        tri, cors = surf_mod.hexagon_surface(tname)
        okh = surf_mod.multiplicativity_check(tri, cors["main"], 2)
        checks.append(("hexagon split multiplicativity symbolic (%s)"
                       % tname, okh, ""))
    tri, cors = surf_mod.hexagon_surface("A3")
    pt = surf_mod.random_surface_point(tri, random.Random(seed))
    okh = surf_mod.multiplicativity_check(tri, cors["main"], 2,
                                          mode="point", assignment=pt)
    checks.append(("hexagon split multiplicativity point (A3)", okh, ""))
    return checks


def _check_annulus(seed=0):
    checks = []
    for tname in ("A1", "A2", "B2"):
        tri, cors = surf_mod.annulus_surface(tname)
        rng = random.Random(seed)
        okall = True
        for _ in range(5):
            pt = surf_mod.random_surface_point(tri, rng)
            W = surf_mod.wilson_line(tri, cors["main"], mode="point",
                                     assignment=pt)
            if not W.trace() > 0:
                okall = False
        checks.append(("annulus 4-factor trace positive (%s, 5 points)"
                       % tname, okall, ""))

    tri, cors = surf_mod.annulus_surface("A1")
    W = surf_mod.wilson_line(tri, cors["main"])
    snake = surf_mod.a1_snake_product(
        ["E0", "E1", "E2", "E1", "E4"],
        turning=surf_mod.turning_data(tri, cors["main"]).tau)
    checks.append(("annulus A1 symbolic == L/R/H snake product",
                   W == snake, ""))
    tr = W.trace()
    okp, wit = is_positive_laurent(tr)
    checks.append(("annulus A1 symbolic trace positive Laurent",
                   okp, "; ".join(wit[:3])))
    return checks


SUITES = {
    "network": lambda args: _check_network(args.suite_arg or "A3"),
    "positivity": lambda args: _check_positivity(args.suite_arg or "C3"),
    "quiver": lambda args: _check_quiver(),
    "shift": lambda args: _check_shift(),
    "relations": lambda args: _check_relations(),
    "annulus": lambda args: _check_annulus(),
}


def _run_all(args):
    checks = []
    for name in ("network", "positivity", "quiver", "shift", "relations",
                 "annulus"):
        checks.extend(SUITES[name](args))
    return checks


def cmd_check(args):
    suite = args.suite
    if suite == "all":
        runner = _run_all
    elif suite in SUITES:
        runner = SUITES[suite]
    else:
        raise InputError("unknown suite %r (available: all, %s)"
                         % (suite, ", ".join(sorted(SUITES))))
    t0 = time.time()
    raw = []
    for item in ([] if runner is None else runner(args)):
        raw.append(item)
    checks = []
    failed = 0
    for name, okc, detail in raw:
        status = "ok" if okc else "fail"
        if not okc:
            failed += 1
        checks.append({"name": name, "status": status, "detail": detail})
        sys.stderr.write("%-60s %s\n" % (name, status))
    sys.stderr.write("suite %s: %d checks, %d failed, %.2fs\n"
                     % (suite, len(checks), failed, time.time() - t0))
    report = {
        "command": "check",
        "suite": suite,
        "checks": checks,
        "total": len(checks),
        "failed": failed,
    }
    return _json_text(report), (0 if failed == 0 else 2)


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser():
    p = _Parser(prog="gswilson",
                description="exact Wilson-line matrices in cluster "
                            "coordinates, with network and quiver tools")
    sub = p.add_subparsers(dest="command")

    def common(sp, fixture=False):
        sp.add_argument("--type", help="Lie type, e.g. A2, C3, D4")
        sp.add_argument("--word", help="reduced word of w0: '121' or '1,2,1'")
        sp.add_argument("--mode", choices=("symbolic", "point"))
        sp.add_argument("--seed", type=int,
                        help="RNG seed for sample points (default 0)")
        sp.add_argument("--format", help="json (default) / text / dot / svg")
        sp.add_argument("--out", help="write output to this file")
        sp.add_argument("--job", help="JobSpec JSON file; flags override it")
        sp.add_argument("--assignment",
                        help="JSON assignment file for point mode")
        if fixture:
            sp.add_argument("--fixture", choices=sorted(FIXTURES))
            sp.add_argument("--corridor-name", dest="corridor_name",
                            help="which corridor of the fixture")
            sp.add_argument("--surface", help="surface JSON file")
            sp.add_argument("--corridor", help="corridor JSON file")
            sp.add_argument("--no-substitute", dest="no_substitute",
                            action="store_true",
                            help="keep raw per-triangle chart variables")

    sp = sub.add_parser("wilson", help="Wilson line of a corridor")
    common(sp, fixture=True)
    sp.set_defaults(func=cmd_wilson)

    sp = sub.add_parser("loop", help="trace of a closed corridor")
    common(sp, fixture=True)
    sp.set_defaults(func=cmd_loop)

    sp = sub.add_parser("network", help="planar network diagram / report")
    common(sp)
    sp.add_argument("--side", choices=("L", "R"), help="N_L or N_R")
    sp.set_defaults(func=cmd_network)

    sp = sub.add_parser("quiver", help="decorated or surface quiver")
    common(sp, fixture=True)
    sp.set_defaults(func=cmd_quiver)

    sp = sub.add_parser("check", help="run a verification suite")
    sp.add_argument("suite", help="all / %s" % ", ".join(sorted(SUITES)))
    sp.add_argument("suite_arg", nargs="?",
                    help="optional type argument, e.g. A3")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--format")
    sp.add_argument("--out")
    sp.add_argument("--job")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("eval", help="basic Wilson matrix at a point")
    common(sp)
    sp.add_argument("--side", choices=("L", "R"))
    sp.set_defaults(func=cmd_eval)

    return p


def _merge_job(args):
    if getattr(args, "job", None):
        job = validate_job(_load_json(args.job))
        cmd = job.get("command")
        if cmd and cmd != args.command:
            raise InputError("job file is for %r, invoked as %r"
                             % (cmd, args.command))
        alias = {"corridor_name": "corridor_name"}
        for k, v in job.items():
            if k == "command":
                continue
            attr = alias.get(k, k)
            if getattr(args, attr, None) in (None, False):
                setattr(args, attr, v)
    return args


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            return 1
        for attr in ("type", "word", "mode", "seed", "format", "out",
                     "assignment", "fixture", "surface", "corridor",
                     "corridor_name", "side", "no_substitute", "job",
                     "suite_arg"):
            if not hasattr(args, attr):
                setattr(args, attr, None)
        args = _merge_job(args)
        text, rc = args.func(args)
    except InputError as e:
        sys.stderr.write("input error: %s\n" % (e,))
        return 1
    except (MinorVanishes, ZeroDivisionError, DomainError) as e:
        sys.stderr.write("math-domain error: %s\n" % (e,))
        return 2
    if args.out:
        mode = "wb" if isinstance(text, bytes) else "w"
        with open(args.out, mode) as fh:
            fh.write(text)
    elif isinstance(text, bytes):
        sys.stdout.buffer.write(text)
        sys.stdout.buffer.flush()
    else:
        sys.stdout.write(text)
    return rc


if __name__ == "__main__":
    sys.exit(main())
