"""Exact multivariate Laurent polynomials with rational exponents over Q.

Variables are structured ids (VarId) so that cluster coordinates like
X[s=2,i=0,T=1] sort and serialize canonically.  Exponents are exact
rationals, stored internally with a per-polynomial common denominator so
that term keys stay tuples of integers.  RatFunc is the fraction field;
it never computes polynomial gcds -- denominators are only reduced by
content (rational factor times a monomial), and equality is decided by
cross-multiplication.
"""

from fractions import Fraction


# ---------------------------------------------------------------------------
# variable ids


class VarId:
    """Structured variable id with a fixed, documented total order.

    Kinds:
      gs   X[s=..,i=..]  (optionally T=..)   cluster coordinate
      gsp  X[s=..,i=-inf] (optionally T=..)  primary coordinate
      cw   c[s=..,i=..]                      coweight-parametrization variable
      lus  t[k=..]                           factorization parameter
      gen  arbitrary name                    everything else (edge vars etc.)

    Sort order: gs/gsp grouped by (T, s, i) with i=-inf before i=0; then cw
    by (s, i); then lus by k; then gen by name.  This order is what makes
    polynomial serialization canonical.
    """

    __slots__ = ("kind", "s", "i", "T", "k", "name", "_key")

    def __init__(self, kind, s=None, i=None, T=None, k=None, name=None):
        self.kind = kind
        self.s = s
        self.i = i
        self.T = T
        self.k = k
        self.name = name
        t = -1 if T is None else T
        if kind == "gs":
            self._key = (0, (t, s, i), "")
        elif kind == "gsp":
            self._key = (0, (t, s, -1), "")
        elif kind == "cw":
            self._key = (1, (s, i), "")
        elif kind == "lus":
            self._key = (2, (k,), "")
        elif kind == "gen":
            self._key = (3, (), name)
        else:
            raise ValueError("unknown VarId kind %r" % (kind,))

    @staticmethod
    def gs(s, i, T=None):
        if i < 0:
            raise ValueError("gs index i must be >= 0 (use gs_primary for -inf)")
        return VarId("gs", s=s, i=i, T=T)

    @staticmethod
    def gs_primary(s, T=None):
        return VarId("gsp", s=s, T=T)

    @staticmethod
    def coweight(s, i):
        return VarId("cw", s=s, i=i)

    @staticmethod
    def lusztig(k):
        return VarId("lus", k=k)

    @staticmethod
    def generic(name):
        return VarId("gen", name=str(name))

    @staticmethod
    def edge(s, edge):
        # surface edge variable; plain generic so the kind set stays closed
        return VarId("gen", name="Z[s=%d,E=%s]" % (s, edge))

    def with_triangle(self, T):
        if self.kind == "gs":
            return VarId.gs(self.s, self.i, T=T)
        if self.kind == "gsp":
            return VarId.gs_primary(self.s, T=T)
        raise ValueError("only gs/gsp variables carry a triangle tag")

    def __eq__(self, other):
        return isinstance(other, VarId) and self._key == other._key

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self._key <= other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        if self.kind in ("gs", "gsp"):
            i = "-inf" if self.kind == "gsp" else str(self.i)
            if self.T is None:
                return "X[s=%d,i=%s]" % (self.s, i)
            return "X[s=%d,i=%s,T=%s]" % (self.s, i, self.T)
        if self.kind == "cw":
            return "c[s=%d,i=%d]" % (self.s, self.i)
        if self.kind == "lus":
            return "t[k=%d]" % (self.k,)
        return self.name

    __repr__ = __str__

    def to_json(self):
        if self.kind == "gs":
            d = {"kind": "gs", "s": self.s, "i": self.i}
            if self.T is not None:
                d["T"] = self.T
            return d
        if self.kind == "gsp":
            d = {"kind": "gsp", "s": self.s}
            if self.T is not None:
                d["T"] = self.T
            return d
        if self.kind == "cw":
            return {"kind": "cw", "s": self.s, "i": self.i}
        if self.kind == "lus":
            return {"kind": "lus", "k": self.k}
        return {"kind": "gen", "name": self.name}

    @staticmethod
    def from_json(d):
        kind = d["kind"]
        if kind == "gs":
            return VarId.gs(d["s"], d["i"], T=d.get("T"))
        if kind == "gsp":
            return VarId.gs_primary(d["s"], T=d.get("T"))
        if kind == "cw":
            return VarId.coweight(d["s"], d["i"])
        if kind == "lus":
            return VarId.lusztig(d["k"])
        return VarId.generic(d["name"])

    @staticmethod
    def parse(text):
        """Parse the str() form back into a VarId."""
        text = text.strip()
        if text.startswith("X[") and text.endswith("]"):
            fields = dict(kv.split("=") for kv in text[2:-1].split(","))
            s = int(fields["s"])
            T = int(fields["T"]) if "T" in fields else None
            if fields["i"] == "-inf":
                return VarId.gs_primary(s, T=T)
            return VarId.gs(s, int(fields["i"]), T=T)
        if text.startswith("c[") and text.endswith("]"):
            fields = dict(kv.split("=") for kv in text[2:-1].split(","))
            return VarId.coweight(int(fields["s"]), int(fields["i"]))
        if text.startswith("t[") and text.endswith("]"):
            fields = dict(kv.split("=") for kv in text[2:-1].split(","))
            return VarId.lusztig(int(fields["k"]))
        return VarId.generic(text)


# ---------------------------------------------------------------------------
# integer helpers


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _lcm(a, b):
    return a * b // _gcd(a, b)


def nth_root_exact(n, k):
    """Exact integer k-th root of n >= 0, or None if n is not a perfect power."""
    if n < 0:
        return None
    if n in (0, 1) or k == 1:
        return n
    lo, hi = 0, 1 << (n.bit_length() // k + 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


def fraction_root(r, k):
    """Exact k-th root of a positive Fraction, or None."""
    a = nth_root_exact(r.numerator, k)
    b = nth_root_exact(r.denominator, k)
    if a is None or b is None:
        return None
    return Fraction(a, b)


# ---------------------------------------------------------------------------
# Laurent polynomials

# A term key is a tuple of (VarId, int) pairs sorted by VarId; the integer is
# the exponent numerator over the polynomial-wide denominator self.q.


class LaurentPoly:
    __slots__ = ("q", "terms")

    def __init__(self, terms=None, q=1):
        self.q = q
        self.terms = terms if terms is not None else {}
        self._normalize()

    # -- construction

    @staticmethod
    def const(c):
        c = Fraction(c)
        if c == 0:
            return LaurentPoly({}, 1)
        return LaurentPoly({(): c}, 1)

    @staticmethod
    def var(v, exp=1):
        return LaurentPoly.monomial(1, {v: Fraction(exp)})

    @staticmethod
    def monomial(coeff, exps):
        coeff = Fraction(coeff)
        if coeff == 0:
            return LaurentPoly({}, 1)
        q = 1
        for e in exps.values():
            q = _lcm(q, Fraction(e).denominator)
        key = tuple(sorted(((v, int(Fraction(e) * q)) for v, e in exps.items()
                            if e != 0), key=lambda p: p[0]))
        return LaurentPoly({key: coeff}, q)

    def _normalize(self):
        dead = [k for k, c in self.terms.items() if c == 0]
        for k in dead:
            del self.terms[k]
        if not self.terms:
            self.q = 1
            return
        g = self.q
        for key in self.terms:
            for _, n in key:
                g = _gcd(g, n)
                if g == 1:
                    break
            if g == 1:
                break
        if g > 1:
            self.terms = {
                tuple((v, n // g) for v, n in key): c
                for key, c in self.terms.items()
            }
            self.q //= g

    # -- predicates / views

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def const_value(self):
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        raise ValueError("not a constant polynomial")

    def as_monomial(self):
        """Return (coeff, {var: Fraction exponent}); raises if not a monomial."""
        if len(self.terms) != 1:
            raise ValueError("not a monomial")
        (key, c), = self.terms.items()
        return c, {v: Fraction(n, self.q) for v, n in key}

    def variables(self):
        out = set()
        for key in self.terms:
            for v, _ in key:
                out.add(v)
        return out

    def num_terms(self):
        return len(self.terms)

    def exponents(self, v):
        """Sorted list of exponents of v across terms (0 when absent)."""
        out = set()
        for key in self.terms:
            e = Fraction(0)
            for u, n in key:
                if u == v:
                    e = Fraction(n, self.q)
            out.add(e)
        return sorted(out)

    # -- arithmetic

    def _aligned(self, other):
        q = _lcm(self.q, other.q)
        a, b = q // self.q, q // other.q

        def scale(terms, f):
            if f == 1:
                return dict(terms)
            return {tuple((v, n * f) for v, n in key): c
                    for key, c in terms.items()}

        return q, scale(self.terms, a), scale(other.terms, b)

    def __add__(self, other):
        other = as_poly(other)
        if isinstance(other, RatFunc):
            return RatFunc(self) + other
        q, ta, tb = self._aligned(other)
        for key, c in tb.items():
            ta[key] = ta.get(key, Fraction(0)) + c
        return LaurentPoly(ta, q)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()}, self.q)

    def __sub__(self, other):
        return self + (-as_poly(other))

    def __rsub__(self, other):
        return as_poly(other) + (-self)

    def __mul__(self, other):
        other = as_poly(other)
        if isinstance(other, RatFunc):
            return RatFunc(self) * other
        q, ta, tb = self._aligned(other)
        out = {}
        for ka, ca in ta.items():
            da = dict(ka)
            for kb, cb in tb.items():
                d = dict(da)
                for v, n in kb:
                    m = d.get(v, 0) + n
                    if m:
                        d[v] = m
                    elif v in d:
                        del d[v]
                key = tuple(sorted(d.items(), key=lambda p: p[0]))
                c = out.get(key)
                out[key] = ca * cb if c is None else c + ca * cb
        return LaurentPoly(out, q)

    __rmul__ = __mul__

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            c, exps = self.as_monomial()  # only monomials are invertible
            return LaurentPoly.monomial(Fraction(1) / c,
                                        {v: e * n for v, e in exps.items()})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other):
        other = as_poly(other)
        if isinstance(other, RatFunc):
            return RatFunc(self) / other
        if other.is_monomial():
            return self * other ** -1
        return RatFunc(self, other)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return other == self
        try:
            other = as_poly(other)
        except TypeError:
            return NotImplemented
        return self.q == other.q and self.terms == other.terms

    def __hash__(self):
        return hash((self.q, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure

    def content(self):
        """(rational c, monomial exps) with self = c * X^exps * primitive part.

        The primitive part has integer coprime coefficients, positive leading
        coefficient, and exponent 0 as the minimum for every variable.
        """
        if not self.terms:
            return Fraction(0), {}
        num = 0
        den = 1
        for c in self.terms.values():
            num = _gcd(num, c.numerator)
            den = _lcm(den, c.denominator)
        c = Fraction(num, den)
        if self.terms[min(self.terms)] < 0:
            c = -c
        mins = {}
        for v in self.variables():
            m = None
            for key in self.terms:
                e = dict(key).get(v, 0)  # absent variable = exponent 0
                m = e if m is None else min(m, e)
            if m:
                mins[v] = Fraction(m, self.q)
        return c, mins

    def primitive_part(self):
        c, mins = self.content()
        if c == 0:
            return LaurentPoly.const(0)
        m = LaurentPoly.monomial(Fraction(1) / c,
                                 {v: -e for v, e in mins.items()})
        return self * m

    def leading_coeff(self):
        if not self.terms:
            return Fraction(0)
        return self.terms[min(self.terms)]

    def subs(self, mapping):
        """Substitute variables.

        mapping: VarId -> LaurentPoly | Fraction | int.  Targets that are
        monomials (or constants) may receive any rational exponent; a
        non-monomial target requires non-negative integral exponents.
        """
        out = LaurentPoly.const(0)
        for key, c in self.terms.items():
            term = LaurentPoly.const(c)
            for v, n in key:
                e = Fraction(n, self.q)
                if v in mapping:
                    tgt = as_poly(mapping[v])
                    if tgt.is_monomial():
                        tc, texp = tgt.as_monomial()
                        if e.denominator == 1:
                            term = term * LaurentPoly.monomial(
                                tc ** int(e),
                                {u: te * e for u, te in texp.items()})
                        else:
                            root = fraction_root(tc, e.denominator)
                            if root is None:
                                raise ValueError(
                                    "cannot raise coefficient %s to power %s"
                                    % (tc, e))
                            term = term * LaurentPoly.monomial(
                                root ** e.numerator,
                                {u: te * e for u, te in texp.items()})
                    else:
                        if e.denominator != 1 or e < 0:
                            raise ValueError(
                                "substituting non-monomial into exponent %s" % e)
                        term = term * tgt ** int(e)
                else:
                    term = term * LaurentPoly.var(v, e)
            out = out + term
        return out

    def eval_positive(self, assignment):
        """Exact evaluation at positive rationals.

        Fractional exponents require the assigned value to be a perfect power
        of the needed degree; otherwise ValueError.
        """
        total = Fraction(0)
        for key, c in self.terms.items():
            val = c
            for v, n in key:
                if v not in assignment:
                    raise ValueError("no value assigned to %s" % v)
                x = Fraction(assignment[v])
                if x <= 0:
                    raise ValueError("value for %s must be positive" % v)
                e = Fraction(n, self.q)
                if e.denominator == 1:
                    val *= x ** int(e)
                else:
                    root = fraction_root(x, e.denominator)
                    if root is None:
                        raise ValueError(
                            "%s = %s is not a perfect %d-th power"
                            % (v, x, e.denominator))
                    val *= root ** e.numerator
            total += val
        return total

    # -- printing / serialization

    def _fmt_exp(self, n):
        e = Fraction(n, self.q)
        if e == 1:
            return ""
        if e.denominator == 1:
            return "^%d" % int(e)
        return "^(%s)" % e

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            factors = [str(v) + self._fmt_exp(n) for v, n in key]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = str(abs(c)) + "*" + "*".join(factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    __repr__ = __str__

    def to_json(self):
        terms = []
        for key in sorted(self.terms):
            mono = [[v.to_json(), str(Fraction(n, self.q))] for v, n in key]
            terms.append({"c": str(self.terms[key]), "m": mono})
        return {"terms": terms}

    @staticmethod
    def from_json(d):
        out = LaurentPoly.const(0)
        for t in d["terms"]:
            exps = {VarId.from_json(vj): Fraction(e) for vj, e in t["m"]}
            out = out + LaurentPoly.monomial(Fraction(t["c"]), exps)
        return out


def as_poly(x):
    if isinstance(x, (LaurentPoly, RatFunc)):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError("cannot coerce %r to LaurentPoly" % (x,))


def monomial_pow(p, e):
    """p**e for a monomial p and rational exponent e.

    The coefficient must admit an exact e-th power (it always does when the
    coefficient is 1, which is the only case arising from H^s monomials).
    """
    e = Fraction(e)
    c, exps = as_poly(p).as_monomial()
    if c == 1:
        ce = Fraction(1)
    elif e.denominator == 1:
        ce = c ** e.numerator
    else:
        if c < 0:
            raise ValueError("no exact fractional power of a negative coefficient")
        r = fraction_root(c, e.denominator)
        if r is None:
            raise ValueError("coefficient %s has no exact %d-th root" % (c, e.denominator))
        ce = r ** e.numerator
    return LaurentPoly.monomial(ce, {v: x * e for v, x in exps.items()})


def is_positive_laurent(p):
    """(ok, witness): ok iff every coefficient is a non-negative integer.

    witness lists the offending (coefficient, monomial) pairs as strings.
    """
    bad = []
    for key in sorted(p.terms):
        c = p.terms[key]
        if c < 0 or c.denominator != 1:
            mono = "*".join(str(v) + p._fmt_exp(n) for v, n in key) or "1"
            bad.append("%s * %s" % (c, mono))
    return (not bad), bad


def monomial_denominator_clear(p):
    """Factor p = m * q with m a monomial and q's exponents >= 0.

    When every variable's exponents are congruent mod 1 (the case for
    scalar-cleared matrix entries), q has integer exponents.
    """
    if p.is_zero():
        return LaurentPoly.const(1), p
    mins = {v: min(p.exponents(v)) for v in p.variables()}
    mins = {v: e for v, e in mins.items() if e != 0}
    m = LaurentPoly.monomial(1, mins)
    q = p * LaurentPoly.monomial(1, {v: -e for v, e in mins.items()})
    return m, q


# ---------------------------------------------------------------------------
# fraction field


class RatFunc:
    """Quotient of Laurent polynomials.

    Monomial denominators are folded into the numerator (so den == 1 iff the
    value is actually Laurent); otherwise the denominator is only normalized
    by content.  Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, LaurentPoly) else as_poly(num)
        den = LaurentPoly.const(1) if den is None else (
            den if isinstance(den, LaurentPoly) else as_poly(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = LaurentPoly.const(1)
        elif den.is_monomial():
            num = num * den ** -1
            den = LaurentPoly.const(1)
        else:
            c, mins = den.content()
            unit = LaurentPoly.monomial(Fraction(1) / c,
                                        {v: -e for v, e in mins.items()})
            num = num * unit
            den = den * unit
            if num == den:
                num = LaurentPoly.const(1)
                den = LaurentPoly.const(1)
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def is_laurent(self):
        return self.den == LaurentPoly.const(1)

    def as_laurent(self):
        if not self.is_laurent():
            raise ValueError("denominator %s is not a monomial" % (self.den,))
        return self.num

    def __add__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_rat(other) - self

    def __mul__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rat(other) / self

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        out = RatFunc(LaurentPoly.const(1))
        for _ in range(n):
            out = out * self
        return out

    def inv(self):
        return RatFunc(self.den, self.num)

    def __eq__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __bool__(self):
        return not self.num.is_zero()

    def eval_positive(self, assignment):
        d = self.den.eval_positive(assignment)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.eval_positive(assignment) / d

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return "(%s) / (%s)" % (self.num, self.den)

    __repr__ = __str__


def _as_rat(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (LaurentPoly, int, Fraction)):
        return RatFunc(as_poly(x))
    return NotImplemented


ZERO = LaurentPoly.const(0)
ONE = LaurentPoly.const(1)
