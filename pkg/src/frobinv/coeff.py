"""Exact coefficient arithmetic for the three supported field kinds.

* ``PrimeField(p)`` -- integers mod a prime p.
* ``ExtensionField(p, modulus)`` -- F_{p^k} presented as F_p[a]/(modulus),
  with a user-supplied monic irreducible modulus (little-endian coefficient
  tuple, length k+1).
* ``RationalFunctionField(base, param)`` -- the simple transcendental
  extension base(t), elements stored as reduced fractions of univariate
  polynomials over the base field with monic denominator.

Every element is a :class:`FieldElement` tagging a payload with its
:class:`FieldSpec`.  Payloads are plain hashable values (ints, tuples) so the
Groebner kernel can work on them directly through the spec's raw-op methods
(``add``/``mul``/``inv``/...) without wrapper overhead.
"""

from __future__ import annotations


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------------------
# univariate polynomial helpers over a base spec
#
# representation: tuple of base payloads, little-endian, no trailing zeros;
# the zero polynomial is the empty tuple.

def _utrim_spec(base, f):
    n = len(f)
    z = base.zero
    while n and f[n - 1] == z:
        n -= 1
    return tuple(f[:n])


def _uadd(base, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = base.add(out[i], c)
    return _utrim_spec(base, out)


def _uneg(base, f):
    return tuple(base.neg(c) for c in f)


def _usub(base, f, g):
    return _uadd(base, f, _uneg(base, g))


def _umul(base, f, g):
    if not f or not g:
        return ()
    out = [base.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == base.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = base.add(out[i + j], base.mul(a, b))
    return _utrim_spec(base, out)


def _udivmod(base, f, g):
    if not g:
        raise ZeroDivisionError("univariate division by zero")
    f = list(f)
    dg = len(g) - 1
    ilc = base.inv(g[-1])
    quo = [base.zero] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        c = base.mul(f[-1], ilc)
        quo[k] = c
        for i, b in enumerate(g):
            f[k + i] = base.sub(f[k + i], base.mul(c, b))
        while f and f[-1] == base.zero:
            f.pop()
    return _utrim_spec(base, quo), _utrim_spec(base, f)


def _ugcd(base, f, g):
    while g:
        f, g = g, _udivmod(base, f, g)[1]
    return f


def _umonic(base, f):
    if not f or f[-1] == base.one:
        return tuple(f)
    ilc = base.inv(f[-1])
    return tuple(base.mul(c, ilc) for c in f)


def _ufrob(base, f):
    """f(t) ^ p = sum c_i^p t^(i p) in characteristic p."""
    if not f:
        return ()
    p = base.p
    out = [base.zero] * ((len(f) - 1) * p + 1)
    for i, c in enumerate(f):
        out[i * p] = base.frob(c)
    return _utrim_spec(base, out)


def _uconst(base, c):
    return (c,) if c != base.zero else ()


# ---------------------------------------------------------------------------
# field specs

class FieldSpec:
    """Base class; concrete specs implement raw ops on payloads."""

    kind = None

    # raw-op interface (implemented by subclasses):
    #   zero, one           -- payload constants
    #   add/sub/mul/neg/inv -- payload arithmetic
    #   frob(a)             -- a^p
    #   render(a)           -- canonical string, parseable by field_make

    def element(self, payload):
        return FieldElement(self, payload)

    def from_int(self, n):
        raise NotImplementedError

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class PrimeField(FieldSpec):
    kind = "prime"

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise FieldError("characteristic must be prime, got %r" % (p,))
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def key(self):
        return ("prime", self.p)

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(a, -1, self.p)

    def frob(self, a):
        return a  # a^p = a on the prime field

    def render(self, a):
        return str(a)

    def __repr__(self):
        return "F_%d" % self.p


class ExtensionField(FieldSpec):
    """F_{p^k} = F_p[gen]/(modulus), modulus monic irreducible of degree k."""

    kind = "extension"

    def __init__(self, p, modulus, gen="a"):
        base = PrimeField(p)
        self.p = p
        self.base = base
        mod = _utrim_spec(base, tuple(c % p for c in modulus))
        if len(mod) < 3:
            raise FieldError("extension modulus must have degree >= 2")
        if mod[-1] != 1:
            raise FieldError("extension modulus must be monic")
        self.modulus = mod
        self.degree = len(mod) - 1
        self.gen = gen
        if not self._modulus_irreducible():
            raise FieldError("extension modulus is reducible over F_%d" % p)
        self.zero = (0,) * self.degree
        self.one = tuple([1] + [0] * (self.degree - 1))

    def _modulus_irreducible(self):
        # trial division by every monic polynomial of degree 1..k//2;
        # desk-scale moduli only (the examples need F_4 and F_16)
        base, k = self.base, self.degree
        if self.p ** (k // 2 + 1) > 200000:
            raise FieldError("modulus too large for the brute irreducibility check")
        for d in range(1, k // 2 + 1):
            for code in range(self.p ** d):
                coeffs, c = [], code
                for _ in range(d):
                    coeffs.append(c % self.p)
                    c //= self.p
                cand = tuple(coeffs) + (1,)
                if not _udivmod(base, self.modulus, cand)[1]:
                    return False
        return True

    def key(self):
        return ("ext", self.p, self.modulus, self.gen)

    def _fix(self, f):
        f = tuple(f) + (0,) * (self.degree - len(f))
        return f[: self.degree]

    def from_int(self, n):
        return self._fix((n % self.p,))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = _umul(self.base, _utrim_spec(self.base, a), _utrim_spec(self.base, b))
        _, rem = _udivmod(self.base, prod, self.modulus)
        return self._fix(rem)

    def inv(self, a):
        at = _utrim_spec(self.base, a)
        if not at:
            raise ZeroDivisionError("inverse of zero in F_%d^%d" % (self.p, self.degree))
        # extended Euclid in F_p[x]
        r0, r1 = self.modulus, at
        s0, s1 = (), (self.base.one,)
        while r1:
            q, r = _udivmod(self.base, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _usub(self.base, s0, _umul(self.base, q, s1))
        ilc = self.base.inv(r0[-1])
        return self._fix(tuple(self.base.mul(c, ilc) for c in s0))

    def frob(self, a):
        return self.pow(a, self.p)

    def render(self, a):
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = self.gen if i == 1 else "%s^%d" % (self.gen, i)
                terms.append(head if c == 1 else "%d*%s" % (c, head))
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return "F_%d[%s]/(%s)" % (self.p, self.gen, self.render(self.modulus))


class RationalFunctionField(FieldSpec):
    """base(t): reduced fractions of univariate polynomials over the base."""

    kind = "rational-function"

    def __init__(self, base, param="t"):
        if not isinstance(base, (PrimeField, ExtensionField)):
            raise FieldError("rational-function base must be a finite field")
        self.base = base
        self.p = base.p
        self.param = param
        self.zero = ((), (base.one,))
        self.one = ((base.one,), (base.one,))

    def key(self):
        return ("ratfunc", self.base.key(), self.param)

    def make(self, num, den):
        base = self.base
        num = _utrim_spec(base, num)
        den = _utrim_spec(base, den)
        if not den:
            raise ZeroDivisionError("zero denominator in %s(%s)" % (base, self.param))
        if not num:
            return ((), (base.one,))
        g = _ugcd(base, num, den)
        if len(g) > 1:
            num = _udivmod(base, num, g)[0]
            den = _udivmod(base, den, g)[0]
        if den[-1] != base.one:
            ilc = base.inv(den[-1])
            num = tuple(base.mul(c, ilc) for c in num)
            den = tuple(base.mul(c, ilc) for c in den)
        return (num, den)

    def from_int(self, n):
        return self.make(_uconst(self.base, self.base.from_int(n)), (self.base.one,))

    def param_element(self):
        return ((self.base.zero, self.base.one), (self.base.one,))

    def add(self, a, b):
        (n1, d1), (n2, d2) = a, b
        base = self.base
        if d1 == d2:
            return self.make(_uadd(base, n1, n2), d1)
        num = _uadd(base, _umul(base, n1, d2), _umul(base, n2, d1))
        return self.make(num, _umul(base, d1, d2))

    def neg(self, a):
        return (_uneg(self.base, a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        (n1, d1), (n2, d2) = a, b
        base = self.base
        if not n1 or not n2:
            return self.zero
        # cross-cancel first: keeps the gcd calls on small operands
        g1 = _ugcd(base, n1, d2)
        if len(g1) > 1:
            n1 = _udivmod(base, n1, g1)[0]
            d2 = _udivmod(base, d2, g1)[0]
        g2 = _ugcd(base, n2, d1)
        if len(g2) > 1:
            n2 = _udivmod(base, n2, g2)[0]
            d1 = _udivmod(base, d1, g2)[0]
        num, den = _umul(base, n1, n2), _umul(base, d1, d2)
        if den[-1] != base.one:
            ilc = base.inv(den[-1])
            num = tuple(base.mul(c, ilc) for c in num)
            den = tuple(base.mul(c, ilc) for c in den)
        return (num, den)

    def inv(self, a):
        num, den = a
        if not num:
            raise ZeroDivisionError("inverse of zero in %s(%s)" % (self.base, self.param))
        return self.make(den, num)

    def frob(self, a):
        return (_ufrob(self.base, a[0]), _ufrob(self.base, a[1]))

    def _render_upoly(self, f):
        base = self.base
        ext = isinstance(base, ExtensionField)
        terms = []
        for i in range(len(f) - 1, -1, -1):
            c = f[i]
            if c == base.zero:
                continue
            cs = base.render(c)
            if i == 0:
                terms.append("(%s)" % cs if ext and ("+" in cs or "*" in cs) else cs)
                continue
            head = self.param if i == 1 else "%s^%d" % (self.param, i)
            if c == base.one:
                terms.append(head)
            elif ext and ("+" in cs):
                terms.append("(%s)*%s" % (cs, head))
            else:
                terms.append("%s*%s" % (cs, head))
        return "+".join(terms) if terms else "0"

    def render(self, a):
        num, den = a
        ns = self._render_upoly(num)
        if den == (self.base.one,):
            return ns
        return "(%s)/(%s)" % (ns, self._render_upoly(den))

    def __repr__(self):
        return "%r(%s)" % (self.base, self.param)


# ---------------------------------------------------------------------------
# elements

class FieldElement:
    __slots__ = ("spec", "payload")

    def __init__(self, spec, payload):
        self.spec = spec
        self.payload = payload

    def _check(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, int):
                return FieldElement(self.spec, self.spec.from_int(other))
            raise TypeError("cannot mix FieldElement with %r" % (other,))
        if self.spec != other.spec:
            raise FieldError("cross-field arithmetic rejected: %r vs %r"
                             % (self.spec, other.spec))
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.add(self.payload, other.payload))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.sub(self.payload, other.payload))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.payload, other.payload))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.payload,
                                                     self.spec.inv(other.payload)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.payload))

    def __pow__(self, n):
        return FieldElement(self.spec, self.spec.pow(self.payload, n))

    def inverse(self):
        return FieldElement(self.spec, self.spec.inv(self.payload))

    def frobenius(self, e=1):
        return field_frobenius(self, e)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.payload == self.spec.from_int(other)
        return (isinstance(other, FieldElement) and self.spec == other.spec
                and self.payload == other.payload)

    def __hash__(self):
        return hash((self.spec.key(), self.payload))

    def __bool__(self):
        return self.payload != self.spec.zero

    def __str__(self):
        return self.spec.render(self.payload)

    def __repr__(self):
        return "<%s in %r>" % (self.spec.render(self.payload), self.spec)


def field_frobenius(x, e=1):
    """x^(p^e) by repeated p-th powering."""
    if e < 0:
        raise FieldError("frobenius exponent must be nonnegative")
    a = x.payload
    for _ in range(e):
        a = x.spec.frob(a)
    return FieldElement(x.spec, a)


# ---------------------------------------------------------------------------
# literal parsing (shared tokenizer also used by the polynomial parser)

def tokenize(text):
    """Split into INT / NAME / operator tokens; raises on anything else."""
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j])))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j]))
            i = j
        elif c in "+-*/^()":
            toks.append((c, c))
            i += 1
        else:
            raise FieldError("unexpected character %r at position %d" % (c, i))
    return toks


class _ExprParser:
    """Recursive-descent + - * / ^ ( ) evaluator over caller-supplied atoms."""

    def __init__(self, toks, atom):
        self.toks = toks
        self.pos = 0
        self.atom = atom

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek()[0] is not None:
            raise FieldError("trailing input at token %d" % self.pos)
        return v

    def expr(self):
        kind, _ = self.peek()
        neg = False
        if kind in ("+", "-"):
            self.take()
            neg = kind == "-"
        v = self.term()
        if neg:
            v = -v
        while self.peek()[0] in ("+", "-"):
            op, _ = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _ = self.take()
            w = self.factor()
            v = v * w if op == "*" else v / w
        return v

    def factor(self):
        v = self.primary()
        if self.peek()[0] == "^":
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise FieldError("exponent must be an integer literal")
            v = v ** val
        return v

    def primary(self):
        kind, val = self.take()
        if kind == "int":
            return self.atom(("int", val))
        if kind == "name":
            return self.atom(("name", val))
        if kind == "(":
            v = self.expr()
            if self.take()[0] != ")":
                raise FieldError("unbalanced parenthesis")
            return v
        raise FieldError("unexpected token %r" % (val,))


def field_make(spec, literal):
    """Parse a constant literal in the spec's syntax into a FieldElement.

    Prime fields accept integers; extension fields additionally accept the
    generator name; rational-function fields accept the parameter and
    division.
    """

    def atom(tok):
        kind, val = tok
        if kind == "int":
            return FieldElement(spec, spec.from_int(val))
        if isinstance(spec, ExtensionField) and val == spec.gen:
            gen = spec._fix((0, 1))
            return FieldElement(spec, gen)
        if isinstance(spec, RationalFunctionField):
            if val == spec.param:
                return FieldElement(spec, spec.param_element())
            if isinstance(spec.base, ExtensionField) and val == spec.base.gen:
                gen = spec.base._fix((0, 1))
                return FieldElement(spec, ((gen,), (spec.base.one,)))
        raise FieldError("unknown symbol %r for field %r" % (val, spec))

    try:
        return _ExprParser(tokenize(literal), atom).parse()
    except ZeroDivisionError as exc:
        raise FieldError("in %r: %s" % (literal, exc)) from None
