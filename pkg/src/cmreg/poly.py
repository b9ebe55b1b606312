"""Exact scalars, monomials, the two-block grading and sparse polynomials.

Variables come in two blocks: base variables ``y1..ym`` of coarse degree 0
and positive variables ``x1..xt`` of coarse degree 1.  Exponent tuples list
the y-block first, so the fine multidegree of a monomial is its exponent
tuple and the coarse degree is the sum of the trailing ``t`` entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

__all__ = [
    "AlgebraError",
    "QQ",
    "GF",
    "Field",
    "Scalar",
    "scalar_arith",
    "RingSpec",
    "GENERAL",
    "MULTIGRADED",
    "monomial_op",
    "mono_mul",
    "mono_div",
    "mono_divides",
    "mono_lcm",
    "mono_gcd",
    "order_compare",
    "Polynomial",
    "poly_arith",
    "degree_of",
    "NOT_HOMOGENEOUS",
    "MINUS_INF",
    "is_prime",
]


class AlgebraError(ValueError):
    """Raised on invalid algebraic requests (division by zero, mixed rings...)."""


@total_ordering
class _MinusInfinity:
    """The sentinel sup of the empty set.  Compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("minus_infinity")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self

    def __repr__(self):
        return "-inf"

    def __reduce__(self):
        return (_MinusInfinity, ())


MINUS_INF = _MinusInfinity()


class _NotHomogeneous:
    def __repr__(self):
        return "NOT_HOMOGENEOUS"


NOT_HOMOGENEOUS = _NotHomogeneous()


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------- fields

class Field:
    """Coefficient field.  Elements are plain Python values (Fraction or int)."""

    char: int

    def __call__(self, x):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("field", self.char))


class _Rationals(Field):
    char = 0
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        return Fraction(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise AlgebraError("division by zero")
        return 1 / a

    @staticmethod
    def div(a, b):
        if b == 0:
            raise AlgebraError("division by zero")
        return a / b

    @staticmethod
    def power(a, e):
        return a ** e

    @staticmethod
    def render(a):
        return str(a)


class _PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise AlgebraError(f"{p} is not prime")
        self.char = p
        self.name = f"Fp({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, x):
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.char)) % self.char
        return int(x) % self.char

    def add(self, a, b):
        return (a + b) % self.char

    def sub(self, a, b):
        return (a - b) % self.char

    def mul(self, a, b):
        return (a * b) % self.char

    def neg(self, a):
        return (-a) % self.char

    def inv(self, a):
        if a % self.char == 0:
            raise AlgebraError("division by zero")
        return pow(a, -1, self.char)

    def div(self, a, b):
        return (a * self.inv(b)) % self.char

    def power(self, a, e):
        return pow(a, e, self.char)

    @staticmethod
    def render(a):
        return str(a)


QQ = _Rationals()
_prime_fields: dict[int, _PrimeField] = {}


def GF(p: int) -> Field:
    """The prime field with ``p`` elements (cached per ``p``)."""
    if p not in _prime_fields:
        _prime_fields[p] = _PrimeField(p)
    return _prime_fields[p]


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field; arithmetic refuses mixed fields."""

    value: object
    field: Field

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _check(self, other):
        if not isinstance(other, Scalar):
            return Scalar(other, self.field)
        if other.field != self.field:
            raise AlgebraError(f"mixed fields {self.field} and {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.field.add(self.value, other.value), self.field)

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.field.mul(self.value, other.value), self.field)

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def __sub__(self, other):
        return self + (-self._check(other))

    def inverse(self):
        return Scalar(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def is_zero(self):
        return self.value == 0

    def __repr__(self):
        return self.field.render(self.value)


def scalar_arith(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    """Apply ``op`` in {add, mul, inv, neg}.  Unary ops act on ``b`` if given, else ``a``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -(a if b is None else b)
    if op == "inv":
        return (a if b is None else b).inverse()
    raise AlgebraError(f"unknown scalar op {op!r}")


# ---------------------------------------------------------------- rings

GENERAL = "GENERAL"
MULTIGRADED = "MULTIGRADED"


@dataclass(frozen=True)
class RingSpec:
    """The ambient ring k[y1..ym][x1..xt].

    ``t = 0`` is accepted for internal base-ring computations over k[y];
    scripts may declare only base variables.
    """

    field: Field
    m: int
    t: int
    order: str = "grevlex"
    regime: str = ""
    ynames: tuple = ()
    xnames: tuple = ()
    _key: object = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.m < 0 or self.t < 0:
            raise AlgebraError("variable counts must be non-negative")
        regime = self.regime or (GENERAL if self.m == 0 else MULTIGRADED)
        if regime not in (GENERAL, MULTIGRADED):
            raise AlgebraError(f"unknown regime {regime!r}")
        if self.m >= 1 and regime != MULTIGRADED:
            raise AlgebraError("base variables require the MULTIGRADED regime")
        object.__setattr__(self, "regime", regime)
        if not self.ynames:
            object.__setattr__(self, "ynames", tuple(f"y{i + 1}" for i in range(self.m)))
        if not self.xnames:
            object.__setattr__(self, "xnames", tuple(f"x{i + 1}" for i in range(self.t)))
        if len(self.ynames) != self.m or len(self.xnames) != self.t:
            raise AlgebraError("variable names do not match variable counts")
        object.__setattr__(self, "_key", _make_key(self.m, self.t, self.order))

    @property
    def n(self) -> int:
        return self.m + self.t

    @property
    def names(self) -> tuple:
        return self.ynames + self.xnames

    @property
    def multigraded(self) -> bool:
        return self.regime == MULTIGRADED

    def key(self, exp):
        """Sort key: larger key means larger monomial."""
        return self._key(exp)

    def coarse(self, exp) -> int:
        return sum(exp[self.m:])

    def one(self) -> tuple:
        return (0,) * self.n

    def var(self, i: int) -> tuple:
        e = [0] * self.n
        e[i] = 1
        return tuple(e)

    def variables(self) -> list:
        return [self.var(i) for i in range(self.n)]

    def maximal_ideal(self) -> list:
        """Generators of the *maximal ideal (y1..ym, x1..xt)."""
        return [Polynomial.monomial(self, self.var(i)) for i in range(self.n)]

    def with_order(self, order: str) -> "RingSpec":
        return RingSpec(self.field, self.m, self.t, order, self.regime, self.ynames, self.xnames)

    def base_ring(self) -> "RingSpec":
        """R0 = k[y1..ym] as a ring with no positive variables."""
        return RingSpec(self.field, self.m, 0, self.order, MULTIGRADED if self.m else GENERAL,
                        self.ynames, ())

    def render_monomial(self, exp) -> str:
        parts = []
        # x-block first: it dominates the order
        for i in list(range(self.m, self.n)) + list(range(self.m)):
            e = exp[i]
            if e == 1:
                parts.append(self.names[i])
            elif e:
                parts.append(f"{self.names[i]}^{e}")
        return "*".join(parts) if parts else "1"


def _make_key(m, t, order):
    # variable precedence x1 > .. > xt > y1 > .. > ym
    perm = list(range(m, m + t)) + list(range(m))
    if order == "grevlex":
        rev = perm[::-1]

        def key(exp):
            return (sum(exp[m:]), sum(exp)) + tuple(-exp[i] for i in rev)
    elif order == "lex":
        def key(exp):
            return tuple(exp[i] for i in perm)
    else:
        raise AlgebraError(f"unknown monomial order {order!r}")
    return key


# ---------------------------------------------------------------- monomials

def mono_mul(u, v):
    return tuple(a + b for a, b in zip(u, v))


def mono_divides(u, v) -> bool:
    """True when u divides v."""
    return all(a <= b for a, b in zip(u, v))


def mono_div(u, v):
    """u / v; requires v | u."""
    if not mono_divides(v, u):
        raise AlgebraError(f"{v} does not divide {u}")
    return tuple(a - b for a, b in zip(u, v))


def mono_lcm(u, v):
    return tuple(max(a, b) for a, b in zip(u, v))


def mono_gcd(u, v):
    return tuple(min(a, b) for a, b in zip(u, v))


_MONO_OPS = {"mul": mono_mul, "divide": mono_div, "lcm": mono_lcm, "gcd": mono_gcd,
             "divides?": mono_divides, "divides": mono_divides}


def monomial_op(u, v, op: str):
    try:
        fn = _MONO_OPS[op]
    except KeyError:
        raise AlgebraError(f"unknown monomial op {op!r}") from None
    return fn(u, v)


def order_compare(u, v, ring: RingSpec) -> str:
    ku, kv = ring.key(u), ring.key(v)
    if ku == kv:
        return "EQ"
    return "GT" if ku > kv else "LT"


# ---------------------------------------------------------------- polynomials

class Polynomial:
    """Sparse polynomial: a dict from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms=None):
        self.ring = ring
        F = ring.field
        clean = {}
        for exp, c in (terms or {}).items():
            c = F(c)
            if c != 0:
                clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {ring.one(): c})

    @classmethod
    def monomial(cls, ring, exp, c=1):
        return cls(ring, {tuple(exp): c})

    @classmethod
    def variable(cls, ring, name: str):
        return cls.monomial(ring, ring.var(ring.names.index(name)))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_term(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise AlgebraError("polynomials live in different rings")
            return other
        return Polynomial.constant(self.ring, other)

    def __add__(self, other):
        other = self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero), c)
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial._raw(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        F = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = F.add(out.get(e, F.zero), F.mul(c1, c2))
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial._raw(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        F = self.ring.field
        c = F(c)
        if c == 0:
            return Polynomial._raw(self.ring, {})
        return Polynomial._raw(self.ring, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative power")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self._check(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        """Terms in decreasing monomial order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda it: key(it[0]), reverse=True)

    def lead(self):
        """(exponent, coefficient) of the leading term."""
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading term")
        key = self.ring.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def frobenius(self, q: int) -> "Polynomial":
        """f -> f^q coefficientwise on monomials (valid as the q-th power in char p | q)."""
        F = self.ring.field
        return Polynomial._raw(self.ring, {tuple(q * a for a in e): F.power(c, q)
                                           for e, c in self.terms.items()})

    def render(self) -> str:
        if not self.terms:
            return "0"
        ring = self.ring
        F = ring.field
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            neg = F.char == 0 and c < 0
            mag = -c if neg else c
            mono = ring.render_monomial(e)
            if mono == "1":
                body = F.render(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{F.render(mag)}*{mono}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return self.render()


def poly_arith(f: Polynomial, g, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f.scale(g)
    raise AlgebraError(f"unknown polynomial op {op!r}")


def degree_of(f: Polynomial, mode: str = "coarse"):
    """Common coarse or fine degree of the terms of ``f``.

    Returns MINUS_INF for the zero polynomial and NOT_HOMOGENEOUS when the
    terms disagree.
    """
    if not f.terms:
        return MINUS_INF
    ring = f.ring
    if mode == "coarse":
        degs = {ring.coarse(e) for e in f.terms}
        return degs.pop() if len(degs) == 1 else NOT_HOMOGENEOUS
    if mode == "fine":
        return next(iter(f.terms)) if len(f.terms) == 1 else NOT_HOMOGENEOUS
    if mode == "total":
        degs = {sum(e) for e in f.terms}
        return degs.pop() if len(degs) == 1 else NOT_HOMOGENEOUS
    raise AlgebraError(f"unknown degree mode {mode!r}")
