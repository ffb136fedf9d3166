"""Exact scalars and the composition algebras R, C, H, O.

A :class:`Scalar` is a finite sum ``sum_m (re_m + i*im_m) * sqrt(m)`` with
``m`` square-free and rational ``re_m``, ``im_m``.  Everything downstream
(Jordan products, structure constants, PBW coefficients) lives in this field,
so there is no floating point anywhere in the package.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Union

from gmpy2 import mpq

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "sqrt",
    "as_scalar",
    "CompElement",
    "TAGS",
    "UNIT_NAMES",
    "unit_table",
    "comp_mul",
]

Number = Union[int, Fraction, "mpq", str, "Scalar"]

_Q0 = mpq(0)
_Q1 = mpq(1)


@lru_cache(maxsize=None)
def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (g, s) with n = g*g*s and s square-free."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    g, s = 1, 1
    p = 2
    m = n
    while p * p <= m:
        k = 0
        while m % p == 0:
            m //= p
            k += 1
        if k:
            g *= p ** (k // 2)
            if k % 2:
                s *= p
        p += 1 if p == 2 else 2
    return g, s * m


@lru_cache(maxsize=None)
def _radical_product(m1: int, m2: int) -> tuple[int, int]:
    # both square-free: sqrt(m1)*sqrt(m2) = g*sqrt(m1*m2/g^2)
    g = gcd(m1, m2)
    return g, (m1 // g) * (m2 // g)


@lru_cache(maxsize=None)
def _prime_factors(m: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return tuple(out)


def _q(x) -> "mpq":
    if isinstance(x, str):
        return mpq(Fraction(x))
    return mpq(x)


class Scalar:
    """Element of Q(i)[sqrt(2), sqrt(3), sqrt(5), ...].

    Stored canonically as a sorted tuple of ``(radicand, re, im)`` triples
    with no all-zero coefficient pair, so equality is structural.
    """

    __slots__ = ("_t", "_h")

    def __init__(self, value: Number = 0, imag: Number = 0):
        if isinstance(value, Scalar):
            self._t = value._t
        else:
            re, im = _q(value), _q(imag)
            self._t = ((1, re, im),) if (re or im) else ()
        self._h = None

    @classmethod
    def _raw(cls, terms: tuple) -> "Scalar":
        s = object.__new__(cls)
        s._t = terms
        s._h = None
        return s

    @classmethod
    def from_terms(cls, terms: dict) -> "Scalar":
        """Build from ``{radicand: (re, im)}``; radicands need not be square-free."""
        acc: dict[int, list] = {}
        for m, (re, im) in terms.items():
            g, s = _squarefree_split(int(m))
            slot = acc.setdefault(s, [_Q0, _Q0])
            slot[0] += _q(re) * g
            slot[1] += _q(im) * g
        return cls._raw(_canon(acc))

    # -- inspection ------------------------------------------------------
    @property
    def terms(self) -> dict[int, tuple[Fraction, Fraction]]:
        return {m: (Fraction(int(re.numerator), int(re.denominator)),
                    Fraction(int(im.numerator), int(im.denominator)))
                for m, re, im in self._t}

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_rational(self) -> bool:
        t = self._t
        return not t or (len(t) == 1 and t[0][0] == 1 and not t[0][2])

    def is_real(self) -> bool:
        return all(not im for _, _, im in self._t)

    def radicands(self) -> tuple[int, ...]:
        return tuple(m for m, _, _ in self._t)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        if not self._t:
            return Fraction(0)
        re = self._t[0][1]
        return Fraction(int(re.numerator), int(re.denominator))

    def real_part(self) -> "Scalar":
        return Scalar._raw(tuple((m, re, _Q0) for m, re, _ in self._t if re))

    def imag_part(self) -> "Scalar":
        return Scalar._raw(tuple((m, im, _Q0) for m, _, im in self._t if im))

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        a, b = self._t, other._t
        if not a:
            return other
        if not b:
            return self
        if len(a) == 1 and len(b) == 1 and a[0][0] == b[0][0]:
            m = a[0][0]
            re = a[0][1] + b[0][1]
            im = a[0][2] + b[0][2]
            return Scalar._raw(((m, re, im),) if (re or im) else ())
        acc = {m: [re, im] for m, re, im in a}
        for m, re, im in b:
            slot = acc.get(m)
            if slot is None:
                acc[m] = [re, im]
            else:
                slot[0] += re
                slot[1] += im
        return Scalar._raw(_canon(acc))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(tuple((m, -re, -im) for m, re, im in self._t))

    def __sub__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = as_scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return as_scalar(other) - self

    def __mul__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)) or type(other) is type(_Q0):
                q = mpq(other)
                if not q:
                    return ZERO
                return Scalar._raw(tuple((m, re * q, im * q) for m, re, im in self._t))
            other = as_scalar(other)
        return scalar_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)) or type(other) is type(_Q0):
                q = mpq(other)
                if not q:
                    raise ZeroDivisionError("division by zero scalar")
                return Scalar._raw(tuple((m, re / q, im / q) for m, re, im in self._t))
            other = as_scalar(other)
        return scalar_mul(self, scalar_inv(other))

    def __rtruediv__(self, other) -> "Scalar":
        return as_scalar(other) / self

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return scalar_inv(self) ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        """Complex conjugation (sqrt(m) is real)."""
        return Scalar._raw(tuple((m, re, -im) for m, re, im in self._t))

    def galois(self, p: int) -> "Scalar":
        """Apply the automorphism sqrt(p) -> -sqrt(p) for a prime p."""
        return Scalar._raw(tuple((m, -re, -im) if m % p == 0 else (m, re, im)
                                 for m, re, im in self._t))

    # -- comparison ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._t == other._t
        try:
            return self._t == as_scalar(other)._t
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(self._t)
        return self._h

    def sign(self) -> int:
        """Exact sign of a real scalar (-1, 0, 1)."""
        if not self.is_real():
            raise ValueError(f"sign of non-real scalar {self}")
        if not self._t:
            return 0
        if self.is_rational():
            re = self._t[0][1]
            return 1 if re > 0 else -1
        # nonzero by canonical form; refine an integer interval until it excludes 0
        bits = 32
        while True:
            scale = 1 << bits
            lo = hi = 0
            for m, re, _ in self._t:
                # floor/ceil of sqrt(m)*scale
                r = isqrt(m * scale * scale)
                r_hi = r if r * r == m * scale * scale else r + 1
                num, den = int(re.numerator), int(re.denominator)
                if num >= 0:
                    lo += Fraction(num * r, den)
                    hi += Fraction(num * r_hi, den)
                else:
                    lo += Fraction(num * r_hi, den)
                    hi += Fraction(num * r, den)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __lt__(self, other) -> bool:
        return (self - as_scalar(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - as_scalar(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - as_scalar(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - as_scalar(other)).sign() >= 0

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {str(m): [int(re.numerator), int(re.denominator),
                         int(im.numerator), int(im.denominator)]
                for m, re, im in self._t}

    @classmethod
    def from_json(cls, obj: dict) -> "Scalar":
        terms = {}
        for key, (rn, rd, inn, ind) in obj.items():
            terms[int(key)] = (mpq(rn, rd), mpq(inn, ind))
        return cls.from_terms(terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for m, re, im in self._t:
            if re and im:
                c = f"({_fmt(re)}{'+' if im > 0 else '-'}{_fmt(abs(im))}i)"
            elif re:
                c = _fmt(re)
            else:
                c = _fmt(im) + "i" if im not in (1, -1) else ("i" if im > 0 else "-i")
            if m == 1:
                parts.append(c)
            elif c == "1":
                parts.append(f"sqrt({m})")
            elif c == "-1":
                parts.append(f"-sqrt({m})")
            else:
                parts.append(f"{c}*sqrt({m})")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


def _fmt(q) -> str:
    n, d = int(q.numerator), int(q.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def _canon(acc: dict) -> tuple:
    return tuple((m, re, im) for m, (re, im) in sorted(acc.items()) if re or im)


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    """Canonical product; radicals are recombined and kept square-free."""
    ta, tb = a._t, b._t
    if not ta or not tb:
        return ZERO
    if len(ta) == 1 and len(tb) == 1:
        m1, r1, i1 = ta[0]
        m2, r2, i2 = tb[0]
        if m1 == 1:
            g, m = 1, m2
        elif m2 == 1:
            g, m = 1, m1
        else:
            g, m = _radical_product(m1, m2)
        if i1 or i2:
            re = r1 * r2 - i1 * i2
            im = r1 * i2 + i1 * r2
        else:
            re, im = r1 * r2, _Q0
        if g != 1:
            re *= g
            im *= g
        return Scalar._raw(((m, re, im),))
    acc: dict[int, list] = {}
    for m1, r1, i1 in ta:
        for m2, r2, i2 in tb:
            g, m = _radical_product(m1, m2)
            re = (r1 * r2 - i1 * i2) * g
            im = (r1 * i2 + i1 * r2) * g
            slot = acc.get(m)
            if slot is None:
                acc[m] = [re, im]
            else:
                slot[0] += re
                slot[1] += im
    return Scalar._raw(_canon(acc))


def scalar_inv(a: Scalar) -> Scalar:
    """Multiplicative inverse via Galois conjugates.

    For each prime p dividing a radicand, multiplying by the conjugate under
    sqrt(p) -> -sqrt(p) eliminates p; what remains is a Gaussian rational.
    """
    if not a._t:
        raise ZeroDivisionError("inverse of zero scalar")
    primes = sorted({p for m in a.radicands() for p in _prime_factors(m)})
    num, cur = ONE, a
    for p in primes:
        c = cur.galois(p)
        num = num * c
        cur = cur * c
    # cur is now in Q(i)
    assert cur.radicands() in ((), (1,)), cur
    _, re, im = cur._t[0]
    norm = re * re + im * im
    return num * Scalar._raw(((1, re / norm, -im / norm),))


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, complex):
        raise TypeError("floating point complex numbers are not exact")
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or string")
    return Scalar(x)


def sqrt(n) -> Scalar:
    """Exact square root of a non-negative rational."""
    q = Fraction(n)
    if q < 0:
        return sqrt(-q) * I
    if q == 0:
        return ZERO
    # sqrt(a/b) = sqrt(a*b)/b
    return Scalar.from_terms({q.numerator * q.denominator: (mpq(1, q.denominator), 0)})


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


# ---------------------------------------------------------------------------
# Composition algebras via Cayley-Dickson doubling
# ---------------------------------------------------------------------------

UNIT_NAMES = ("1", "i", "j", "k", "l", "il", "jl", "kl")
TAGS = {"R": 1, "C": 2, "H": 4, "O": 8}


def _cd_mul(x: tuple, y: tuple) -> tuple:
    """Cayley-Dickson product on coefficient tuples of length 2^k.

    (a + b*u)(c + d*u) = (ac - conj(d) b) + (d a + b conj(c)) u
    """
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    h = n // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    first = _vsub(_cd_mul(a, c), _cd_mul(_cd_conj(d), b))
    second = _vadd(_cd_mul(d, a), _cd_mul(b, _cd_conj(c)))
    return first + second


def _cd_conj(x: tuple) -> tuple:
    return (x[0],) + tuple(-v for v in x[1:])


def _vadd(x, y):
    return tuple(p + q for p, q in zip(x, y))


def _vsub(x, y):
    return tuple(p - q for p, q in zip(x, y))


@lru_cache(maxsize=None)
def unit_table() -> tuple[tuple[tuple[int, int], ...], ...]:
    """``table[a][b] = (sign, c)`` with ``u_a * u_b = sign * u_c`` on octonion units.

    Basis order is (1, i, j, k, l, il, jl, kl): doubling R -> C by i,
    C -> H by j (k = ij), H -> O by l.
    """
    rows = []
    for a in range(8):
        row = []
        for b in range(8):
            x = tuple(1 if t == a else 0 for t in range(8))
            y = tuple(1 if t == b else 0 for t in range(8))
            z = _cd_mul(x, y)
            (c,) = [t for t in range(8) if z[t]]
            row.append((z[c], c))
        rows.append(tuple(row))
    return tuple(rows)


class CompElement:
    """Element of R, C, H or O with rational coefficients on the unit basis."""

    __slots__ = ("coeffs", "tag")

    def __init__(self, coeffs: Iterable, tag: str = "O"):
        if tag not in TAGS:
            raise ValueError(f"unknown composition algebra {tag!r}")
        c = [Fraction(v) for v in coeffs]
        c += [Fraction(0)] * (8 - len(c))
        if len(c) != 8:
            raise ValueError("at most 8 coefficients")
        width = TAGS[tag]
        if any(c[t] for t in range(width, 8)):
            raise ValueError(f"coefficient outside the slots allowed for {tag}")
        self.coeffs = tuple(c)
        self.tag = tag

    @classmethod
    def unit(cls, name: str, tag: str = "O") -> "CompElement":
        c = [0] * 8
        c[UNIT_NAMES.index(name)] = 1
        return cls(c, tag)

    @classmethod
    def real(cls, x, tag: str = "O") -> "CompElement":
        return cls([x], tag)

    def _join(self, other: "CompElement") -> str:
        return self.tag if TAGS[self.tag] >= TAGS[other.tag] else other.tag

    def __add__(self, other: "CompElement") -> "CompElement":
        return CompElement(_vadd(self.coeffs, other.coeffs), self._join(other))

    def __sub__(self, other: "CompElement") -> "CompElement":
        return CompElement(_vsub(self.coeffs, other.coeffs), self._join(other))

    def __neg__(self) -> "CompElement":
        return CompElement([-v for v in self.coeffs], self.tag)

    def scale(self, q) -> "CompElement":
        q = Fraction(q)
        return CompElement([q * v for v in self.coeffs], self.tag)

    def __mul__(self, other: "CompElement") -> "CompElement":
        return comp_mul(self, other)

    def conj(self) -> "CompElement":
        return CompElement(_cd_conj(self.coeffs), self.tag)

    def re(self) -> Fraction:
        return self.coeffs[0]

    def norm(self) -> Fraction:
        return sum((v * v for v in self.coeffs), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, CompElement) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{v}*{n}" if n != "1" else f"{v}"
                 for v, n in zip(self.coeffs, UNIT_NAMES) if v]
        return f"CompElement[{self.tag}]({' + '.join(terms) or '0'})"


def comp_mul(x: CompElement, y: CompElement) -> CompElement:
    """Bilinear product from the Cayley-Dickson unit table."""
    table = unit_table()
    out = [Fraction(0)] * 8
    for a, xa in enumerate(x.coeffs):
        if not xa:
            continue
        row = table[a]
        for b, yb in enumerate(y.coeffs):
            if yb:
                s, c = row[b]
                out[c] += s * xa * yb
    return CompElement(out, x._join(y))
