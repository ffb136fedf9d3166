"""Simple Euclidean Jordan algebras in an orthogonal frame basis.

Every algebra is stored in the same shape: diagonal idempotents ``e11 .. epp``
followed by off-diagonal frame vectors ``e_ab^mu`` of squared length ``1/rho``.
For Hermitian matrices ``e_ab^mu = u_mu (E_ab - E_ba)/sqrt(2)`` (``u_1 = 1``
gives the symmetric combination); for the spin factor ``Gamma(n)`` the two
idempotents are ``(1/2, +-1/2, 0, ...)`` and ``e12^mu`` is ``e_{mu+1}/sqrt(2)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ._linalg import pivots_ldl, vaxpy
from .exactnum import (
    ONE,
    TAGS,
    UNIT_NAMES,
    ZERO,
    CompElement,
    Scalar,
    as_scalar,
    comp_mul,
    sqrt,
)

__all__ = [
    "KINDS",
    "JordanAlgebra",
    "JordanElement",
    "LinearOperator",
    "JordanFrame",
    "Report",
    "build_jordan",
    "jmul",
    "lmul_op",
    "quad_rep",
    "trace_of",
    "tau",
    "inner",
    "rank_degree",
    "jordan_frame",
    "verify_frame",
    "verify_jordan_axioms",
    "normalize_kind",
]

KINDS = ("spin", "hermR", "hermC", "hermH", "hermO")

_ALIASES = {
    "spin": "spin", "gamma": "spin", "spinfactor": "spin", "so2": "spin",
    "hermr": "hermR", "sp": "hermR", "r": "hermR",
    "hermc": "hermC", "su": "hermC", "c": "hermC",
    "hermh": "hermH", "so*": "hermH", "sostar": "hermH", "h": "hermH",
    "hermo": "hermO", "hermo3": "hermO", "e7": "hermO", "o": "hermO",
}

_FIELD = {"hermR": "R", "hermC": "C", "hermH": "H", "hermO": "O"}

_INV_SQRT2 = sqrt(Fraction(1, 2))
_SQRT2 = sqrt(2)


def normalize_kind(kind: str) -> str:
    k = _ALIASES.get(str(kind).lower())
    if k is None:
        raise ValueError(f"unknown Jordan kind {kind!r}; expected one of {KINDS}")
    return k


def _check_kind_n(kind: str, n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("n must be an integer")
    ok = {
        "spin": n >= 2,
        "hermR": n >= 1,
        "hermC": n >= 2,
        "hermH": n >= 2,
        "hermO": n == 3,
    }[kind]
    if not ok:
        raise ValueError(f"unsupported combination kind={kind}, n={n}")


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

class LinearOperator:
    """Sparse D x D matrix; ``entries[(i, j)]`` is the i-th coefficient of A(b_j)."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: dict | None = None):
        self.dim = dim
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def identity(cls, dim: int) -> "LinearOperator":
        return cls(dim, {(i, i): ONE for i in range(dim)})

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        out = dict(self.entries)
        vaxpy(out, ONE, other.entries)
        return LinearOperator(self.dim, out)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        out = dict(self.entries)
        vaxpy(out, -ONE, other.entries)
        return LinearOperator(self.dim, out)

    def __neg__(self) -> "LinearOperator":
        return LinearOperator(self.dim, {k: -v for k, v in self.entries.items()})

    def scale(self, c) -> "LinearOperator":
        c = as_scalar(c)
        return LinearOperator(self.dim, {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        cols: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            cols.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in cols.get(k, ()):
                key = (i, j)
                t = a * b
                cur = out.get(key)
                out[key] = t if cur is None else cur + t
        return LinearOperator(self.dim, out)

    def commutator(self, other: "LinearOperator") -> "LinearOperator":
        return (self @ other) - (other @ self)

    def apply(self, vec: Sequence[Scalar]) -> list[Scalar]:
        out = [ZERO] * self.dim
        for (i, j), a in self.entries.items():
            if vec[j]:
                out[i] = out[i] + a * vec[j]
        return out

    def column(self, j: int) -> dict:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def transpose(self) -> "LinearOperator":
        return LinearOperator(self.dim, {(j, i): v for (i, j), v in self.entries.items()})

    def trace(self) -> Scalar:
        out = ZERO
        for (i, j), v in self.entries.items():
            if i == j:
                out = out + v
        return out

    def flat(self) -> dict:
        d = self.dim
        return {i * d + j: v for (i, j), v in self.entries.items()}

    @classmethod
    def from_flat(cls, dim: int, flat: dict) -> "LinearOperator":
        return cls(dim, {divmod(k, dim): v for k, v in flat.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearOperator) and self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __repr__(self) -> str:
        return f"LinearOperator(dim={self.dim}, nnz={len(self.entries)})"


# ---------------------------------------------------------------------------
# algebra and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class JordanAlgebra:
    kind: str
    n: int
    labels: tuple[str, ...]
    # prod[a][b] = {c: Scalar}: coefficients of e_a e_b
    prod: tuple
    rho: int
    # (a, b, mu) for off-diagonal vectors, (p, p, 0) for idempotents
    index: tuple[tuple[int, int, int], ...]
    _lcache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def D(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def d(self) -> int:
        return rank_degree(self)[1]

    def basis(self, i: int) -> "JordanElement":
        return JordanElement(self, tuple(ONE if j == i else ZERO for j in range(self.D)))

    def element(self, coeffs: Iterable) -> "JordanElement":
        c = tuple(as_scalar(x) for x in coeffs)
        if len(c) != self.D:
            raise ValueError(f"expected {self.D} coefficients, got {len(c)}")
        return JordanElement(self, c)

    def zero(self) -> "JordanElement":
        return JordanElement(self, (ZERO,) * self.D)

    def unit(self) -> "JordanElement":
        return JordanElement(self, tuple(ONE if t[2] == 0 else ZERO for t in self.index))

    def label_index(self, label: str) -> int:
        return self.labels.index(label)

    def __getitem__(self, label: str) -> "JordanElement":
        return self.basis(self.label_index(label))

    def diag_indices(self) -> list[int]:
        return [i for i, t in enumerate(self.index) if t[2] == 0]

    def offdiag_indices(self, a: int | None = None, b: int | None = None) -> list[int]:
        return [i for i, t in enumerate(self.index)
                if t[2] != 0 and (a is None or (t[0], t[1]) == (a, b))]

    def L(self, i: int) -> "LinearOperator":
        """Left multiplication by the i-th basis vector."""
        op = self._lcache.get(i)
        if op is None:
            ent = {}
            for j in range(self.D):
                for k, v in self.prod[i][j].items():
                    ent[(k, j)] = v
            op = LinearOperator(self.D, ent)
            self._lcache[i] = op
        return op

    def random_element(self, rng: random.Random) -> "JordanElement":
        return self.element(Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
                            for _ in range(self.D))

    def product_json(self) -> dict:
        out = {}
        for a in range(self.D):
            for b in range(self.D):
                if self.prod[a][b]:
                    out[f"{self.labels[a]},{self.labels[b]}"] = {
                        self.labels[c]: v.to_json() for c, v in sorted(self.prod[a][b].items())}
        return out

    def info(self) -> dict:
        rho, d = rank_degree(self)
        return {"kind": self.kind, "n": self.n, "D": self.D, "rho": rho, "d": d,
                "basis": list(self.labels)}

    def __repr__(self) -> str:
        return f"JordanAlgebra({self.kind}, n={self.n}, D={self.D})"


@dataclass(frozen=True, eq=False)
class JordanElement:
    algebra: JordanAlgebra
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.D:
            raise ValueError("coefficient vector has the wrong length")

    def _check(self, other: "JordanElement") -> None:
        if other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: "JordanElement") -> "JordanElement":
        self._check(other)
        return JordanElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "JordanElement") -> "JordanElement":
        self._check(other)
        return JordanElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "JordanElement":
        return JordanElement(self.algebra, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "JordanElement":
        c = as_scalar(c)
        return JordanElement(self.algebra, tuple(c * a for a in self.coeffs))

    __rmul__ = scale

    def __mul__(self, other):
        if isinstance(other, JordanElement):
            return jmul(self, other)
        return self.scale(other)

    def sparse(self) -> dict:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, JordanElement) and other.algebra is self.algebra
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        labels = self.algebra.labels
        terms = [f"({c})*{labels[i]}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _assemble(kind, n, labels, index, rprod, scale) -> JordanAlgebra:
    """Rescale a rational product tensor on f_a to the frame basis e_a = scale[a] f_a."""
    D = len(labels)
    inv_scale = [ONE if s == ONE else _SQRT2 for s in scale]
    prod = []
    for a in range(D):
        row = []
        for b in range(D):
            entry = {}
            sab = scale[a] * scale[b]
            for c, q in rprod[a][b].items():
                v = sab * inv_scale[c] * q
                if v:
                    entry[c] = v
            row.append(entry)
        prod.append(tuple(row))
    rho = sum(1 for t in index if t[2] == 0)
    return JordanAlgebra(kind, n, tuple(labels), tuple(prod), rho, tuple(index))


def _build_spin(n: int) -> JordanAlgebra:
    # f-basis inside R + R^n: f11 = (1/2, 1/2, 0..), f22 = (1/2, -1/2, 0..), f_mu = e_{mu+1}
    half = Fraction(1, 2)
    vecs = [(half, [half] + [0] * (n - 1)), (half, [-half] + [0] * (n - 1))]
    for mu in range(1, n):
        u = [0] * n
        u[mu] = 1
        vecs.append((Fraction(0), u))
    labels = ["e11", "e22"] + [f"e12^{mu}" for mu in range(1, n)]
    index = [(1, 1, 0), (2, 2, 0)] + [(1, 2, mu) for mu in range(1, n)]

    def mul(x, y):
        (l1, u1), (l2, u2) = x, y
        lam = l1 * l2 + sum(Fraction(a) * b for a, b in zip(u1, u2))
        vec = [l1 * b + l2 * a for a, b in zip(u1, u2)]
        return lam, vec

    def decompose(x):
        lam, u = x
        # lam = (c11 + c22)/2, u1 = (c11 - c22)/2
        c11 = lam + u[0]
        c22 = lam - u[0]
        out = {}
        if c11:
            out[0] = c11
        if c22:
            out[1] = c22
        for mu in range(1, n):
            if u[mu]:
                out[1 + mu] = Fraction(u[mu])
        return out

    D = n + 1
    rprod = [[decompose(mul(vecs[a], vecs[b])) for b in range(D)] for a in range(D)]
    scale = [ONE, ONE] + [_INV_SQRT2] * (n - 1)
    return _assemble("spin", n, labels, index, rprod, scale)


def _herm_basis(n: int, tag: str):
    """Rational basis f of Hermitian n x n matrices over the tagged algebra.

    Matrices are sparse: ``{(row, col): entry}``.
    """
    width = TAGS[tag]
    mats, labels, index = [], [], []
    for p in range(n):
        mats.append({(p, p): CompElement.real(1, tag)})
        labels.append(f"e{p + 1}{p + 1}")
        index.append((p + 1, p + 1, 0))
    for a in range(n):
        for b in range(a + 1, n):
            for mu in range(width):
                unit = CompElement.unit(UNIT_NAMES[mu], tag)
                mats.append({(a, b): unit, (b, a): unit.conj()})
                name = f"e{a + 1}{b + 1}" if mu == 0 else f"e{a + 1}{b + 1}^{UNIT_NAMES[mu]}"
                labels.append(name)
                index.append((a + 1, b + 1, mu + 1))
    return mats, labels, index


def _matmul(x: dict, y: dict) -> dict:
    # (XY)_pq = sum_r X_pr Y_rq, each entry product taken as (X_pr)(Y_rq)
    out: dict = {}
    for (p, r), xa in x.items():
        for (r2, q), yb in y.items():
            if r == r2:
                t = comp_mul(xa, yb)
                out[(p, q)] = out[(p, q)] + t if (p, q) in out else t
    return out


def _build_herm(kind: str, n: int) -> JordanAlgebra:
    tag = _FIELD[kind]
    width = TAGS[tag]
    mats, labels, index = _herm_basis(n, tag)
    pos = {t: i for i, t in enumerate(index)}
    D = len(mats)
    rprod = [[None] * D for _ in range(D)]
    for a in range(D):
        for b in range(a, D):
            xy = _matmul(mats[a], mats[b])
            yx = _matmul(mats[b], mats[a])
            out = {}
            for (p, q) in sorted(set(xy) | set(yx)):
                if q < p:
                    continue
                v = xy.get((p, q))
                w = yx.get((p, q))
                v = (v + w if v is not None and w is not None else v if v is not None else w).scale(Fraction(1, 2))
                if p == q:
                    if any(v.coeffs[1:]):
                        raise ArithmeticError("Hermitian product has a non-real diagonal")
                    if v.coeffs[0]:
                        out[pos[(p + 1, p + 1, 0)]] = v.coeffs[0]
                else:
                    for mu in range(width):
                        if v.coeffs[mu]:
                            out[pos[(p + 1, q + 1, mu + 1)]] = v.coeffs[mu]
            rprod[a][b] = rprod[b][a] = out
    scale = [ONE if t[2] == 0 else _INV_SQRT2 for t in index]
    return _assemble(kind, n, labels, index, rprod, scale)


@lru_cache(maxsize=None)
def build_jordan(kind: str, n: int) -> JordanAlgebra:
    """Construct one of the five simple Euclidean Jordan algebras."""
    kind = normalize_kind(kind)
    _check_kind_n(kind, n)
    if kind == "spin":
        return _build_spin(n)
    return _build_herm(kind, n)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def jmul(u: JordanElement, v: JordanElement) -> JordanElement:
    u._check(v)
    J = u.algebra
    out = [ZERO] * J.D
    vs = [(j, c) for j, c in enumerate(v.coeffs) if c]
    for i, a in enumerate(u.coeffs):
        if not a:
            continue
        row = J.prod[i]
        for j, b in vs:
            ab = a * b
            for k, t in row[j].items():
                out[k] = out[k] + ab * t
    return JordanElement(J, tuple(out))


def lmul_op(u: JordanElement) -> LinearOperator:
    J = u.algebra
    out: dict = {}
    for i, c in enumerate(u.coeffs):
        if c:
            vaxpy(out, c, J.L(i).entries)
    return LinearOperator(J.D, out)


def quad_rep(x: JordanElement) -> LinearOperator:
    Lx = lmul_op(x)
    return (Lx @ Lx).scale(2) - lmul_op(jmul(x, x))


def trace_of(u: JordanElement) -> Scalar:
    """Jordan trace: 2*lambda on the spin factor, matrix trace otherwise.

    In the frame basis both reduce to the sum of the idempotent coefficients.
    """
    out = ZERO
    for i in u.algebra.diag_indices():
        out = out + u.coeffs[i]
    return out


def tau(u: JordanElement, v: JordanElement) -> Scalar:
    return lmul_op(jmul(u, v)).trace()


def inner(u: JordanElement, v: JordanElement) -> Scalar:
    return tau(u, v) / u.algebra.D


def rank_degree(J: JordanAlgebra) -> tuple[int, int]:
    rho = trace_of(J.unit())
    if not rho.is_rational() or rho.to_fraction().denominator != 1:
        raise ArithmeticError("trace of the unit is not an integer")
    rho = int(rho.to_fraction())
    if rho == 1:
        return 1, 1
    num = 2 * (J.D - rho)
    den = rho * (rho - 1)
    if num % den or num // den <= 0:
        raise ArithmeticError(f"non-integral degree for {J}")
    return rho, num // den


# ---------------------------------------------------------------------------
# frames and verification
# ---------------------------------------------------------------------------

@dataclass
class Report:
    name: str
    ok: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def fail(self, what: str, witness) -> None:
        self.ok = False
        if len(self.failures) < 20:
            self.failures.append({"check": what, "witness": witness})

    def to_json(self) -> dict:
        out = {"identity": self.name, "status": "pass" if self.ok else "fail",
               "checked": self.checked}
        if self.failures:
            out["witness"] = self.failures
        if self.details:
            out["details"] = self.details
        return out


@dataclass(frozen=True)
class JordanFrame:
    algebra: JordanAlgebra
    idempotents: tuple
    offdiag: dict  # (a, b) -> tuple of elements e_ab^mu


def jordan_frame(J: JordanAlgebra) -> JordanFrame:
    idem = tuple(J.basis(i) for i in J.diag_indices())
    off: dict = {}
    for i in J.offdiag_indices():
        a, b, _ = J.index[i]
        off.setdefault((a, b), []).append(J.basis(i))
    return JordanFrame(J, idem, {k: tuple(v) for k, v in off.items()})


def verify_frame(J: JordanAlgebra, F: JordanFrame | None = None) -> Report:
    F = F or jordan_frame(J)
    rep = Report(f"frame {J.kind}({J.n})")
    rho = len(F.idempotents)
    one_over_rho = Scalar(Fraction(1, rho))
    half = Scalar(Fraction(1, 2))
    allv = list(F.idempotents) + [x for fam in F.offdiag.values() for x in fam]
    # 1. lengths and orthogonality
    for i, x in enumerate(allv):
        for j, y in enumerate(allv):
            if j < i:
                continue
            want = one_over_rho if i == j else ZERO
            got = inner(x, y)
            rep.checked += 1
            if got != want:
                rep.fail("length/orthogonality", [repr(x), repr(y), str(got)])
    # 2. idempotents
    for i, x in enumerate(F.idempotents):
        for j, y in enumerate(F.idempotents):
            want = x if i == j else J.zero()
            rep.checked += 1
            if jmul(x, y) != want:
                rep.fail("idempotent product", [i + 1, j + 1])
    # 3. sum is the unit
    s = J.zero()
    for x in F.idempotents:
        s = s + x
    rep.checked += 1
    if s != J.unit():
        rep.fail("sum of idempotents", repr(s))
    # 4. off-diagonal rules
    for (a, b), fam in F.offdiag.items():
        ea, eb = F.idempotents[a - 1], F.idempotents[b - 1]
        for x in fam:
            rep.checked += 1
            if jmul(x, x) != (ea + eb).scale(half):
                rep.fail("square of off-diagonal", repr(x))
            for p, ep in enumerate(F.idempotents, start=1):
                want = x.scale(half) if p in (a, b) else J.zero()
                rep.checked += 1
                if jmul(ep, x) != want:
                    rep.fail("idempotent action", [p, repr(x)])
    # 5. traces
    for x in F.idempotents:
        rep.checked += 1
        if trace_of(x) != ONE:
            rep.fail("trace of idempotent", repr(x))
    for fam in F.offdiag.values():
        for x in fam:
            rep.checked += 1
            if trace_of(x):
                rep.fail("trace of off-diagonal", repr(x))
    # 6. x0 with x0^2 = tr(x0) x0 sits on the first idempotent
    x0 = F.idempotents[0].scale(3)
    rep.checked += 1
    if jmul(x0, x0) != x0.scale(trace_of(x0)) or x0 != F.idempotents[0].scale(trace_of(x0)):
        rep.fail("rank-one element", repr(x0))
    return rep


def verify_jordan_axioms(J: JordanAlgebra, samples: int = 50, seed: int = 0,
                         operator_samples: int | None = None) -> Report:
    """Commutativity, the Jordan identity, [L_x, L_{x^2}] = 0, and tau > 0."""
    rep = Report(f"jordan axioms {J.kind}({J.n})")
    rng = random.Random(seed)
    op_n = samples if operator_samples is None else operator_samples
    for s in range(samples):
        x = J.random_element(rng)
        y = J.random_element(rng)
        xy = jmul(x, y)
        rep.checked += 1
        if xy != jmul(y, x):
            rep.fail("commutativity", s)
        x2 = jmul(x, x)
        rep.checked += 1
        if jmul(x, jmul(x2, y)) != jmul(x2, xy):
            rep.fail("Jordan identity", s)
        if s < op_n:
            Lx, Lx2 = lmul_op(x), lmul_op(x2)
            rep.checked += 1
            if (Lx @ Lx2) != (Lx2 @ Lx):
                rep.fail("[L_x, L_x^2] = 0", s)
    gram = [[tau(J.basis(i), J.basis(j)) for j in range(J.D)] for i in range(J.D)]
    rep.checked += 1
    if any(gram[i][j] != gram[j][i] for i in range(J.D) for j in range(J.D)):
        rep.fail("tau symmetric", None)
    piv = pivots_ldl(gram)
    rep.checked += 1
    if len(piv) < J.D or any(not p.is_real() or p.sign() <= 0 for p in piv):
        rep.fail("tau positive definite", [str(p) for p in piv])
    return rep
