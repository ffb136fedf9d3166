"""Root systems, explicit Cartan bases of co(J), and the map co(Gamma(m)) -> so(2, m+1).

Root coordinates follow the Bourbaki convention for each case:

* ``hermR``  sp(n, R), coordinates ``e_1..e_n``;
* ``hermC``  su(n, n), coordinates ``e_1..e_2n``;
* ``hermH``  so*(4n), coordinates ``e_1..e_2n``;
* ``hermO``  e7(-25) inside e8, coordinates ``e_1..e_8``;
* ``spin``   so(2, m+1), coordinates ``e_1..e_r`` with ``r = (m+3)//2``.

Root vectors for the Hermitian cases are built from explicit closed-form
expressions; any line that fails its eigenvalue check is reported by label.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from ._linalg import inverse, nullspace, vaxpy
from .exactnum import I, ONE, ZERO, Scalar, as_scalar, sqrt
from .jordan import JordanElement, Report, build_jordan, normalize_kind
from .tkk import LieAlgebra, LieElement, TKKAlgebra, build_tkk, epm_h

__all__ = [
    "Root",
    "root_system",
    "simple_roots",
    "eval_weight",
    "So2mAlgebra",
    "so2m_algebra",
    "PhiMap",
    "phi_iso",
    "phi_displayed_images",
    "verify_phi",
    "CartanBasis",
    "cartan_basis",
    "readings",
    "cartan_rank",
    "weight_length",
]

F = Fraction
_HALF = Scalar(F(1, 2))
_SQ2 = sqrt(2)
_INV_SQ2 = sqrt(F(1, 2))
_INV_2SQ2 = sqrt(F(1, 8))


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Root:
    coords: tuple
    positive: bool
    compact: bool

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords), not self.positive, self.compact)

    def norm2(self) -> Fraction:
        return sum((c * c for c in self.coords), F(0))

    def dot(self, other: Sequence) -> Fraction:
        return sum((F(a) * F(b) for a, b in zip(self.coords, other)), F(0))

    @property
    def label(self) -> str:
        return _root_label(self.coords)

    def to_json(self) -> dict:
        return {"coords": [str(c) for c in self.coords], "positive": self.positive,
                "compact": self.compact}


def _root_label(coords) -> str:
    parts = []
    if all(c.denominator == 2 for c in coords if c):
        inner = "".join(("+" if c > 0 else "-") + f"e{i + 1}" for i, c in enumerate(coords) if c)
        return f"1/2({inner})"
    for i, c in enumerate(coords):
        if not c:
            continue
        sign = "+" if c > 0 else "-"
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}e{i + 1}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def _vec(n: int, entries: dict) -> tuple:
    v = [F(0)] * n
    for i, c in entries.items():
        v[i - 1] = F(c)
    return tuple(v)


def weight_length(kind: str, n: int) -> int:
    kind = normalize_kind(kind)
    if kind == "hermR":
        return n
    if kind in ("hermC", "hermH"):
        return 2 * n
    if kind == "hermO":
        return 8
    return (n + 3) // 2


def cartan_rank(kind: str, n: int) -> int:
    kind = normalize_kind(kind)
    if kind == "hermC":
        return 2 * n - 1
    if kind == "hermO":
        return 7
    return weight_length(kind, n)


@lru_cache(maxsize=None)
def _roots(kind: str, n: int) -> tuple:
    out = []

    def add(coords, compact):
        out.append(Root(coords, True, compact))
        out.append(Root(tuple(-c for c in coords), False, compact))

    if kind == "hermR":
        for i in range(1, n + 1):
            add(_vec(n, {i: 2}), False)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                add(_vec(n, {i: 1, j: -1}), True)
                add(_vec(n, {i: 1, j: 1}), False)
    elif kind == "hermC":
        N = 2 * n
        for a in range(1, N + 1):
            for b in range(a + 1, N + 1):
                compact = (b <= n) or (a > n)
                add(_vec(N, {a: 1, b: -1}), compact)
    elif kind == "hermH":
        N = 2 * n
        for a in range(1, N + 1):
            for b in range(a + 1, N + 1):
                add(_vec(N, {a: 1, b: -1}), True)
                add(_vec(N, {a: 1, b: 1}), False)
    elif kind == "hermO":
        for i in range(1, 6):
            for j in range(i + 1, 6):
                add(_vec(8, {i: 1, j: 1}), True)
                add(_vec(8, {i: -1, j: 1}), True)
        h = F(1, 2)
        for signs in itertools.product((0, 1), repeat=5):
            base = [h * (-1) ** s for s in signs]
            if sum(signs) % 2 == 0:
                add(tuple(base) + (-h, -h, h), True)
        for i in range(1, 6):
            add(_vec(8, {i: 1, 6: 1}), False)
            add(_vec(8, {i: -1, 6: 1}), False)
        add(_vec(8, {8: 1, 7: -1}), False)
        for signs in itertools.product((0, 1), repeat=5):
            base = [h * (-1) ** s for s in signs]
            if sum(signs) % 2 == 1:
                add(tuple(base) + (h, -h, h), False)
    elif kind == "spin":
        m = n
        r = (m + 3) // 2
        odd_total = (m + 3) % 2 == 1
        for a in range(1, r + 1):
            for b in range(a + 1, r + 1):
                add(_vec(r, {a: 1, b: -1}), a != 1)
                add(_vec(r, {a: 1, b: 1}), a != 1)
            if odd_total:
                add(_vec(r, {a: 1}), a != 1)
    else:  # pragma: no cover
        raise ValueError(kind)
    return tuple(out)


def root_system(kind: str, n: int) -> list[Root]:
    """All roots with positive and compact flags."""
    kind = normalize_kind(kind)
    build_jordan(kind, n)  # validates (kind, n)
    return list(_roots(kind, n))


def simple_roots(roots: Sequence[Root]) -> list[Root]:
    pos = [r for r in roots if r.positive]
    sums = {tuple(a + b for a, b in zip(x.coords, y.coords)) for x, y in itertools.combinations(pos, 2)}
    return sorted((r for r in pos if r.coords not in sums), key=lambda r: r.coords, reverse=True)


def eval_weight(lam: Sequence, alpha: Root | Sequence) -> Fraction:
    """2(lambda, alpha)/(alpha, alpha)."""
    a = alpha.coords if isinstance(alpha, Root) else tuple(F(x) for x in alpha)
    lam = tuple(F(x) for x in lam)
    if len(lam) != len(a):
        raise ValueError(f"weight has length {len(lam)}, root has length {len(a)}")
    num = sum((x * y for x, y in zip(lam, a)), F(0))
    den = sum((y * y for y in a), F(0))
    return 2 * num / den


# ---------------------------------------------------------------------------
# so(2, m+1)
# ---------------------------------------------------------------------------

class So2mAlgebra(LieAlgebra):
    """so(2, m+1) on M_{mu nu}, -1 <= mu < nu <= m+1, eta = diag(1, 1, -1, ..., -1)."""

    def __init__(self, m: int):
        self.m = m
        idx = list(range(-1, m + 2))
        self.pairs = [(a, b) for a in idx for b in idx if a < b]
        self._pos = {p: k for k, p in enumerate(self.pairs)}
        labels = [f"M[{a},{b}]" for a, b in self.pairs]
        sc = {}
        for k, (a, b) in enumerate(self.pairs):
            for l, (c, d) in enumerate(self.pairs):
                if l <= k:
                    continue
                v: dict = {}
                for coef, x, y in ((self.eta(b, c), a, d), (-self.eta(a, c), b, d),
                                   (-self.eta(b, d), a, c), (self.eta(a, d), b, c)):
                    if coef:
                        s, t = self.M_vec(x, y)
                        if t is not None:
                            vaxpy(v, Scalar(coef * s) * (-I), {t: ONE})
                if v:
                    sc[(k, l)] = v
        super().__init__(labels, sc, name=f"so(2,{m + 1})")

    @staticmethod
    def eta(a: int, b: int) -> int:
        if a != b:
            return 0
        return 1 if a in (-1, 0) else -1

    def M_vec(self, a: int, b: int) -> tuple[int, int | None]:
        if a == b:
            return 0, None
        if a < b:
            return 1, self._pos[(a, b)]
        return -1, self._pos[(b, a)]

    def M(self, a: int, b: int) -> LieElement:
        s, t = self.M_vec(a, b)
        return LieElement(self, {} if t is None else {t: Scalar(s)})


@lru_cache(maxsize=None)
def so2m_algebra(m: int) -> So2mAlgebra:
    if m < 2:
        raise ValueError("m must be at least 2")
    return So2mAlgebra(m)


@dataclass
class PhiMap:
    """Linear map co(Gamma(m)) -> so(2, m+1) and its inverse, as basis images."""

    m: int
    co: TKKAlgebra
    so: So2mAlgebra
    images: list  # sparse vectors in so
    inverse_images: list  # sparse vectors in co
    report: Report

    def apply(self, x: LieElement) -> LieElement:
        out: dict = {}
        for i, c in x.vec.items():
            vaxpy(out, c, self.images[i])
        return LieElement(self.so, out)

    def apply_inverse(self, y: LieElement) -> LieElement:
        out: dict = {}
        for i, c in y.vec.items():
            vaxpy(out, c, self.inverse_images[i])
        return LieElement(self.co, out)


def _spin_L_image(so: So2mAlgebra, lam, u) -> LieElement:
    # L_{(lam, u)} -> -i(-lam M_{-1,m+1} + sum_i u_i M_{0,i})
    m = so.m
    out = so.M(-1, m + 1).scale(-as_scalar(lam))
    for i, ui in enumerate(u, start=1):
        if ui:
            out = out + so.M(0, i).scale(as_scalar(ui))
    return out.scale(-I)


def _spin_lambda_u(J, x: JordanElement):
    """(lambda, u) coordinates of a spin-factor element given in the frame basis."""
    c = x.coeffs
    n = J.n
    lam = (c[0] + c[1]) * _HALF
    u = [(c[0] - c[1]) * _HALF] + [c[1 + mu] * _INV_SQ2 for mu in range(1, n)]
    return lam, u


@lru_cache(maxsize=None)
def phi_iso(m: int) -> PhiMap:
    """Assemble phi from the images of X_e, Y_e and L_u, then verify it."""
    J = build_jordan("spin", m)
    co = build_tkk(J)
    so = so2m_algebra(m)
    D = J.D
    e = J.unit()
    phiX_e = (so.M(-1, 0) + so.M(0, m + 1)).scale(-I)
    phiY_e = (so.M(-1, 0) - so.M(0, m + 1)).scale(-I)
    phiL = []
    for a in range(D):
        lam, u = _spin_lambda_u(J, J.basis(a))
        phiL.append(_spin_L_image(so, lam, u))
    images: list = [None] * co.dim
    for a in range(D):
        images[co.xi(a)] = phiL[a].bracket(phiX_e).vec
        images[co.yi(a)] = (-phiL[a].bracket(phiY_e)).vec
    for k, (a, b) in enumerate(co.str.pairs):
        img = phiL[a].bracket(phiL[b])
        for c, v in J.prod[a][b].items():
            img = img + phiL[c].scale(v)
        images[co.si(k)] = img.vec
    rep = Report(f"phi co(Gamma({m})) -> so(2,{m + 1})")
    # consistency with the displayed images of X_e, Y_e and of L_u
    rep.checked += 2
    xe = LieElement(so, {})
    ye = LieElement(so, {})
    for a in range(D):
        if e.coeffs[a]:
            xe = xe + LieElement(so, images[co.xi(a)]).scale(e.coeffs[a])
            ye = ye + LieElement(so, images[co.yi(a)]).scale(e.coeffs[a])
    if xe != phiX_e:
        rep.fail("phi(X_e)", repr(xe))
    if ye != phiY_e:
        rep.fail("phi(Y_e)", repr(ye))
    for a in range(D):
        rep.checked += 1
        got = LieElement(so, {})
        Lvec = co.L(a).vec
        for i, c in Lvec.items():
            got = got + LieElement(so, images[i]).scale(c)
        if got != phiL[a]:
            rep.fail("phi(L_u) from str coordinates", J.labels[a])
    # bijectivity
    N = co.dim
    if so.dim != N:
        rep.fail("dimension", [N, so.dim])
        return PhiMap(m, co, so, images, [], rep)
    mat = [[images[j].get(i, ZERO) for j in range(N)] for i in range(N)]
    try:
        inv = inverse(mat)
        rep.checked += 1
    except ZeroDivisionError:
        rep.fail("bijective", "singular")
        return PhiMap(m, co, so, images, [], rep)
    inv_images = [{i: inv[i][j] for i in range(N) if inv[i][j]} for j in range(N)]
    pm = PhiMap(m, co, so, images, inv_images, rep)
    # homomorphism on all basis pairs
    for i in range(N):
        for j in range(i + 1, N):
            rep.checked += 1
            lhs = pm.apply(LieElement(co, co.bracket_basis(i, j)))
            rhs = LieElement(so, images[i]).bracket(LieElement(so, images[j]))
            if lhs != rhs:
                rep.fail("homomorphism", [co.labels[i], co.labels[j]])
    return pm


def phi_displayed_images(m: int) -> dict:
    """The six displayed formulas, generated independently from the M basis."""
    so = so2m_algebra(m)
    M = so.M
    half_i = I * Scalar(F(-1, 2))
    out = {
        "X(e11)": (M(-1, 0) + M(-1, 1) + M(0, m + 1) + M(1, m + 1)).scale(half_i),
        "X(e22)": (M(-1, 0) - M(-1, 1) + M(0, m + 1) - M(1, m + 1)).scale(half_i),
        "Y(e11)": (M(-1, 0) - M(-1, 1) - M(0, m + 1) + M(1, m + 1)).scale(half_i),
        "Y(e22)": (M(-1, 0) + M(-1, 1) - M(0, m + 1) - M(1, m + 1)).scale(half_i),
    }
    c = -I * _INV_SQ2
    for mu in range(1, m):
        out[f"X(e12^{mu})"] = (M(-1, mu + 1) + M(mu + 1, m + 1)).scale(c)
        out[f"Y(e12^{mu})"] = (-M(-1, mu + 1) + M(mu + 1, m + 1)).scale(c)
    return out


def verify_phi(m: int) -> Report:
    pm = phi_iso(m)
    rep = Report(pm.report.name)
    rep.ok, rep.checked, rep.failures = pm.report.ok, pm.report.checked, list(pm.report.failures)
    for label, want in phi_displayed_images(m).items():
        rep.checked += 1
        got = pm.apply(pm.co.basis(pm.co.index(label)))
        if got != want:
            rep.fail("displayed image", label)
    return rep


# ---------------------------------------------------------------------------
# Cartan bases
# ---------------------------------------------------------------------------

@dataclass
class CartanBasis:
    algebra: TKKAlgebra
    kind: str
    n: int
    roots: list
    root_vectors: dict  # coords -> LieElement
    provenance: dict  # coords -> str (displayed label or derivation word)
    coroots: dict = field(default_factory=dict)  # coords -> LieElement (true coroot)
    bracket_constants: dict = field(default_factory=dict)  # coords -> Scalar
    displayed_H: list = field(default_factory=list)  # (label, coords, LieElement)
    simple: list = field(default_factory=list)
    report: Report | None = None

    @property
    def root_by_coords(self) -> dict:
        return {r.coords: r for r in self.roots}

    @property
    def cartan_elements(self) -> list:
        return [self.coroots[r.coords] for r in self.simple]

    @property
    def coroot_map(self) -> dict:
        return self.coroots

    def ordered_basis(self) -> tuple[list[str], list[LieElement], list[str]]:
        """Negative root vectors, simple coroots, positive root vectors."""
        neg = sorted((r for r in self.roots if not r.positive), key=lambda r: r.coords)
        pos = sorted((r for r in self.roots if r.positive), key=lambda r: r.coords)
        labels, vecs, tags = [], [], []
        for r in neg:
            labels.append(f"E[{r.label}]")
            vecs.append(self.root_vectors[r.coords])
            tags.append("negative")
        for r in self.simple:
            labels.append(f"H[{r.label}]")
            vecs.append(self.coroots[r.coords])
            tags.append("cartan")
        for r in pos:
            labels.append(f"E[{r.label}]")
            vecs.append(self.root_vectors[r.coords])
            tags.append("positive")
        return labels, vecs, tags

    def constants_json(self) -> dict:
        rb = self.root_by_coords
        return {rb[c].label: str(v) for c, v in sorted(self.bracket_constants.items())}


class _Gen:
    """Shorthands for TKK generators of a Hermitian co(J)."""

    def __init__(self, g: TKKAlgebra):
        self.g = g
        self.J = g.J

    def e(self, a: int, b: int, unit: str = "") -> JordanElement:
        if a == b:
            return self.J[f"e{a}{a}"]
        sign = ONE
        if a > b:
            a, b = b, a
            if unit:
                sign = -ONE
        lab = f"e{a}{b}" + (f"^{unit}" if unit else "")
        return self.J[lab].scale(sign)

    def h(self, u) -> LieElement:
        return (self.g.X(u) + self.g.Y(u)).scale(-I)

    def Ep(self, u) -> LieElement:
        return epm_h(self.g, u)[0]

    def Em(self, u) -> LieElement:
        return epm_h(self.g, u)[1]

    def LL(self, u, v) -> LieElement:
        return self.g.LL(u, v)

    def L(self, u) -> LieElement:
        return self.g.L(u)


def _displayed_sp(g: TKKAlgebra, n: int):
    G = _Gen(g)
    E, H = {}, []
    for i in range(1, n + 1):
        eii = G.e(i, i)
        r = _vec(n, {i: 2})
        H.append((f"H_{{2e{i}}}=h_{{e{i}{i}}}", r, G.h(eii)))
        E[r] = (f"E_{{2e{i}}}=E+_{{e{i}{i}}}", G.Ep(eii))
        E[_neg(r)] = (f"E_{{-2e{i}}}=E-_{{e{i}{i}}}", G.Em(eii))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            eij, ejj = G.e(i, j), G.e(j, j)
            hi, hj = G.h(G.e(i, i)), G.h(ejj)
            rp = _vec(n, {i: 1, j: 1})
            rm = _vec(n, {i: 1, j: -1})
            H.append((f"H_{{e{i}+e{j}}}=h_ii+h_jj", rp, hi + hj))
            H.append((f"H_{{e{i}-e{j}}}=h_ii-h_jj", rm, hi - hj))
            E[rp] = (f"E_{{e{i}+e{j}}}=sqrt2 E+_{{e{i}{j}}}", G.Ep(eij).scale(_SQ2))
            E[_neg(rp)] = (f"E_{{-e{i}-e{j}}}=sqrt2 E-_{{e{i}{j}}}", G.Em(eij).scale(_SQ2))
            c = G.LL(eij, ejj).scale(4)
            E[rm] = (f"E_{{e{i}-e{j}}}=(h_eij+4[L_eij,L_ejj])/sqrt2", (G.h(eij) + c).scale(_INV_SQ2))
            E[_neg(rm)] = (f"E_{{-e{i}+e{j}}}=(h_eij-4[L_eij,L_ejj])/sqrt2", (G.h(eij) - c).scale(_INV_SQ2))
    return E, H


def _neg(r: tuple) -> tuple:
    return tuple(-c for c in r)


def _displayed_su(g: TKKAlgebra, n: int, corrected: bool = False):
    G = _Gen(g)
    N = 2 * n
    E, H = {}, []
    for i in range(1, n + 1):
        eii = G.e(i, i)
        r = _vec(N, {i: 1, n + i: -1})
        H.append((f"H_{{e{i}-e{n + i}}}=h_{{e{i}{i}}}", r, G.h(eii)))
        E[r] = (f"E_{{e{i}-e{n + i}}}=E+_{{e{i}{i}}}", G.Ep(eii))
        E[_neg(r)] = (f"E_{{-e{i}+e{n + i}}}=E-_{{e{i}{i}}}", G.Em(eii))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            eij, ea, ejj, eii = G.e(i, j), G.e(i, j, "i"), G.e(j, j), G.e(i, i)
            zp = eij + ea.scale(I)
            zm = eij - ea.scale(I)
            llz = G.LL(eij, ea).scale(-4 * I)
            for nb1, nb2 in ((0, 0), (0, n), (n, 0), (n, n)):
                eta1 = 1 if nb1 == 0 else -1
                eta2 = 1 if nb2 == 0 else -1
                sj = -eta2 if corrected else eta2
                r = _vec(N, {i + nb1: 1, j + nb2: -1})
                hpart = G.h(eii.scale(eta1) + ejj.scale(sj))
                lab = f"H_{{e{i + nb1}-e{j + nb2}}}=1/2(h_{{{eta1:+d}e{i}{i}{sj:+d}e{j}{j}}}-4i[L,L])"
                H.append((lab, r, (hpart + llz).scale(_HALF)))
            c = lambda u: G.LL(u, ejj).scale(4)
            E[_vec(N, {i: 1, j: -1})] = (f"E_{{e{i}-e{j}}}", (G.h(zp) + c(zp)).scale(_INV_2SQ2))
            E[_vec(N, {i: -1, j: 1})] = (f"E_{{-e{i}+e{j}}}", (G.h(zm) - c(zm)).scale(_INV_2SQ2))
            E[_vec(N, {n + i: 1, n + j: -1})] = (f"E_{{e{n + i}-e{n + j}}}", (G.h(zp) - c(zp)).scale(_INV_2SQ2))
            E[_vec(N, {n + i: -1, n + j: 1})] = (f"E_{{-e{n + i}+e{n + j}}}", (G.h(zm) + c(zm)).scale(_INV_2SQ2))
            E[_vec(N, {i: 1, n + j: -1})] = (f"E_{{e{i}-e{n + j}}}", G.Ep(zp).scale(_INV_SQ2))
            E[_vec(N, {i: -1, n + j: 1})] = (f"E_{{-e{i}+e{n + j}}}", G.Em(zm).scale(_INV_SQ2))
            E[_vec(N, {j: 1, n + i: -1})] = (f"E_{{e{j}-e{n + i}}}", G.Ep(zm).scale(_INV_SQ2))
            E[_vec(N, {j: -1, n + i: 1})] = (f"E_{{-e{j}+e{n + i}}}", G.Em(zp).scale(_INV_SQ2))
    return E, H


def _partner(i: int, n: int) -> int:
    return i + 1 if i < n else i - 1


def _displayed_so(g: TKKAlgebra, n: int, binding: str = "literal", handed: str = "left",
                  partner: Callable[[int, int], int] = None):
    """so*(4n) lines.

    ``binding`` fixes how the free index j of the e_i -+ e_{n+i} lines is
    read: "literal" takes the matrix e_ij (so e_ji^mu = -e_ij^mu), "minmax"
    takes e_{min,max}.  ``handed`` fixes the orientation of the units behind
    e^2, e^3, e^4: "right" is (i, j, k), "left" is (i, j, -k).
    """
    G = _Gen(g)
    N = 2 * n
    E, H = {}, []
    partner = partner or _partner
    sign4 = -ONE if handed == "left" else ONE

    def ee(a, b, mu=1):
        if binding == "minmax":
            a, b = min(a, b), max(a, b)
        unit = ("", "i", "j", "k")[mu - 1]
        x = G.e(a, b, unit)
        return x.scale(sign4) if mu == 4 else x

    for i in range(1, n + 1):
        j = partner(i, n)
        eii = G.e(i, i)
        e1, e2, e3, e4 = (ee(i, j, mu) for mu in (1, 2, 3, 4))
        rm = _vec(N, {i: 1, n + i: -1})
        rp = _vec(N, {i: 1, n + i: 1})
        H.append((f"H_{{e{i}-e{n + i}}}=2i([L1,L4]-[L2,L3]) (j={j})", rm,
                  (G.LL(e1, e4) - G.LL(e2, e3)).scale(2 * I)))
        H.append((f"H_{{e{i}+e{n + i}}}=h_{{e{i}{i}}}", rp, G.h(eii)))
        E[rp] = (f"E_{{e{i}+e{n + i}}}=E+_{{e{i}{i}}}", G.Ep(eii))
        E[_neg(rp)] = (f"E_{{-e{i}-e{n + i}}}=E-_{{e{i}{i}}}", G.Em(eii))
        L = G.L
        E[rm] = (f"E_{{e{i}-e{n + i}}}=[L2+iL3,L1-iL4] (j={j})",
                 (L(e2) + L(e3).scale(I)).bracket(L(e1) - L(e4).scale(I)))
        E[_neg(rm)] = (f"E_{{-e{i}+e{n + i}}}=[L1+iL4,L2-iL3] (j={j})",
                       (L(e1) + L(e4).scale(I)).bracket(L(e2) - L(e3).scale(I)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            eii, ejj = G.e(i, i), G.e(j, j)
            e1, e2, e3, e4 = (ee(i, j, mu) for mu in (1, 2, 3, 4))
            for nb in (0, n):
                eta = ONE if nb == 0 else -ONE
                ie = I * eta
                a, b = nb + i, nb + j
                c, d = nb + i, n + j - nb
                # e_a - e_b
                r = _vec(N, {a: 1, b: -1})
                H.append((f"H_{{e{a}-e{b}}}", r,
                          (G.h(eii - ejj) + G.LL(e1, e4).scale(4 * ie)).scale(_HALF)))
                u = e1 - e4.scale(ie)
                E[r] = (f"E_{{e{a}-e{b}}}", (G.h(u) + G.LL(u, ejj).scale(4)).scale(_INV_2SQ2))
                u = e1 + e4.scale(ie)
                E[_neg(r)] = (f"E_{{-e{a}+e{b}}}", (G.h(u) - G.LL(u, ejj).scale(4)).scale(_INV_2SQ2))
                # e_c - e_d
                r = _vec(N, {c: 1, d: -1})
                H.append((f"H_{{e{c}-e{d}}}", r,
                          (G.h(eii - ejj) - G.LL(e2, e3).scale(4 * ie)).scale(_HALF)))
                u = e2 + e3.scale(ie)
                E[r] = (f"E_{{e{c}-e{d}}}", (G.h(u) + G.LL(u, ejj).scale(4)).scale(_INV_2SQ2))
                u = e2 - e3.scale(ie)
                E[_neg(r)] = (f"E_{{-e{c}+e{d}}}", (G.h(u) - G.LL(u, ejj).scale(4)).scale(_INV_2SQ2))
                # e_a + e_b
                r = _vec(N, {a: 1, b: 1})
                H.append((f"H_{{e{a}+e{b}}}", r,
                          (G.h(eii + ejj) - G.LL(e2, e3).scale(4 * ie)).scale(_HALF)))
                E[r] = (f"E_{{e{a}+e{b}}}", G.Ep(e2 + e3.scale(ie)).scale(_INV_SQ2))
                E[_neg(r)] = (f"E_{{-e{a}-e{b}}}", G.Em(e2 - e3.scale(ie)).scale(_INV_SQ2))
                # e_c + e_d
                r = _vec(N, {c: 1, d: 1})
                H.append((f"H_{{e{c}+e{d}}}", r,
                          (G.h(eii + ejj) + G.LL(e1, e4).scale(4 * ie)).scale(_HALF)))
                E[r] = (f"E_{{e{c}+e{d}}}", G.Ep(e1 - e4.scale(ie)).scale(_INV_SQ2))
                E[_neg(r)] = (f"E_{{-e{c}-e{d}}}", G.Em(e1 + e4.scale(ie)).scale(_INV_SQ2))
    return E, H


def _conj_elem(u: JordanElement) -> JordanElement:
    return u.algebra.element(c.conjugate() for c in u.coeffs)


def _displayed_e7(g: TKKAlgebra):
    G = _Gen(g)
    E, H = {}, []
    si = I  # sqrt(-1)

    def z(a, b, u1, u2, s):
        # (e_ab^u1 + s*sqrt(-1) e_ab^u2)/sqrt2
        return (G.e(a, b, u1) + G.e(a, b, u2).scale(si * s)).scale(_INV_SQ2)

    zs = {1: z(1, 2, "", "i", 1), 2: z(1, 2, "j", "k", 1),
          4: z(1, 2, "l", "il", 1), 5: z(1, 2, "jl", "kl", -1)}
    nc: list = []  # (coords, label, jordan element) for E_alpha = E+_z

    nc.append((_vec(8, {6: 1, 3: 1}), "E_{e6+e3}=E+_{e22}", G.e(2, 2)))
    nc.append((_vec(8, {6: 1, 3: -1}), "E_{e6-e3}=E+_{e11}", G.e(1, 1)))
    for i, zi in zs.items():
        nc.append((_vec(8, {6: 1, i: 1}), f"E_{{e6+e{i}}}=E+_{{z{i}}}", zi))
        nc.append((_vec(8, {6: 1, i: -1}), f"E_{{e6-e{i}}}=E+_{{conj z{i}}}", _conj_elem(zi)))
    h = F(1, 2)

    def half(signs: dict, e3: int):
        # signs over (1,2,4,5); e3 sign; e6 = +, e7 = -, e8 = +
        v = [F(0)] * 8
        for k, s in signs.items():
            v[k - 1] = h * s
        v[2] = h * e3
        v[5], v[6], v[7] = h, -h, h
        return tuple(v)

    def beta(k: int, sgn: int):
        # beta(-k): minus on e_k only; beta(+k): plus on e_k only
        return half({q: (-1 if q == k else 1) if sgn < 0 else (1 if q == k else -1)
                     for q in (1, 2, 4, 5)}, 1)

    nc.append((beta(5, -1), "E_{beta(-5)}", z(2, 3, "jl", "kl", 1)))
    nc.append((beta(5, +1), "E_{beta(+5)}", z(2, 3, "jl", "kl", -1)))
    nc.append((beta(4, -1), "E_{beta(-4)}", z(2, 3, "l", "il", -1)))
    nc.append((beta(4, +1), "E_{beta(+4)}", z(2, 3, "l", "il", 1)))
    nc.append((beta(2, -1), "E_{beta(-2)}", z(2, 3, "j", "k", -1)))
    nc.append((beta(2, +1), "E_{beta(+2)}", z(2, 3, "j", "k", 1)))
    nc.append((beta(1, -1), "E_{beta(-1)}", z(2, 3, "", "i", 1)))
    nc.append((beta(1, +1), "E_{beta(+1)}", z(2, 3, "", "i", -1)))

    def mu(s5, s4, s2, s1):
        return half({5: s5, 4: s4, 2: s2, 1: s1}, -1)

    nc.append((mu(-1, -1, -1, -1), "E_{mu(4-)}", z(1, 3, "", "i", -1)))
    nc.append((mu(1, 1, 1, 1), "E_{mu(4+)}", z(1, 3, "", "i", 1)))
    nc.append((mu(-1, -1, 1, 1), "E_{mu(+1+2)}", z(1, 3, "j", "k", 1)))
    nc.append((mu(1, 1, -1, -1), "E_{mu(-1-2)}", z(1, 3, "j", "k", -1)))
    nc.append((mu(-1, 1, -1, 1), "E_{mu(+1+4)}", z(1, 3, "l", "il", 1)))
    nc.append((mu(1, -1, 1, -1), "E_{mu(-1-4)}", z(1, 3, "l", "il", -1)))
    nc.append((mu(-1, 1, 1, -1), "E_{mu(+2+4)}", z(1, 3, "jl", "kl", 1)))
    nc.append((mu(1, -1, -1, 1), "E_{mu(-2-4)}", z(1, 3, "jl", "kl", -1)))

    for r, lab, u in nc:
        E[r] = (lab, G.Ep(u))
        E[_neg(r)] = (lab.replace("E_{", "E_{-", 1) + " (E-_{conj z})", G.Em(_conj_elem(u)))

    idx = (1, 2, 4, 5)
    for a, b in itertools.combinations(idx, 2):
        za, zb = zs[a], zs[b]
        ca, cb = _conj_elem(za), _conj_elem(zb)
        E[_vec(8, {a: 1, b: 1})] = (f"E_{{e{a}+e{b}}}=[L_z{a},L_z{b}]", G.LL(za, zb))
        E[_vec(8, {a: -1, b: 1})] = (f"E_{{-e{a}+e{b}}}=[L_conjz{a},L_z{b}]", G.LL(ca, zb))
        E[_vec(8, {a: -1, b: -1})] = (f"E_{{-e{a}-e{b}}}=[L_conjz{a},L_conjz{b}]", G.LL(ca, cb))
        E[_vec(8, {a: 1, b: -1})] = (f"E_{{e{a}-e{b}}}=[L_z{a},L_conjz{b}]", G.LL(za, cb))
    e11 = G.e(1, 1)
    for a in idx:
        za, ca = zs[a], _conj_elem(zs[a])
        for s in (1, -1):
            E[_vec(8, {a: 1, 3: s})] = (f"E_{{e{a}{'+' if s > 0 else '-'}e3}}",
                                        (G.h(za) + G.LL(za, e11).scale(4 * s)).scale(_HALF))
            E[_vec(8, {a: -1, 3: s})] = (f"E_{{-e{a}{'+' if s > 0 else '-'}e3}}",
                                         (G.h(ca) + G.LL(ca, e11).scale(4 * s)).scale(_HALF))
    return E, H


def _complete(g: TKKAlgebra, roots: Sequence[Root], E: dict, prov: dict, rep: Report) -> None:
    """Fill missing root vectors by brackets [E_a, E_b] with a + b = missing root."""
    order = sorted((r.coords for r in roots), key=lambda c: (sum(abs(x) for x in c), c))
    rootset = {r.coords for r in roots}
    progress = True
    while progress:
        progress = False
        for target in order:
            if target in E:
                continue
            have = sorted(E)
            for a in have:
                b = tuple(t - x for t, x in zip(target, a))
                if b not in E or b not in rootset or a >= b:
                    continue
                v = E[a].bracket(E[b])
                if not v.is_zero():
                    E[target] = v
                    prov[target] = f"[{prov_label(a, prov)}, {prov_label(b, prov)}]"
                    progress = True
                    break
    missing = [c for c in order if c not in E]
    if missing:
        rep.fail("completion", [_root_label(c) for c in missing])


def prov_label(c, prov) -> str:
    return f"E_{{{_root_label(c)}}}"


def _spin_root_vectors(m: int):
    """Root vectors of so(2, m+1) pulled back to co(Gamma(m)) through phi^-1."""
    pm = phi_iso(m)
    so = pm.so
    r = (m + 3) // 2
    # Cartan: H_1 = -M_{-1,0}, H_j = M_{2j-3, 2j-2} (indices 1..m+1)
    Hs = [so.M(-1, 0).scale(-1)] + [so.M(2 * j - 3, 2 * j - 2) for j in range(2, r + 1)]
    N = so.dim
    ad = []
    for Hk in Hs:
        cols = [Hk.bracket(so.basis(t)).vec for t in range(N)]
        ad.append(cols)
    E = {}
    for root in _roots("spin", m):
        rows = []
        for k, cols in enumerate(ad):
            a_k = root.coords[k]
            # (ad H_k - a_k) x = 0, row-wise
            for i in range(N):
                row = {}
                for t in range(N):
                    v = cols[t].get(i)
                    if v:
                        row[t] = v
                if a_k:
                    row[i] = row.get(i, ZERO) - Scalar(a_k)
                    if not row[i]:
                        del row[i]
                if row:
                    rows.append(row)
        ns = nullspace(rows, N)
        if len(ns) != 1:
            raise ArithmeticError(f"root space of {root.label} has dimension {len(ns)}")
        vec = ns[0]
        E[root.coords] = (f"nullspace({root.label})", pm.apply_inverse(LieElement(so, vec)))
    return E, []


READINGS = {
    "hermC": ("corrected", "verbatim"),
    "hermH": ("left", "right", "minmax"),
}


def readings(kind: str) -> tuple:
    return READINGS.get(normalize_kind(kind), ("verbatim",))


@lru_cache(maxsize=None)
def cartan_basis(kind: str, n: int, reading: str | None = None) -> CartanBasis:
    """Materialize the Cartan basis of co(J) and validate it.

    ``reading`` picks between interpretations of ambiguous lines; the first
    entry of ``readings(kind)`` is the default.  su(n, n): "corrected" uses
    -eta on the e_jj term of the H lines, "verbatim" uses +eta.  so*(4n):
    "left" orients the quaternion units as (i, j, -k) with literal index
    binding, "right" as (i, j, k), "minmax" binds e_{min,max}.
    """
    kind = normalize_kind(kind)
    J = build_jordan(kind, n)
    g = build_tkk(J)
    roots = root_system(kind, n)
    reading = reading or readings(kind)[0]
    if reading not in readings(kind):
        raise ValueError(f"unknown reading {reading!r} for {kind}")
    rep = Report(f"cartan {kind}({n}) [{reading}]")
    if kind == "hermR":
        E, H = _displayed_sp(g, n)
    elif kind == "hermC":
        E, H = _displayed_su(g, n, corrected=(reading == "corrected"))
    elif kind == "hermH":
        E, H = _displayed_so(g, n, binding="minmax" if reading == "minmax" else "literal",
                             handed="right" if reading == "right" else "left")
    elif kind == "hermO":
        E, H = _displayed_e7(g)
    else:
        E, H = _spin_root_vectors(n)
    vecs = {c: v for c, (lab, v) in E.items()}
    prov = {c: lab for c, (lab, v) in E.items()}
    if kind == "hermO":
        _complete(g, roots, vecs, prov, rep)
    cb = CartanBasis(g, kind, n, roots, vecs, prov, displayed_H=H, report=rep)
    _validate(cb)
    return cb


def _validate(cb: CartanBasis) -> None:
    rep = cb.report
    rb = cb.root_by_coords
    for c in rb:
        if c not in cb.root_vectors:
            rep.fail("missing root vector", _root_label(c))
        elif cb.root_vectors[c].is_zero():
            rep.fail("zero root vector", _root_label(c))
    if not rep.ok:
        return
    # true coroots from [E_a, E_-a]
    for r in cb.roots:
        Ea, Em = cb.root_vectors[r.coords], cb.root_vectors[_neg(r.coords)]
        t = Ea.bracket(Em)
        mu = t.bracket(Ea).proportion(Ea)
        rep.checked += 1
        if mu is None or not mu:
            rep.fail("[[E_a,E_-a],E_a] not a nonzero multiple of E_a", r.label)
            continue
        hv = t.scale(Scalar(2) / mu)
        cb.coroots[r.coords] = hv
        cb.bracket_constants[r.coords] = mu / 2
    if not rep.ok:
        return
    cb.simple = simple_roots(cb.roots)
    # eigenvalue relations for every coroot and every root vector
    for a in cb.roots:
        Ha = cb.coroots[a.coords]
        for b in cb.roots:
            rep.checked += 1
            want = cb.root_vectors[b.coords].scale(Scalar(eval_weight(b.coords, a)))
            if Ha.bracket(cb.root_vectors[b.coords]) != want:
                rep.fail("[H_a, E_b] = b(H_a) E_b", [a.label, b.label])
    # the Cartan is abelian
    hs = cb.cartan_elements
    for x, y in itertools.combinations(hs, 2):
        rep.checked += 1
        if not x.bracket(y).is_zero():
            rep.fail("Cartan not abelian", None)
    # displayed H lines
    disp = []
    for label, coords, Hd in cb.displayed_H:
        a = rb[coords]
        ok = all(Hd.bracket(cb.root_vectors[b.coords])
                 == cb.root_vectors[b.coords].scale(Scalar(eval_weight(b.coords, a)))
                 for b in cb.roots)
        rep.checked += 1
        disp.append({"line": label, "ok": ok})
        if not ok:
            rep.fail("displayed H line", label)
    rep.details["displayed_H"] = disp
    # spanning: roots + simple coroots form a basis
    labels, vecs, tags = cb.ordered_basis()
    from ._linalg import rank
    rep.checked += 1
    if rank(v.vec for v in vecs) != cb.algebra.dim:
        rep.fail("Cartan basis does not span co(J)", None)
