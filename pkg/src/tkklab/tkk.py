"""Structure algebra str(J) and the conformal algebra co(J) = J + str(J) + J*.

Lie algebras are stored as structure constants over the :class:`Scalar`
field, which already contains ``i``, so complexified combinations such as
``E_u^+ = i L_u - (X_u - Y_u)/2`` are ordinary elements.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from ._linalg import Echelon, vaxpy, vscale
from .exactnum import I, ONE, ZERO, Scalar, as_scalar
from .jordan import (
    JordanAlgebra,
    JordanElement,
    LinearOperator,
    Report,
    build_jordan,
    jmul,
    lmul_op,
    rank_degree,
)

__all__ = [
    "LieAlgebra",
    "LieElement",
    "TKKAlgebra",
    "s_op",
    "triple",
    "build_str",
    "build_tkk",
    "epm_h",
    "verify_jacobi",
    "verify_epm_brackets",
    "str_dimension",
    "der_dimension",
]

_HALF = Scalar(Fraction(1, 2))


class LieAlgebra:
    """Finite-dimensional Lie algebra given by structure constants.

    ``sc[(i, j)]`` for ``i < j`` is the sparse vector ``[b_i, b_j]``; the
    opposite order is obtained by antisymmetry.
    """

    def __init__(self, labels: Iterable[str], sc: dict, name: str = ""):
        self.labels = tuple(labels)
        self.sc = {k: v for k, v in sc.items() if v}
        self.name = name
        for (i, j) in self.sc:
            if not i < j:
                raise ValueError("structure constants must be keyed with i < j")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket_basis(self, i: int, j: int) -> dict:
        if i < j:
            return self.sc.get((i, j), {})
        if i > j:
            v = self.sc.get((j, i))
            return {k: -c for k, c in v.items()} if v else {}
        return {}

    def bracket_vec(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                if i == j:
                    continue
                v = self.sc.get((i, j)) if i < j else self.sc.get((j, i))
                if not v:
                    continue
                c = a * b if i < j else -(a * b)
                vaxpy(out, c, v)
        return out

    def element(self, vec: dict | None = None) -> "LieElement":
        return LieElement(self, {k: as_scalar(v) for k, v in (vec or {}).items() if v})

    def basis(self, i: int) -> "LieElement":
        return LieElement(self, {i: ONE})

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def to_json(self) -> dict:
        br = {}
        for (i, j), v in sorted(self.sc.items()):
            br[f"{self.labels[i]},{self.labels[j]}"] = {
                self.labels[k]: c.to_json() for k, c in sorted(v.items())}
        return {"basis": list(self.labels), "brackets": br}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=None)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or '?'}, dim={self.dim})"


class LieElement:
    """Element of a :class:`LieAlgebra` as a sparse coefficient map."""

    __slots__ = ("algebra", "vec")

    def __init__(self, algebra: LieAlgebra, vec: dict):
        self.algebra = algebra
        self.vec = vec

    @property
    def coeffs(self) -> list[Scalar]:
        return [self.vec.get(i, ZERO) for i in range(self.algebra.dim)]

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.vec)
        vaxpy(out, ONE, other.vec)
        return LieElement(self.algebra, out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        out = dict(self.vec)
        vaxpy(out, -ONE, other.vec)
        return LieElement(self.algebra, out)

    def __neg__(self) -> "LieElement":
        return LieElement(self.algebra, {k: -v for k, v in self.vec.items()})

    def scale(self, c) -> "LieElement":
        return LieElement(self.algebra, vscale(self.vec, as_scalar(c)))

    def __mul__(self, c) -> "LieElement":
        return self.scale(c)

    __rmul__ = __mul__

    def bracket(self, other: "LieElement") -> "LieElement":
        return LieElement(self.algebra, self.algebra.bracket_vec(self.vec, other.vec))

    def is_zero(self) -> bool:
        return not self.vec

    def proportion(self, other: "LieElement") -> Scalar | None:
        """c with self = c*other, or None if not proportional (other nonzero)."""
        if not other.vec:
            return None
        k = min(other.vec)
        c = self.vec.get(k, ZERO) / other.vec[k]
        return c if (other.scale(c)).vec == self.vec else None

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and self.vec == other.vec

    def __hash__(self):
        return hash(frozenset(self.vec.items()))

    def __repr__(self) -> str:
        lab = self.algebra.labels
        terms = [f"({c})*{lab[k]}" for k, c in sorted(self.vec.items())]
        return " + ".join(terms) if terms else "0"


def bracket(a: LieElement, b: LieElement) -> LieElement:
    return a.bracket(b)


# ---------------------------------------------------------------------------
# structure algebra
# ---------------------------------------------------------------------------

def _op_s(J: JordanAlgebra, a: int, b: int) -> LinearOperator:
    La, Lb = J.L(a), J.L(b)
    ent = dict(La.commutator(Lb).entries)
    for c, v in J.prod[a][b].items():
        vaxpy(ent, v, J.L(c).entries)
    return LinearOperator(J.D, ent)


def s_op(u: JordanElement, v: JordanElement) -> LinearOperator:
    """S_uv = [L_u, L_v] + L_uv."""
    Lu, Lv = lmul_op(u), lmul_op(v)
    return Lu.commutator(Lv) + lmul_op(jmul(u, v))


def triple(u: JordanElement, v: JordanElement, z: JordanElement) -> JordanElement:
    """{u v z} = S_uv(z)."""
    return u.algebra.element(s_op(u, v).apply(list(z.coeffs)))


_STR_DIM = {
    "spin": lambda n: n * (n + 1) // 2 + 1,
    "hermR": lambda n: n * n,
    "hermC": lambda n: 2 * (n * n - 1) + 1,
    "hermH": lambda n: 4 * n * n,
    "hermO": lambda n: 79,
}

_DER_DIM = {
    "spin": lambda n: n * (n - 1) // 2,
    "hermR": lambda n: n * (n - 1) // 2,
    "hermC": lambda n: n * n - 1,
    "hermH": lambda n: n * (2 * n + 1),
    "hermO": lambda n: 52,
}


def str_dimension(kind: str, n: int) -> int:
    """Expected dim str(J) from the classification table."""
    return _STR_DIM[kind](n)


def der_dimension(kind: str, n: int) -> int:
    return _DER_DIM[kind](n)


class StrAlgebra(LieAlgebra):
    """str(J) with a basis of operators S_{b_a b_b} picked by greedy reduction."""

    def __init__(self, J: JordanAlgebra, ops: list[LinearOperator], pairs: list[tuple[int, int]],
                 echelon: Echelon, coord_table: dict, sc: dict):
        labels = [f"S[{J.labels[a]},{J.labels[b]}]" for a, b in pairs]
        super().__init__(labels, sc, name=f"str({J.kind}{J.n})")
        self.J = J
        self.ops = ops
        self.pairs = pairs
        self.echelon = echelon
        self.coord_table = coord_table  # (a, b) -> coords of S_{b_a b_b}

    def coords(self, op: LinearOperator) -> dict:
        return self.echelon.coords(op.flat())

    def operator(self, vec: dict) -> LinearOperator:
        out: dict = {}
        for k, c in vec.items():
            vaxpy(out, c, self.ops[k].entries)
        return LinearOperator(self.J.D, out)


@lru_cache(maxsize=None)
def build_str(J: JordanAlgebra) -> StrAlgebra:
    D = J.D
    ech = Echelon()
    ops: list[LinearOperator] = []
    pairs: list[tuple[int, int]] = []
    coord_table: dict = {}
    cand: dict = {}
    for a in range(D):
        for b in range(D):
            op = _op_s(J, a, b)
            cand[(a, b)] = op
            if ech.add(op.flat(), (a, b)):
                ops.append(op)
                pairs.append((a, b))
    dim = len(ops)
    want = str_dimension(J.kind, J.n) if J.kind != "hermR" or J.n >= 2 else 1
    if dim != want:
        raise ArithmeticError(f"dim str({J.kind},{J.n}) = {dim}, table says {want}")
    for key, op in cand.items():
        coord_table[key] = ech.coords(op.flat())
    sc = {}
    for k in range(dim):
        for l in range(k + 1, dim):
            v = ech.coords(ops[k].commutator(ops[l]).flat())
            if v:
                sc[(k, l)] = v
    return StrAlgebra(J, ops, pairs, ech, coord_table, sc)


# ---------------------------------------------------------------------------
# conformal algebra
# ---------------------------------------------------------------------------

class TKKAlgebra(LieAlgebra):
    """co(J) with basis X(b_1..b_D), str basis, Y(b_1..b_D) in that order."""

    def __init__(self, J: JordanAlgebra, st: StrAlgebra, sc: dict):
        D = J.D
        labels = ([f"X({l})" for l in J.labels] + list(st.labels)
                  + [f"Y({l})" for l in J.labels])
        super().__init__(labels, sc, name=f"co({J.kind}{J.n})")
        self.J = J
        self.str = st
        self.D = D
        self.s_dim = st.dim

    # index helpers
    def xi(self, a: int) -> int:
        return a

    def si(self, k: int) -> int:
        return self.D + k

    def yi(self, a: int) -> int:
        return self.D + self.s_dim + a

    def part(self, idx: int) -> str:
        if idx < self.D:
            return "X"
        if idx < self.D + self.s_dim:
            return "S"
        return "Y"

    def _embed(self, u: JordanElement, offset: int) -> LieElement:
        return LieElement(self, {offset + i: c for i, c in enumerate(u.coeffs) if c})

    def X(self, u: JordanElement | int) -> LieElement:
        if isinstance(u, int):
            return self.basis(self.xi(u))
        return self._embed(u, 0)

    def Y(self, u: JordanElement | int) -> LieElement:
        if isinstance(u, int):
            return self.basis(self.yi(u))
        return self._embed(u, self.D + self.s_dim)

    def S(self, u: JordanElement | int, v: JordanElement | int) -> LieElement:
        if isinstance(u, int) and isinstance(v, int):
            vec = self.str.coord_table[(u, v)]
        else:
            u = self.J.basis(u) if isinstance(u, int) else u
            v = self.J.basis(v) if isinstance(v, int) else v
            vec = self.str.coords(s_op(u, v))
        return LieElement(self, {self.D + k: c for k, c in vec.items()})

    def S_from_op(self, op: LinearOperator) -> LieElement:
        vec = self.str.coords(op)
        return LieElement(self, {self.D + k: c for k, c in vec.items()})

    def L(self, u: JordanElement | int) -> LieElement:
        """L_u, identified with S_{ue}."""
        if isinstance(u, int):
            return self.S_from_op(self.J.L(u))
        return self.S_from_op(lmul_op(u))

    def LL(self, u, v) -> LieElement:
        """[L_u, L_v] as an element of str."""
        Lu = self.J.L(u) if isinstance(u, int) else lmul_op(u)
        Lv = self.J.L(v) if isinstance(v, int) else lmul_op(v)
        return self.S_from_op(Lu.commutator(Lv))

    def str_operator(self, x: LieElement) -> LinearOperator:
        vec = {i - self.D: c for i, c in x.vec.items() if self.part(i) == "S"}
        return self.str.operator(vec)


@lru_cache(maxsize=None)
def build_tkk(J: JordanAlgebra) -> TKKAlgebra:
    st = build_str(J)
    D, s = J.D, st.dim
    xi = lambda a: a
    si = lambda k: D + k
    yi = lambda a: D + s + a
    # S' of each basis operator
    sprime = [_op_s(J, b, a) for (a, b) in st.pairs]
    sc: dict = {}
    for a in range(D):
        for b in range(D):
            v = st.coord_table[(a, b)]
            if v:
                sc[(xi(a), yi(b))] = {si(k): -2 * c for k, c in v.items()}
    for k in range(s):
        op = st.ops[k]
        for b in range(D):
            col = op.column(b)
            if col:
                # [S_k, X_b] = X_{S_k b}; stored with X index first
                sc[(xi(b), si(k))] = {xi(i): -c for i, c in col.items()}
            colp = sprime[k].column(b)
            if colp:
                # [S_k, Y_b] = -Y_{S'_k b}
                sc[(si(k), yi(b))] = {yi(i): -c for i, c in colp.items()}
        for l in range(k + 1, s):
            v = st.sc.get((k, l))
            if v:
                sc[(si(k), si(l))] = {si(m): c for m, c in v.items()}
    alg = TKKAlgebra(J, st, sc)
    if alg.dim != 2 * D + s:
        raise ArithmeticError("co(J) dimension mismatch")
    return alg


def epm_h(g: TKKAlgebra, u: JordanElement) -> tuple[LieElement, LieElement, LieElement]:
    """(E_u^+, E_u^-, h_u) with E^pm = i L_u -+ (X_u - Y_u)/2 and h = -i (X_u + Y_u)."""
    L = g.L(u).scale(I)
    d = (g.X(u) - g.Y(u)).scale(_HALF)
    h = (g.X(u) + g.Y(u)).scale(-I)
    return L - d, L + d, h


def verify_jacobi(L: LieAlgebra, indices: Iterable[int] | None = None) -> Report:
    """Jacobi identity on all unordered triples of distinct basis elements."""
    rep = Report(f"jacobi {L.name}")
    idx = list(range(L.dim)) if indices is None else list(indices)
    n = L.dim
    basis = [{i: ONE} for i in range(n)]
    # antisymmetry of stored data is structural; check it anyway on the stored keys
    for (i, j) in L.sc:
        if i >= j:
            rep.fail("antisymmetry", [i, j])
    for a, b, c in itertools.combinations(idx, 3):
        rep.checked += 1
        ab = L.bracket_basis(a, b)
        bc = L.bracket_basis(b, c)
        ca = L.bracket_basis(c, a)
        tot: dict = {}
        if ab:
            vaxpy(tot, ONE, L.bracket_vec(ab, basis[c]))
        if bc:
            vaxpy(tot, ONE, L.bracket_vec(bc, basis[a]))
        if ca:
            vaxpy(tot, ONE, L.bracket_vec(ca, basis[b]))
        if tot:
            rep.fail("jacobi", [L.labels[a], L.labels[b], L.labels[c]])
    return rep


def verify_epm_brackets(g: TKKAlgebra, elements: Iterable[JordanElement] | None = None) -> Report:
    """Bracket relations of E_u^+, E_u^- and h_u over all ordered pairs of ``elements``.

    Defaults to the Jordan basis.  Checked: [h_u, E_v^pm] = pm 2 E_uv^pm,
    [E_u^+, E_v^-] = -h_uv - 2[L_u, L_v], [E_u^+, E_v^+] = [E_u^-, E_v^-] = 0
    and [h_u, h_v] = 4[L_u, L_v].
    """
    J = g.J
    els = list(elements) if elements is not None else [J.basis(i) for i in range(J.D)]
    rep = Report(f"E/h brackets {g.name}")
    trip = [epm_h(g, u) for u in els]
    two, four = Scalar(2), Scalar(4)
    for (u, (Ep, Em, h)), (v, (Fp, Fm, k)) in itertools.product(zip(els, trip), repeat=2):
        uv = jmul(u, v)
        Ep_uv, Em_uv, h_uv = epm_h(g, uv)
        LL = g.LL(u, v)
        checks = (
            ("[h_u, E_v^+] = 2 E_uv^+", h.bracket(Fp), Ep_uv.scale(two)),
            ("[h_u, E_v^-] = -2 E_uv^-", h.bracket(Fm), Em_uv.scale(-two)),
            ("[E_u^+, E_v^-] = -h_uv - 2[L_u, L_v]", Ep.bracket(Fm), -h_uv - LL.scale(two)),
            ("[E_u^+, E_v^+] = 0", Ep.bracket(Fp), None),
            ("[E_u^-, E_v^-] = 0", Em.bracket(Fm), None),
            ("[h_u, h_v] = 4[L_u, L_v]", h.bracket(k), LL.scale(four)),
        )
        for name, got, want in checks:
            rep.checked += 1
            if (not got.is_zero()) if want is None else got != want:
                rep.fail(name, [repr(u), repr(v)])
    return rep
