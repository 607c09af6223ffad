"""Category algebras, skew category algebras and the twisted tensor product they embed in.

Basis conventions (relied on by the tests and by the CLI reports):

* ``kC`` has the morphisms of ``C`` as basis, in declaration order.
* ``R[C]`` has basis pairs ``(f, r_i)`` ordered by ``f`` first, then the basis
  of ``R(cod f)``.
* ``A = (x) R(x)`` has basis tuples in lexicographic order, first object major.
* A two-fold tensor ``U (x) V`` has index ``u * dim V + v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .algstruct import (
    AlgebraHom,
    FinAlgebra,
    GradedAlgebra,
    Precosheaf,
    validate_algebra,
    validate_hom,
)
from .errors import TwistingAxiomError
from .fincat import FinCategory, Violation
from .linalg import Field, LinearMap, rank

__all__ = [
    "TwistingMap",
    "category_algebra",
    "graded_category_algebra",
    "skew_category_algebra",
    "object_tensor_algebra",
    "tensor_product_algebra",
    "flip_twisting_map",
    "paper_twisting_map",
    "check_twisting_axioms",
    "twisted_tensor_product",
    "PsiEmbedding",
    "psi_embedding",
    "EmbeddingReport",
    "verify_embedding",
    "WeakBialgebraReport",
    "check_weak_bialgebra_unit_failure",
]


def _field_of(r: Precosheaf) -> Field:
    return next(iter(r.obj_alg.values())).field


def category_algebra(c: FinCategory, field: Field) -> FinAlgebra:
    """Convolution algebra: ``g . f = g o f`` when composable, else 0; unit is the sum of identities."""
    idx = {f: i for i, f in enumerate(c.mor_ids)}
    products = {}
    for g, f in c.composable_pairs():
        products[(idx[g], idx[f])] = {idx[c.compose(g, f)]: 1}
    unit = {idx[c.identities[x]]: 1 for x in c.objects}
    return FinAlgebra.from_products(field, c.mor_ids, products, unit, name=f"k{c.name}")


def graded_category_algebra(c: FinCategory, field: Field) -> GradedAlgebra:
    return GradedAlgebra(category_algebra(c, field), c, c.mor_ids)


def _skew_index(r: Precosheaf) -> tuple[list[tuple[str, int]], dict[tuple[str, int], int]]:
    c = r.category
    basis = [(f.id, i) for f in c.morphisms for i in range(r.obj_alg[f.cod].dim)]
    return basis, {b: n for n, b in enumerate(basis)}


def skew_category_algebra(r: Precosheaf) -> GradedAlgebra:
    """``(s g) * (r f) = s R(g)(r) (g o f)`` if composable, else 0; graded by the morphism."""
    c = r.category
    field = _field_of(r)
    basis, index = _skew_index(r)
    labels = [f"({f}, {r.obj_alg[c.cod(f)].labels[i]})" for f, i in basis]
    products = {}
    for a, (g, i) in enumerate(basis):
        Rcg = r.obj_alg[c.cod(g)]
        for b, (f, j) in enumerate(basis):
            if not c.composable(g, f):
                continue
            gf = c.compose(g, f)
            moved = r.mor_hom[g](r.obj_alg[c.cod(f)].basis_vector(j))
            coords = Rcg.mul(Rcg.basis_vector(i), moved)
            entry = {index[(gf, k)]: x for k, x in enumerate(coords) if x}
            if entry:
                products[(a, b)] = entry
    unit = {}
    for x in c.objects:
        ux = r.obj_alg[x].unit
        for k, v in enumerate(ux):
            if v:
                unit[index[(c.identities[x], k)]] = v
    alg = FinAlgebra.from_products(field, labels, products, unit, name=f"{r.name}[{c.name}]")
    return GradedAlgebra(alg, c, tuple(f for f, _ in basis))


def _tensor_of(algs: Sequence[FinAlgebra], field: Field, name: str) -> FinAlgebra:
    """Componentwise product on the lexicographic tensor basis."""
    shapes = [range(a.dim) for a in algs]
    tuples = list(itertools.product(*shapes))
    index = {t: n for n, t in enumerate(tuples)}
    labels = ["(x)".join(a.labels[i] for a, i in zip(algs, t)) if algs else "1" for t in tuples]
    products = {}
    for p, s in enumerate(tuples):
        for q, t in enumerate(tuples):
            factors = [a.table[i][j] for a, i, j in zip(algs, s, t)]
            entry = _expand_pure(factors, index)
            if entry:
                products[(p, q)] = entry
    unit = _expand_pure([a.unit for a in algs], index)
    return FinAlgebra.from_products(field, labels, products, unit, name=name)


def _expand_pure(factors: Sequence[Sequence], index: dict) -> dict:
    """Coordinates of a pure tensor ``v1 (x) v2 (x) ...`` in the lexicographic basis."""
    supports = [[(k, x) for k, x in enumerate(v) if x] for v in factors]
    out = {}
    for combo in itertools.product(*supports):
        coeff = 1
        for _, x in combo:
            coeff = x * coeff
        key = index[tuple(k for k, _ in combo)]
        out[key] = out.get(key, 0) + coeff
    return {k: v for k, v in out.items() if v}


def object_tensor_algebra(r: Precosheaf) -> FinAlgebra:
    c = r.category
    return _tensor_of([r.obj_alg[x] for x in c.objects], _field_of(r), name=f"(x){r.name}")


def tensor_product_algebra(a: FinAlgebra, b: FinAlgebra) -> FinAlgebra:
    return _tensor_of([a, b], a.field, name=f"{a.name}(x){b.name}")


# ---------------------------------------------------------------------------
# twisting maps


@dataclass(frozen=True)
class TwistingMap:
    """``tau: B (x) A -> A (x) B``; column ``b * dim A + a`` is the image of ``b (x) a``."""

    alg_a: FinAlgebra
    alg_b: FinAlgebra
    map: LinearMap

    def __post_init__(self):
        n = self.alg_a.dim * self.alg_b.dim
        if self.map.shape != (n, n):
            raise ValueError(f"twisting map must be {n}x{n}, got {self.map.shape}")

    def image(self, b: int, a: int) -> dict[tuple[int, int], object]:
        """``tau(b (x) a)`` as a sparse dict keyed by ``(a', b')``."""
        db = self.alg_b.dim
        col = self.map.column(b * self.alg_a.dim + a)
        return {(k // db, k % db): x for k, x in enumerate(col) if x}


def flip_twisting_map(a: FinAlgebra, b: FinAlgebra) -> TwistingMap:
    field = a.field
    n = a.dim * b.dim
    cols = []
    for bi in range(b.dim):
        for ai in range(a.dim):
            v = [field.zero] * n
            v[ai * b.dim + bi] = field.one
            cols.append(v)
    return TwistingMap(a, b, LinearMap.from_columns(field, cols, n))


def paper_twisting_map(r: Precosheaf) -> TwistingMap:
    """``f (x) (r_x) -> (r'_t) (x) f``: the ``cod f`` slot becomes ``R(f)(r_{dom f})``, others unchanged."""
    c = r.category
    field = _field_of(r)
    A = object_tensor_algebra(r)
    B = category_algebra(c, field)
    algs = [r.obj_alg[x] for x in c.objects]
    pos = {x: n for n, x in enumerate(c.objects)}
    tuples = list(itertools.product(*[range(a.dim) for a in algs]))
    index = {t: n for n, t in enumerate(tuples)}
    n = A.dim * B.dim
    cols = []
    for fi, f in enumerate(c.mor_ids):
        d, cd = pos[c.dom(f)], pos[c.cod(f)]
        for t in tuples:
            moved = r.mor_hom[f](algs[d].basis_vector(t[d]))
            v = [field.zero] * n
            for k, x in enumerate(moved):
                if x:
                    t2 = list(t)
                    t2[cd] = k
                    v[index[tuple(t2)] * B.dim + fi] = v[index[tuple(t2)] * B.dim + fi] + x
            cols.append(v)
    return TwistingMap(A, B, LinearMap.from_columns(field, cols, n))


def _add(acc: dict, key, x) -> None:
    y = acc.get(key, 0) + x
    if y:
        acc[key] = y
    else:
        acc.pop(key, None)


def check_twisting_axioms(t: TwistingMap) -> list[Violation]:
    """Both unit conditions and the hexagon identity, on every basis tuple.

    Bilinearity of every map involved means basis tuples suffice.
    """
    A, B = t.alg_a, t.alg_b
    out = []
    one_a = [(k, x) for k, x in enumerate(A.unit) if x]
    one_b = [(k, x) for k, x in enumerate(B.unit) if x]

    for b in range(B.dim):
        got: dict = {}
        for a, x in one_a:
            for key, y in t.image(b, a).items():
                _add(got, key, x * y)
        want = {}
        for a, x in one_a:
            _add(want, (a, b), x)
        if got != want:
            out.append(Violation("twist-unit-A", (B.labels[b],), "tau(b (x) 1_A) != 1_A (x) b"))
    for a in range(A.dim):
        got = {}
        for b, x in one_b:
            for key, y in t.image(b, a).items():
                _add(got, key, x * y)
        want = {}
        for b, x in one_b:
            _add(want, (a, b), x)
        if got != want:
            out.append(Violation("twist-unit-B", (A.labels[a],), "tau(1_B (x) a) != a (x) 1_B"))

    images = {(b, a): t.image(b, a) for b in range(B.dim) for a in range(A.dim)}
    for g in range(B.dim):
        for f in range(B.dim):
            gf = B.table[g][f]
            for s in range(A.dim):
                for r in range(A.dim):
                    sr = A.table[s][r]
                    lhs: dict = {}
                    for bk, bx in enumerate(gf):
                        if not bx:
                            continue
                        for ak, ax in enumerate(sr):
                            if not ax:
                                continue
                            for key, y in images[(bk, ak)].items():
                                _add(lhs, key, bx * ax * y)
                    rhs: dict = {}
                    # g (x) f (x) s (x) r  ->  g (x) tau(f (x) s) (x) r
                    for (s1, f1), x1 in images[(f, s)].items():
                        # tau(g (x) s1) (x) tau(f1 (x) r)
                        for (s2, g2), x2 in images[(g, s1)].items():
                            for (r2, f2), x3 in images[(f1, r)].items():
                                # s2 (x) tau(g2 (x) r2) (x) f2
                                for (r3, g3), x4 in images[(g2, r2)].items():
                                    coeff = x1 * x2 * x3 * x4
                                    aprod = A.table[s2][r3]
                                    bprod = B.table[g3][f2]
                                    for ak, ax in enumerate(aprod):
                                        if not ax:
                                            continue
                                        for bk, bx in enumerate(bprod):
                                            if bx:
                                                _add(rhs, (ak, bk), coeff * ax * bx)
                    if lhs != rhs:
                        out.append(
                            Violation(
                                "twist-hexagon",
                                (B.labels[g], B.labels[f], A.labels[s], A.labels[r]),
                            )
                        )
    return out


def twisted_tensor_product(t: TwistingMap, check: bool = True) -> FinAlgebra:
    """``A (x) B`` with ``mu_tau = (mu_A (x) mu_B) o (id (x) tau (x) id)``; refuses an invalid twist."""
    if check:
        bad = check_twisting_axioms(t)
        if bad:
            v = bad[0]
            raise TwistingAxiomError(v.axiom, v.witness, f"{len(bad)} twisting-axiom violations")
    A, B = t.alg_a, t.alg_b
    field = A.field
    db = B.dim
    labels = [f"{A.labels[a]}|{B.labels[b]}" for a in range(A.dim) for b in range(db)]
    products = {}
    for a1 in range(A.dim):
        for b1 in range(db):
            for a2 in range(A.dim):
                for b2 in range(db):
                    acc: dict = {}
                    for (a3, b3), x in t.image(b1, a2).items():
                        for ak, ax in enumerate(A.table[a1][a3]):
                            if not ax:
                                continue
                            for bk, bx in enumerate(B.table[b3][b2]):
                                if bx:
                                    _add(acc, ak * db + bk, x * ax * bx)
                    if acc:
                        products[(a1 * db + b1, a2 * db + b2)] = acc
    unit = {}
    for ak, ax in enumerate(A.unit):
        for bk, bx in enumerate(B.unit):
            if ax and bx:
                unit[ak * db + bk] = ax * bx
    return FinAlgebra.from_products(field, labels, products, unit, name=f"{A.name}(x)_tau {B.name}")


# ---------------------------------------------------------------------------
# the embedding of R[C] into A (x)_tau kC


@dataclass(frozen=True)
class PsiEmbedding:
    skew: GradedAlgebra
    twisted: FinAlgebra
    psi: LinearMap  # R[C] -> A (x)_tau kC
    phi: LinearMap  # A (x)_tau kC -> R[C]


def psi_embedding(r: Precosheaf, twisted: FinAlgebra | None = None) -> PsiEmbedding:
    """``Psi(r f)`` puts ``r`` in the ``cod f`` slot and units elsewhere; ``Phi`` reads the ``cod f`` slot back."""
    c = r.category
    field = _field_of(r)
    skew = skew_category_algebra(r)
    if twisted is None:
        twisted = twisted_tensor_product(paper_twisting_map(r))
    algs = [r.obj_alg[x] for x in c.objects]
    pos = {x: n for n, x in enumerate(c.objects)}
    tuples = list(itertools.product(*[range(a.dim) for a in algs]))
    index = {t: n for n, t in enumerate(tuples)}
    dimA, db = len(tuples), len(c.mor_ids)
    basis, sk_index = _skew_index(r)

    psi_cols = []
    for f, i in basis:
        slot = pos[c.cod(f)]
        factors = [a.unit for a in algs]
        factors[slot] = algs[slot].basis_vector(i)
        v = [field.zero] * (dimA * db)
        fi = c.index(f)
        for k, x in _expand_pure(factors, index).items():
            v[k * db + fi] = field(x)
        psi_cols.append(v)
    psi = LinearMap.from_columns(field, psi_cols, dimA * db)

    # read the cod f slot; every other slot is weighted by a functional with eps(1) = 1,
    # which keeps Phi linear and makes it a left inverse of Psi
    eps = []
    for a in algs:
        p = next(k for k, x in enumerate(a.unit) if x)
        eps.append((p, field.one / field(a.unit[p])))
    phi_cols = []
    for t in tuples:
        for fi, f in enumerate(c.mor_ids):
            v = [field.zero] * len(basis)
            slot = pos[c.cod(f)]
            w = field.one
            for n, (p, inv) in enumerate(eps):
                if n != slot:
                    w = w * inv if t[n] == p else field.zero
            if w:
                v[sk_index[(f, t[slot])]] = w
            phi_cols.append(v)
    phi = LinearMap.from_columns(field, phi_cols, len(basis))
    return PsiEmbedding(skew, twisted, psi, phi)


@dataclass(frozen=True)
class EmbeddingReport:
    dim_skew: int
    dim_twisted: int
    twisting_violations: tuple[Violation, ...]
    twisted_violations: tuple[Violation, ...]
    hom_violations: tuple[Violation, ...]
    left_inverse: bool
    rank: int
    injective: bool
    surjective: bool
    phi_grading: bool

    @property
    def unital(self) -> bool:
        return not any(v.axiom == "unital" for v in self.hom_violations)

    @property
    def multiplicative(self) -> bool:
        return not any(v.axiom == "multiplicative" for v in self.hom_violations)

    @property
    def passed(self) -> bool:
        return (
            not self.twisting_violations
            and not self.twisted_violations
            and not self.hom_violations
            and self.left_inverse
            and self.injective
            and self.phi_grading
        )


def verify_embedding(r: Precosheaf) -> EmbeddingReport:
    """Check that Psi is a unital injective algebra map with left inverse Phi."""
    t = paper_twisting_map(r)
    tw_bad = check_twisting_axioms(t)
    twisted = twisted_tensor_product(t, check=False)
    alg_bad = validate_algebra(twisted)
    emb = psi_embedding(r, twisted)
    skew = emb.skew.algebra
    hom_bad = validate_hom(AlgebraHom(skew, twisted, emb.psi))
    ident = LinearMap.identity(skew.field, skew.dim)
    rk = rank(emb.psi)
    # Phi sends the f-column block of A (x) kC into the f-component of R[C]
    db = len(r.category.mor_ids)
    grading_ok = True
    for col in range(emb.phi.cols):
        f = r.category.mor_ids[col % db]
        image = emb.phi.column(col)
        if any(x and emb.skew.degree[k] != f for k, x in enumerate(image)):
            grading_ok = False
            break
    return EmbeddingReport(
        dim_skew=skew.dim,
        dim_twisted=twisted.dim,
        twisting_violations=tuple(tw_bad),
        twisted_violations=tuple(alg_bad),
        hom_violations=tuple(hom_bad),
        left_inverse=(emb.phi @ emb.psi) == ident,
        rank=rk,
        injective=rk == skew.dim,
        surjective=rk == twisted.dim,
        phi_grading=grading_ok,
    )


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeakBialgebraReport:
    delta_multiplicative: bool
    unit_axiom_holds: bool
    multiplicative_witnesses: tuple[tuple[str, str], ...] = ()


def check_weak_bialgebra_unit_failure(c: FinCategory, field: Field) -> WeakBialgebraReport:
    """Diagonal comultiplication ``f -> f (x) f``: multiplicative, but unital only with one object."""
    kc = category_algebra(c, field)
    kk = tensor_product_algebra(kc, kc)
    n = kc.dim

    def delta(v: Sequence) -> tuple:
        out = [field.zero] * (n * n)
        for i, x in enumerate(v):
            if x:
                out[i * n + i] = out[i * n + i] + x
        return tuple(out)

    bad = []
    for i in range(n):
        for j in range(n):
            lhs = delta(kc.table[i][j])
            rhs = kk.mul(delta(kc.basis_vector(i)), delta(kc.basis_vector(j)))
            if lhs != rhs:
                bad.append((kc.labels[i], kc.labels[j]))
    unit_ok = delta(kc.unit) == kk.unit
    return WeakBialgebraReport(not bad, unit_ok, tuple(bad))
