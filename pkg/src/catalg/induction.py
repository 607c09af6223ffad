"""Turull and Puig induction along a functor that is injective on objects and surjective on morphisms.

Everything is computed numerically and every step that the theory claims is
well defined is also checked; a failed check raises
:class:`~catalg.errors.WellDefinednessError` naming the axiom and a witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algstruct import (
    AlgebraHom,
    CatModule,
    FinAlgebra,
    InteriorAlgebra,
    Precosheaf,
    subalgebra,
    validate_algebra,
    validate_hom,
    validate_precosheaf,
)
from .constructions import category_algebra, skew_category_algebra
from .errors import PreconditionError, WellDefinednessError
from .fincat import (
    Functor,
    MorPartition,
    Violation,
    check_condition_423,
    id_class,
    require_surjective_profile,
    sim_partition,
)
from .linalg import (
    Field,
    LinearMap,
    QuotientMap,
    Subspace,
    kernel,
    quotient_map,
    rank,
    simultaneous_fixed_space,
)

__all__ = [
    "InductionContext",
    "SMonoid",
    "TurullInduced",
    "PuigInduced",
    "ComparisonReport",
    "ThetaReport",
    "ms_subspace",
    "ms_subspace_fixed",
    "ms_algebra",
    "mbar_module",
    "turull_induce",
    "s_monoid",
    "check_commutation",
    "skew_as_interior",
    "puig_induce",
    "thm13_isomorphism",
    "theta_check",
]


@dataclass(frozen=True)
class InductionContext:
    functor: Functor
    precosheaf: Precosheaf
    partition: MorPartition
    id_classes: Mapping[str, tuple[str, ...]]
    condition_423: bool

    @classmethod
    def build(cls, functor: Functor, precosheaf: Precosheaf) -> "InductionContext":
        if precosheaf.category != functor.source:
            raise PreconditionError("precosheaf must live on the source category of the functor")
        require_surjective_profile(functor)
        return cls(
            functor,
            precosheaf,
            sim_partition(functor),
            {x: id_class(functor, x) for x in functor.source.objects},
            check_condition_423(functor).holds,
        )

    @property
    def source(self):
        return self.functor.source

    @property
    def target(self):
        return self.functor.target

    @property
    def field(self) -> Field:
        return next(iter(self.precosheaf.obj_alg.values())).field

    def preimage_object(self, xp: str) -> str:
        return self.functor.object_preimage(xp)


# ---------------------------------------------------------------------------
# Turull side


def ms_subspace_kernel(ctx: InductionContext, x: str) -> Subspace:
    """Elements on which any two equivalent morphisms out of ``x`` agree."""
    S, D = ctx.precosheaf, ctx.source
    Sx = S.obj_alg[x]
    blocks = []
    for f in D.mor_ids:
        if D.dom(f) != x:
            continue
        for g in ctx.partition.cls(f):
            if g != f:
                blocks.append(S.mor_hom[f].map - S.mor_hom[g].map)
    if not blocks:
        return Subspace.full(Sx.field, Sx.dim)
    stacked = blocks[0]
    for b in blocks[1:]:
        stacked = stacked.vstack(b)
    return kernel(stacked)


def ms_subspace_fixed(ctx: InductionContext, x: str) -> Subspace:
    """Elements fixed by ``S(f)`` for every ``f`` in the identity class of ``x``."""
    S = ctx.precosheaf
    Sx = S.obj_alg[x]
    return simultaneous_fixed_space([S.mor_hom[f].map for f in ctx.id_classes[x]], Sx.dim, Sx.field)


def ms_subspace(ctx: InductionContext, x: str) -> Subspace:
    sub = ms_subspace_kernel(ctx, x)
    if ctx.condition_423:
        alt = ms_subspace_fixed(ctx, x)
        if alt != sub:
            raise WellDefinednessError("ms-fixed-point-agreement", (x,), "kernel and fixed-point forms differ")
    return sub


def ms_algebra(ctx: InductionContext, x: str) -> FinAlgebra:
    Sx = ctx.precosheaf.obj_alg[x]
    return subalgebra(Sx, ms_subspace(ctx, x), name=f"M_{ctx.precosheaf.name}({x})")


def _lift_coords(sub: Subspace, coords: Sequence) -> tuple:
    field = sub.field
    out = [field.zero] * sub.ambient_dim
    for c, v in zip(coords, sub.basis):
        if c:
            out = [a + c * b for a, b in zip(out, v)]
    return tuple(out)


def mbar_module(ctx: InductionContext) -> CatModule:
    """``(+)_x M_S(x)`` as a left module over the category algebra of the target."""
    D, C = ctx.source, ctx.target
    field = ctx.field
    subs = {x: ms_subspace(ctx, x) for x in D.objects}
    blocks, off = {}, 0
    for xp in C.objects:
        x = ctx.preimage_object(xp)
        blocks[xp] = (off, subs[x].dim)
        off += subs[x].dim
    n = off
    action = {}
    for g in C.mor_ids:
        pre = ctx.functor.preimages(g)
        first = None
        for f in pre:
            mat = _restricted(ctx, f, subs)
            if first is None:
                first = mat
            elif mat != first:
                raise WellDefinednessError("mbar-action", (g, f), "preimages act differently on M_S")
        data = [[field.zero] * n for _ in range(n)]
        (do, dn) = blocks[C.dom(g)]
        (co, cn) = blocks[C.cod(g)]
        for i in range(cn):
            for j in range(dn):
                data[co + i][do + j] = first.entries[i][j]
        action[g] = LinearMap(field, n, n, tuple(tuple(r) for r in data))
    module = CatModule(C, n, action, blocks)
    unit = LinearMap.zero(field, n, n)
    for xp in C.objects:
        unit = unit + action[C.identities[xp]]
    if unit != LinearMap.identity(field, n):
        raise WellDefinednessError("mbar-unit", (), "sum of identities does not act as the identity")
    return module


def _restricted(ctx: InductionContext, f: str, subs: Mapping[str, Subspace]) -> LinearMap:
    """``S(f)`` restricted to ``M_S(dom f)`` and corestricted to ``M_S(cod f)``."""
    D = ctx.source
    src, tgt = subs[D.dom(f)], subs[D.cod(f)]
    mat = ctx.precosheaf.mor_hom[f].map
    cols = []
    for b in src.basis:
        img = mat.apply(b)
        if not tgt.contains(img):
            raise WellDefinednessError("restriction-lands", (f,), "S(f) leaves M_S(cod f)")
        cols.append(tgt.coordinates(img))
    return LinearMap.from_columns(ctx.field, cols, tgt.dim)


@dataclass(frozen=True)
class TurullInduced:
    context: InductionContext
    subspaces: Mapping[str, Subspace]  # keyed by source object
    precosheaf: Precosheaf  # on the target category


def turull_induce(ctx: InductionContext) -> TurullInduced:
    D, C = ctx.source, ctx.target
    subs = {x: ms_subspace(ctx, x) for x in D.objects}
    algs = {x: ms_algebra(ctx, x) for x in D.objects}
    obj_alg = {xp: algs[ctx.preimage_object(xp)] for xp in C.objects}
    homs = {}
    for g in C.mor_ids:
        mats = []
        for f in ctx.functor.preimages(g):
            mats.append((f, _restricted(ctx, f, subs)))
        f0, m0 = mats[0]
        for f, m in mats[1:]:
            if m != m0:
                raise WellDefinednessError("turull-preimage", (g, f0, f))
        homs[g] = AlgebraHom(obj_alg[C.dom(g)], obj_alg[C.cod(g)], m0)
    ind = Precosheaf(C, obj_alg, homs, name=f"IndT({ctx.precosheaf.name})")
    bad = validate_precosheaf(ind)
    if bad:
        v = bad[0]
        raise WellDefinednessError(v.axiom, v.witness, "induced data is not a precosheaf")
    return TurullInduced(ctx, subs, ind)


# ---------------------------------------------------------------------------
# the monoid of identity-class sums


@dataclass(frozen=True)
class SMonoid:
    context: InductionContext
    choices: tuple[tuple[str, ...], ...]  # one morphism per source object, in object order
    elements: tuple[tuple, ...]  # coordinate vectors in the source category algebra
    mult_table: tuple[tuple[int, ...], ...]
    neutral: int

    def __len__(self) -> int:
        return len(self.elements)

    def label(self, i: int) -> str:
        return "+".join(self.choices[i])

    def augmentation(self, i: int):
        return self.context.field.one


def s_monoid(ctx: InductionContext) -> SMonoid:
    D = ctx.source
    kD = category_algebra(D, ctx.field)
    choices = tuple(itertools.product(*[ctx.id_classes[x] for x in D.objects]))
    elements = []
    for ch in choices:
        v = [ctx.field.zero] * kD.dim
        for f in ch:
            v[D.index(f)] = v[D.index(f)] + ctx.field.one
        elements.append(tuple(v))
    lookup = {v: i for i, v in enumerate(elements)}
    if len(lookup) != len(elements):
        raise WellDefinednessError("monoid-distinct", (), "two choices give the same sum")
    table = []
    for i, a in enumerate(elements):
        row = []
        for j, b in enumerate(elements):
            p = kD.mul(a, b)
            if p not in lookup:
                raise WellDefinednessError("monoid-closure", (choices[i], choices[j]))
            row.append(lookup[p])
        table.append(tuple(row))
    neutral = lookup.get(kD.unit)
    if neutral is None:
        raise WellDefinednessError("monoid-neutral", (), "sum of identities missing")
    for i in range(len(elements)):
        if table[neutral][i] != i or table[i][neutral] != i:
            raise WellDefinednessError("monoid-neutral", choices[i])
    return SMonoid(ctx, choices, tuple(elements), tuple(table), neutral)


def check_commutation(ctx: InductionContext, monoid: SMonoid | None = None) -> tuple[list[tuple], list[Violation]]:
    """For every morphism ``f`` and monoid element ``s`` find ``s', s''`` with ``s.f = f.s'`` and ``f.s = s''.f``.

    Returns the witnesses ``(f, s, s', s'')`` (labels) and any failures.
    """
    monoid = monoid or s_monoid(ctx)
    D = ctx.source
    kD = category_algebra(D, ctx.field)
    witnesses, failures = [], []
    for f in D.mor_ids:
        fv = kD.basis_vector(D.index(f))
        fs = [kD.mul(fv, s) for s in monoid.elements]
        sf = [kD.mul(s, fv) for s in monoid.elements]
        for i in range(len(monoid)):
            s1 = next((j for j in range(len(monoid)) if fs[j] == sf[i]), None)
            s2 = next((j for j in range(len(monoid)) if sf[j] == fs[i]), None)
            if s1 is None:
                failures.append(Violation("commute-right", (f, monoid.label(i))))
            if s2 is None:
                failures.append(Violation("commute-left", (f, monoid.label(i))))
            if s1 is not None and s2 is not None:
                witnesses.append((f, monoid.label(i), monoid.label(s1), monoid.label(s2)))
    return witnesses, failures


# ---------------------------------------------------------------------------
# Puig side


def skew_as_interior(s: Precosheaf) -> InteriorAlgebra:
    """``sigma(f) = (f, 1_{S(cod f)})`` from the category algebra into the skew algebra."""
    D = s.category
    field = next(iter(s.obj_alg.values())).field
    graded = skew_category_algebra(s)
    skew = graded.algebra
    kD = category_algebra(D, field)
    offsets, off = {}, 0
    for f in D.morphisms:
        offsets[f.id] = off
        off += s.obj_alg[f.cod].dim
    cols = []
    for f in D.morphisms:
        v = [field.zero] * skew.dim
        for k, x in enumerate(s.obj_alg[f.cod].unit):
            v[offsets[f.id] + k] = x
        cols.append(v)
    sigma = AlgebraHom(kD, skew, LinearMap.from_columns(field, cols, skew.dim))
    bad = validate_hom(sigma)
    if bad:
        v = bad[0]
        raise WellDefinednessError(f"sigma-{v.axiom}", v.witness)
    for j, f in enumerate(D.mor_ids):
        if any(x and graded.degree[k] != f for k, x in enumerate(sigma.map.column(j))):
            raise WellDefinednessError("sigma-graded", (f,))
    return InteriorAlgebra(skew, kD, sigma)


@dataclass(frozen=True)
class PuigInduced:
    context: InductionContext
    interior: InteriorAlgebra
    relations: Subspace  # span of sigma(s) c - c inside C
    quotient: QuotientMap
    right_actions: tuple[LinearMap, ...]  # on the quotient, one per monoid element
    fixed: Subspace  # inside the quotient
    algebra: FinAlgebra
    tau_bar: AlgebraHom  # category algebra of the target -> algebra

    def fixed_coords(self, c: Sequence) -> tuple:
        """Coordinates in ``algebra`` of the class of ``c`` (an element of C); raises if not fixed."""
        q = self.quotient.proj.apply(c)
        if not self.fixed.contains(q):
            raise WellDefinednessError("class-not-fixed", ())
        return self.fixed.coordinates(q)


def puig_induce(ctx: InductionContext, ia: InteriorAlgebra, monoid: SMonoid | None = None) -> PuigInduced:
    if not ctx.condition_423:
        witnesses = check_condition_423(ctx.functor).witnesses
        raise PreconditionError(f"the coset condition fails for {ctx.functor.name}: {witnesses[:1]}")
    bad = validate_algebra(ia.algebra) + validate_hom(ia.structural)
    if bad:
        raise PreconditionError(f"interior algebra invalid: {bad[0]}")
    monoid = monoid or s_monoid(ctx)
    C = ia.algebra
    field = C.field
    n = C.dim
    sig = [ia.structural(s) for s in monoid.elements]

    # k (x)_{kS} C = C / span{sigma(s) c - c}
    ident = LinearMap.identity(field, n)
    rel_vectors = []
    for sv in sig:
        rel_vectors.extend((C.left_mult(sv) - ident).columns())
    N = Subspace.span(field, n, rel_vectors)
    Q = quotient_map(n, N)

    actions = []
    for i, sv in enumerate(sig):
        R = C.right_mult(sv)
        for v in N.basis:
            if not N.contains(R.apply(v)):
                raise WellDefinednessError("right-action-relations", (monoid.label(i),))
        actions.append(Q.proj @ R @ Q.section)
    F = simultaneous_fixed_space(actions, Q.dim, field)

    lifts = [Q.section.apply(v) for v in F.basis]
    # products are independent of representatives: N is a left ideal, and
    # fixed left factors kill N on the right modulo N
    for v in N.basis:
        for u in lifts:
            if any(Q.proj.apply(C.mul(v, u))) or any(Q.proj.apply(C.mul(u, v))):
                raise WellDefinednessError("product-representative", ())
        for w in N.basis:
            if any(Q.proj.apply(C.mul(v, w))):
                raise WellDefinednessError("product-representative", ())

    table = []
    for u in lifts:
        row = []
        for w in lifts:
            q = Q.proj.apply(C.mul(u, w))
            if not F.contains(q):
                raise WellDefinednessError("product-fixed", ())
            row.append(F.coordinates(q))
        table.append(tuple(row))
    unit_q = Q.proj.apply(C.unit)
    if not F.contains(unit_q):
        raise WellDefinednessError("unit-fixed", ())
    labels = tuple(f"[{i}]" for i in range(F.dim))
    algebra = FinAlgebra(field, labels, tuple(table), F.coordinates(unit_q), name=f"IndP({C.name})")
    bad = validate_algebra(algebra)
    if bad:
        raise WellDefinednessError(f"induced-{bad[0].axiom}", bad[0].witness)

    # structural map from the target category algebra
    Cc = ctx.target
    kC = category_algebra(Cc, field)
    D = ctx.source
    cols = []
    for g in Cc.mor_ids:
        images = []
        for f in ctx.functor.preimages(g):
            images.append(Q.proj.apply(ia.structural.map.column(D.index(f))))
        if any(im != images[0] for im in images[1:]):
            raise WellDefinednessError("tau-bar-preimage", (g,))
        if not F.contains(images[0]):
            raise WellDefinednessError("tau-bar-fixed", (g,))
        cols.append(F.coordinates(images[0]))
    tau_bar = AlgebraHom(kC, algebra, LinearMap.from_columns(field, cols, F.dim))
    bad = validate_hom(tau_bar)
    if bad:
        raise WellDefinednessError(f"tau-bar-{bad[0].axiom}", bad[0].witness)
    return PuigInduced(ctx, ia, N, Q, tuple(actions), F, algebra, tau_bar)


# ---------------------------------------------------------------------------
# comparison of the two inductions


@dataclass(frozen=True)
class ComparisonReport:
    psi: LinearMap
    dim_skew_source: int
    dim_relations: int
    dim_quotient: int
    dim_puig: int
    dim_turull_skew: int
    dim_expected: int
    is_unital: bool
    is_multiplicative: bool
    is_bijective: bool
    is_graded: bool
    is_interior_compatible: bool
    components_span: bool
    failures: tuple[Violation, ...]

    @property
    def is_algebra_iso(self) -> bool:
        return self.is_unital and self.is_multiplicative and self.is_bijective

    @property
    def passed(self) -> bool:
        return (
            self.is_algebra_iso
            and self.is_graded
            and self.is_interior_compatible
            and self.components_span
            and self.dim_puig == self.dim_turull_skew == self.dim_expected
        )


def _natural_lift(ctx: InductionContext, f: str, m: Sequence) -> tuple:
    """The element ``(f, m)`` of the skew algebra of the source, ``m`` given in ``S(cod f)`` coordinates."""
    S, D = ctx.precosheaf, ctx.source
    field = ctx.field
    total = sum(S.obj_alg[h.cod].dim for h in D.morphisms)
    off = 0
    for h in D.morphisms:
        if h.id == f:
            break
        off += S.obj_alg[h.cod].dim
    v = [field.zero] * total
    for k, x in enumerate(m):
        v[off + k] = x
    return tuple(v)


def thm13_isomorphism(ctx: InductionContext) -> ComparisonReport:
    """Build both sides and check the comparison map on every basis element."""
    if not ctx.condition_423:
        raise PreconditionError("the coset condition fails; the comparison is not defined")
    field = ctx.field
    Cc = ctx.target
    turull = turull_induce(ctx)
    Lg = skew_category_algebra(turull.precosheaf)
    L = Lg.algebra
    ia = skew_as_interior(ctx.precosheaf)
    puig = puig_induce(ctx, ia)
    R = puig.algebra
    failures: list[Violation] = []

    # basis of L is (f', k) with k indexing the echelon basis of M_S(cod f)
    cols = []
    for g in Cc.mor_ids:
        x = ctx.preimage_object(Cc.cod(g))
        sub = turull.subspaces[x]
        for k in range(sub.dim):
            m = sub.basis[k]
            images = []
            for f in ctx.functor.preimages(g):
                images.append(ctx_proj(puig, _natural_lift(ctx, f, m)))
            if any(im != images[0] for im in images[1:]):
                failures.append(Violation("psi-preimage", (g, L.labels[len(cols)])))
            q = images[0]
            if not puig.fixed.contains(q):
                failures.append(Violation("psi-fixed", (g, k)))
                cols.append([field.zero] * R.dim)
            else:
                cols.append(puig.fixed.coordinates(q))
    psi = LinearMap.from_columns(field, cols, R.dim) if cols else LinearMap.zero(field, R.dim, 0)
    hom = AlgebraHom(L, R, psi)
    hom_bad = validate_hom(hom)
    failures.extend(hom_bad)
    unital = not any(v.axiom == "unital" for v in hom_bad)
    mult = not any(v.axiom == "multiplicative" for v in hom_bad)
    rk = rank(psi)
    bijective = rk == L.dim == R.dim

    # homogeneous components of R: image of the fibre blocks, intersected with the fixed space
    skew_src = skew_category_algebra(ctx.precosheaf)
    comp_spaces = {}
    for g in Cc.mor_ids:
        fibre = set(ctx.functor.preimages(g))
        vecs = [
            puig.quotient.proj.apply(skew_src.algebra.basis_vector(i))
            for i, d in enumerate(skew_src.degree)
            if d in fibre
        ]
        block = Subspace.span(field, puig.quotient.dim, vecs)
        comp_spaces[g] = block.intersection(puig.fixed)
    components_span = sum(s.dim for s in comp_spaces.values()) == R.dim
    total = Subspace.zero(field, puig.quotient.dim)
    for s in comp_spaces.values():
        total = total + s
    components_span = components_span and total == puig.fixed
    if not components_span:
        failures.append(Violation("graded-decomposition", ()))

    graded = True
    for j, d in enumerate(Lg.degree):
        image_q = _lift_coords(puig.fixed, psi.column(j))
        if not comp_spaces[d].contains(image_q):
            graded = False
            failures.append(Violation("psi-graded", (L.labels[j],)))

    # structural map of L: f' -> (f', 1)
    sigma_L = skew_as_interior(turull.precosheaf).structural
    compat = (psi @ sigma_L.map) == puig.tau_bar.map
    if not compat:
        failures.append(Violation("interior-compatible", ()))

    expected = sum(turull.subspaces[ctx.preimage_object(Cc.cod(g))].dim for g in Cc.mor_ids)
    return ComparisonReport(
        psi=psi,
        dim_skew_source=ia.algebra.dim,
        dim_relations=puig.relations.dim,
        dim_quotient=puig.quotient.dim,
        dim_puig=R.dim,
        dim_turull_skew=L.dim,
        dim_expected=expected,
        is_unital=unital,
        is_multiplicative=mult,
        is_bijective=bijective,
        is_graded=graded,
        is_interior_compatible=compat,
        components_span=components_span,
        failures=tuple(failures),
    )


def ctx_proj(puig: PuigInduced, c: Sequence) -> tuple:
    return puig.quotient.proj.apply(c)


@dataclass(frozen=True)
class ThetaReport:
    dim_target: int
    dim_fixed_target: int
    dim_puig: int
    descends: bool
    equivariant: bool
    actions_agree_on_image: bool
    fixed_is_turull: bool
    inverts_psi: bool
    failures: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return (
            self.descends
            and self.equivariant
            and self.actions_agree_on_image
            and self.fixed_is_turull
            and self.inverts_psi
            and self.dim_fixed_target == self.dim_puig
        )


def theta_check(ctx: InductionContext) -> ThetaReport:
    """Check the map ``1 (x) m f -> m (x) s(f)`` against the two right monoid actions.

    The target is ``V = (+)_{f'} S(cod f') (x) f'``, the part of ``M_S (x) kC``
    whose module component sits over the codomain of the morphism.
    """
    if not ctx.condition_423:
        raise PreconditionError("the coset condition fails")
    field = ctx.field
    S, D, Cc = ctx.precosheaf, ctx.source, ctx.target
    F = ctx.functor
    monoid = s_monoid(ctx)
    ia = skew_as_interior(S)
    puig = puig_induce(ctx, ia, monoid)
    Calg = ia.algebra
    failures: list[Violation] = []

    # basis of V
    v_index, v_basis = {}, []
    for g in Cc.mor_ids:
        x = ctx.preimage_object(Cc.cod(g))
        for k in range(S.obj_alg[x].dim):
            v_index[(g, k)] = len(v_basis)
            v_basis.append((g, k))
    nv = len(v_basis)

    skew_basis = [(f.id, k) for f in D.morphisms for k in range(S.obj_alg[f.cod].dim)]
    sk_index = {b: i for i, b in enumerate(skew_basis)}
    theta_cols = []
    for f, k in skew_basis:
        v = [field.zero] * nv
        v[v_index[(F(f), k)]] = field.one
        theta_cols.append(v)
    theta = LinearMap.from_columns(field, theta_cols, nv)

    def rho_C(choice: Sequence[str]) -> LinearMap:
        g_at = dict(zip(D.objects, choice))
        cols = []
        for f, k in skew_basis:
            gc, gd = g_at[D.cod(f)], g_at[D.dom(f)]
            m = S.mor_hom[gc](S.obj_alg[D.cod(f)].basis_vector(k))
            fg = D.compose(f, gd)
            v = [field.zero] * Calg.dim
            for j, x in enumerate(m):
                v[sk_index[(fg, j)]] = v[sk_index[(fg, j)]] + x
            cols.append(v)
        return LinearMap.from_columns(field, cols, Calg.dim)

    def rho_V(choice: Sequence[str]) -> LinearMap:
        g_at = dict(zip(D.objects, choice))
        cols = []
        for g, k in v_basis:
            x = ctx.preimage_object(Cc.cod(g))
            m = S.mor_hom[g_at[x]](S.obj_alg[x].basis_vector(k))
            v = [field.zero] * nv
            for j, c in enumerate(m):
                v[v_index[(g, j)]] = v[v_index[(g, j)]] + c
            cols.append(v)
        return LinearMap.from_columns(field, cols, nv)

    rhoC = [rho_C(ch) for ch in monoid.choices]
    rhoV = [rho_V(ch) for ch in monoid.choices]
    ident_v = LinearMap.identity(field, nv)

    aug = Subspace.span(field, nv, [c for r in rhoV for c in (r - ident_v).columns()])
    descends = all(aug.contains(theta.apply(v)) for v in puig.relations.basis)
    if not descends:
        failures.append(Violation("theta-descends", ()))

    equivariant = True
    for i, (rc, rv) in enumerate(zip(rhoC, rhoV)):
        if theta @ rc != rv @ theta:
            equivariant = False
            failures.append(Violation("theta-equivariant", (monoid.label(i),)))

    # on lifts of Turull elements the explicit action matches c -> c sigma(s)
    turull = turull_induce(ctx)
    lifts = []
    for g in Cc.mor_ids:
        x = ctx.preimage_object(Cc.cod(g))
        for m in turull.subspaces[x].basis:
            lifts.append((g, _natural_lift(ctx, F.preimages(g)[0], m)))
    agree = True
    for i, sv in enumerate(monoid.elements):
        Rs = Calg.right_mult(ia.structural(sv))
        for g, c in lifts:
            if rhoC[i].apply(c) != Rs.apply(c):
                agree = False
                failures.append(Violation("actions-agree", (g, monoid.label(i))))

    fixed_v = simultaneous_fixed_space(rhoV, nv, field)
    turull_vecs = []
    for g in Cc.mor_ids:
        x = ctx.preimage_object(Cc.cod(g))
        for m in turull.subspaces[x].basis:
            v = [field.zero] * nv
            for k, c in enumerate(m):
                v[v_index[(g, k)]] = c
            turull_vecs.append(v)
    turull_space = Subspace.span(field, nv, turull_vecs)
    fixed_is_turull = fixed_v == turull_space
    if not fixed_is_turull:
        failures.append(Violation("fixed-equals-turull", (), f"{fixed_v.dim} vs {turull_space.dim}"))

    inverts = all(theta.apply(c) == tuple(v) for (_, c), v in zip(lifts, turull_vecs))
    if not inverts:
        failures.append(Violation("theta-inverts-psi", ()))

    return ThetaReport(
        dim_target=nv,
        dim_fixed_target=fixed_v.dim,
        dim_puig=puig.algebra.dim,
        descends=descends,
        equivariant=equivariant,
        actions_agree_on_image=agree,
        fixed_is_turull=fixed_is_turull,
        inverts_psi=inverts,
        failures=tuple(failures),
    )
