from __future__ import annotations

import pytest

from catalg.algstruct import (
    AlgebraHom,
    Precosheaf,
    constant_precosheaf,
    identity_hom,
    product_of_fields,
    validate_algebra,
    validate_graded,
)
from catalg.constructions import (
    category_algebra,
    check_twisting_axioms,
    check_weak_bialgebra_unit_failure,
    flip_twisting_map,
    object_tensor_algebra,
    paper_twisting_map,
    psi_embedding,
    skew_category_algebra,
    tensor_product_algebra,
    twisted_tensor_product,
    verify_embedding,
)
from catalg.errors import TwistingAxiomError
from catalg.fincat import FinCategory, point_category
from catalg.linalg import LinearMap, rank
from conftest import load, two_object_C, two_object_D


def c2_precosheaf(F):
    c = FinCategory.build(["pt"], [("1", "pt", "pt"), ("g", "pt", "pt")],
                          {("1", "1"): "1", ("1", "g"): "g", ("g", "1"): "g", ("g", "g"): "1"}, {"pt": "1"}, "C2")
    kk = product_of_fields(F, 2, "kk")
    swap = AlgebraHom(kk, kk, LinearMap.from_rows(F, [[0, 1], [1, 0]]))
    return Precosheaf(c, {"pt": kk}, {"1": identity_hom(kk), "g": swap}, "R")


def test_category_algebras(field):
    kc = category_algebra(two_object_C(), field)
    assert kc.dim == 3 and kc.labels == ("1x'", "1y'", "f1'")
    assert validate_algebra(kc) == []
    kd = category_algebra(two_object_D(), field)
    f2 = kd.basis_vector(3)
    assert kd.mul(f2, f2) == kd.basis_vector(1)
    assert category_algebra(point_category(), field).dim == 1


def test_skew_algebra_of_swap_precosheaf(S):
    g = skew_category_algebra(S)
    a = g.algebra
    assert a.dim == 8
    assert validate_algebra(a) == [] and validate_graded(g) == []
    e1f2, e2f2 = a.elem("(f2, e1)"), a.elem("(f2, e2)")
    assert (e1f2 * e1f2).is_zero()
    # s R(g)(r): e1 . swap(e2) = e1
    assert e1f2 * e2f2 == a.elem("(1y, e1)")
    assert e2f2 * e1f2 == a.elem("(1y, e2)")


def test_skew_of_constant_is_category_algebra(D, field):
    g = skew_category_algebra(constant_precosheaf(D, field=field))
    assert g.algebra.table == category_algebra(D, field).table


def test_object_tensor_algebra(S):
    t = object_tensor_algebra(S)
    assert t.dim == 4 and validate_algebra(t) == []
    kk = S.obj_alg["x"]
    assert t.unit == tensor_product_algebra(kk, kk).unit


def test_twisting_map_of_constant_is_flip(D, field):
    t = paper_twisting_map(constant_precosheaf(D, field=field))
    assert t.map == flip_twisting_map(t.alg_a, t.alg_b).map
    assert check_twisting_axioms(t) == []


def test_twisting_value_killed_by_f1(S):
    t = paper_twisting_map(S)
    f1 = t.alg_b.labels.index("f1")
    for u in range(2):
        assert t.image(f1, 1 * 2 + u) == {}  # e2 in the x slot maps to 0


def test_twisting_unit_of_category_algebra(S):
    assert not [v for v in check_twisting_axioms(paper_twisting_map(S)) if v.axiom == "twist-unit-B"]


def test_twisting_map_breaks_across_objects(S):
    # the codomain slot is overwritten, so tau(f1 (x) 1_A) = 2 e1 (x) (e1 + e2) (x) f1
    t = paper_twisting_map(S)
    F = t.alg_a.field
    f1 = t.alg_b.labels.index("f1")
    image = [F.zero] * 16
    for a, u in enumerate(t.alg_a.unit):
        image = [x + u * y for x, y in zip(image, t.map.column(f1 * 4 + a))]
    want = [F.zero] * 16
    for a in (0, 1):  # e1(x)e1, e1(x)e2
        want[a * 4 + f1] = F(2)
    assert image == want
    bad = check_twisting_axioms(t)
    assert ("twist-unit-A", ("f1",)) in [(v.axiom, v.witness) for v in bad]
    assert any(v.axiom == "twist-hexagon" for v in bad)
    with pytest.raises(TwistingAxiomError):
        twisted_tensor_product(paper_twisting_map(S))


def test_twisting_on_monoid(field):
    t = paper_twisting_map(c2_precosheaf(field))
    assert check_twisting_axioms(t) == []
    ttp = twisted_tensor_product(t)
    assert ttp.dim == 4 and validate_algebra(ttp) == []


def test_flip_gives_tensor_product(field):
    kk = product_of_fields(field, 2)
    kc = category_algebra(two_object_C(), field)
    ttp = twisted_tensor_product(flip_twisting_map(kk, kc))
    assert ttp.table == tensor_product_algebra(kk, kc).table


def test_twisted_product_of_units(field):
    spec = load("poset_chain3", field.name)
    K = spec.precosheaves["K"]
    ttp = twisted_tensor_product(paper_twisting_map(K))
    assert ttp.dim == 6
    ac, bc, ab = (ttp.elem(f"1(x)1(x)1|{m}") for m in ("ac", "bc", "ab"))
    assert bc * ab == ac


def test_embedding_on_monoid_is_bijective(field):
    rep = verify_embedding(c2_precosheaf(field))
    assert rep.passed and rep.surjective and rep.rank == 4


def test_embedding_of_constant_precosheaf(D, field):
    r = constant_precosheaf(D, field=field)
    emb = psi_embedding(r)
    assert emb.psi == LinearMap.identity(field, 4)
    assert verify_embedding(r).passed


def test_embedding_on_swap_precosheaf(S):
    emb = psi_embedding(S, twisted=object_tensor_algebra(S))  # any target of the right size
    assert rank(emb.psi) == 8
    assert emb.phi @ emb.psi == LinearMap.identity(S.obj_alg["x"].field, 8)
    rep = verify_embedding(S)
    assert rep.dim_twisted == 16 and rep.injective and rep.unital
    assert not rep.multiplicative


def test_weak_bialgebra(D, field):
    rep = check_weak_bialgebra_unit_failure(D, field)
    assert rep.delta_multiplicative and not rep.unit_axiom_holds
    assert check_weak_bialgebra_unit_failure(point_category(), field).unit_axiom_holds
