from __future__ import annotations

import pytest

from catalg.errors import PreconditionError
from catalg.fincat import (
    FinCategory,
    Functor,
    check_condition_423,
    check_image_subcategory,
    check_sim_compatibility,
    constant_functor,
    functor_traits,
    id_class,
    identity_functor,
    opposite_category,
    sim_partition,
    validate_category,
    validate_functor,
)
from conftest import collapse_functor, load, two_object_D


def test_example_categories_are_valid(D, C):
    assert validate_category(D) == []
    assert validate_category(C) == []


def test_idempotent_f2_is_still_a_category(D):
    # f2 o f2 = f2 makes {1y, f2} an idempotent monoid, which satisfies every axiom
    comp = dict(D.comp)
    comp[("f2", "f2")] = "f2"
    assert validate_category(D.with_comp(comp)) == []


def test_broken_table_is_reported(D):
    comp = dict(D.comp)
    comp[("f2", "f2")] = "f1"
    bad = validate_category(D.with_comp(comp))
    assert [(v.axiom, v.witness) for v in bad] == [("composite-endpoints", ("f2", "f2", "f1"))]


def test_missing_composite_and_identity(D):
    comp = dict(D.comp)
    del comp[("f2", "f1")]
    assert any(v.axiom == "totality" and v.witness == ("f2", "f1") for v in validate_category(D.with_comp(comp)))
    bad = FinCategory(D.objects, D.morphisms, D.comp, {"x": "1x"}, "D")
    assert any(v.axiom == "missing-identity" for v in validate_category(bad))


def test_associativity_violation_is_named():
    c = FinCategory.build(
        ["*"],
        [("1", "*", "*"), ("a", "*", "*"), ("b", "*", "*")],
        {("1", "1"): "1", ("a", "1"): "a", ("1", "a"): "a", ("b", "1"): "b", ("1", "b"): "b",
         ("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"},
        {"*": "1"},
    )
    bad = validate_category(c)
    assert any(v.axiom == "associativity" for v in bad)


def test_collapse_functor_is_valid():
    assert validate_functor(collapse_functor()) == []


def test_functor_breaking_composition():
    s = collapse_functor()
    broken = Functor(s.source, s.target, s.obj_map, dict(s.mor_map, f2="f1'"), "t")
    assert any(v.axiom.startswith("preserves") for v in validate_functor(broken))


def test_traits():
    assert functor_traits(collapse_functor()).as_tuple() == (True, True, False, True)
    assert functor_traits(identity_functor(two_object_D())).as_tuple() == (True, True, True, True)


def test_sim_partition_and_id_classes():
    s = collapse_functor()
    part = sim_partition(s)
    assert sorted(map(sorted, part.classes)) == [["1x"], ["1y", "f2"], ["f1"]]
    assert id_class(s, "x") == ("1x",)
    assert set(id_class(s, "y")) == {"1y", "f2"}


def test_id_class_requires_profile():
    c = two_object_D()
    with pytest.raises(PreconditionError):
        id_class(constant_functor(c), "x")


def test_condition_423():
    assert check_condition_423(collapse_functor()).holds
    spec = load("parallel_collapse")
    rep = check_condition_423(spec.functors["s"])
    assert not rep.holds
    assert rep.witnesses[0][0] == "f"


def test_sim_compatibility_and_image():
    s = collapse_functor()
    assert check_sim_compatibility(s) == []
    assert check_image_subcategory(s) == []


def test_opposite(D):
    op = opposite_category(D)
    assert (op.dom("f1"), op.cod("f1")) == ("y", "x")
    assert validate_category(op) == []
    assert opposite_category(op) == D
    assert op.compose("f1", "f2") == D.compose("f2", "f1")
