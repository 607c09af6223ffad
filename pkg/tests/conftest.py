from __future__ import annotations

import pytest

from catalg.algstruct import AlgebraHom, Precosheaf, identity_hom, product_of_fields
from catalg.cli import load_source
from catalg.fincat import FinCategory, Functor
from catalg.induction import InductionContext
from catalg.linalg import QQ, LinearMap, PrimeField
from catalg.spec_format import parse_spec

FIELDS = [QQ, PrimeField(101)]


def load(name: str, field: str | None = None):
    return parse_spec(load_source(name), field)


def two_object_D() -> FinCategory:
    comp = {
        ("1x", "1x"): "1x", ("1y", "1y"): "1y", ("f1", "1x"): "f1", ("1y", "f1"): "f1",
        ("f2", "f1"): "f1", ("1y", "f2"): "f2", ("f2", "1y"): "f2", ("f2", "f2"): "1y",
    }
    return FinCategory.build(
        ["x", "y"],
        [("1x", "x", "x"), ("1y", "y", "y"), ("f1", "x", "y"), ("f2", "y", "y")],
        comp,
        {"x": "1x", "y": "1y"},
        "D",
    )


def two_object_C() -> FinCategory:
    comp = {("1x'", "1x'"): "1x'", ("1y'", "1y'"): "1y'", ("f1'", "1x'"): "f1'", ("1y'", "f1'"): "f1'"}
    return FinCategory.build(
        ["x'", "y'"], [("1x'", "x'", "x'"), ("1y'", "y'", "y'"), ("f1'", "x'", "y'")], comp, {"x'": "1x'", "y'": "1y'"}, "C"
    )


def collapse_functor(D=None, C=None) -> Functor:
    D, C = D or two_object_D(), C or two_object_C()
    return Functor(D, C, {"x": "x'", "y": "y'"}, {"1x": "1x'", "1y": "1y'", "f1": "f1'", "f2": "1y'"}, "s")


def swap_precosheaf(F=QQ, f1=((1, 0), (1, 0))) -> Precosheaf:
    D = two_object_D()
    kk = product_of_fields(F, 2, "kk")
    homs = {
        "1x": identity_hom(kk),
        "1y": identity_hom(kk),
        "f1": AlgebraHom(kk, kk, LinearMap.from_rows(F, f1)),
        "f2": AlgebraHom(kk, kk, LinearMap.from_rows(F, [[0, 1], [1, 0]])),
    }
    return Precosheaf(D, {"x": kk, "y": kk}, homs, "S")


@pytest.fixture(params=FIELDS, ids=lambda f: f.name)
def field(request):
    return request.param


@pytest.fixture
def D():
    return two_object_D()


@pytest.fixture
def C():
    return two_object_C()


@pytest.fixture
def S(field):
    return swap_precosheaf(field)


@pytest.fixture
def ctx(S):
    return InductionContext.build(collapse_functor(S.category), S)


# acceptance criteria report one line each at the end of the session
ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, title, secs = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {title}  ({secs:.3f} s)")
