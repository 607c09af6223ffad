"""Finite categories given by explicit composition tables, and functors between them.

Objects and morphisms are opaque string ids.  The order in which they are
declared is the canonical order used for every basis built on top of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, WellDefinednessError

__all__ = [
    "Morphism",
    "FinCategory",
    "Functor",
    "Violation",
    "FunctorTraits",
    "MorPartition",
    "Condition423Report",
    "validate_category",
    "validate_functor",
    "functor_traits",
    "sim_partition",
    "id_class",
    "check_condition_423",
    "check_sim_compatibility",
    "check_image_subcategory",
    "opposite_category",
    "identity_functor",
    "point_category",
    "constant_functor",
]


@dataclass(frozen=True)
class Violation:
    """One failed axiom; ``witness`` names the offending ids."""

    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        w = ", ".join(str(x) for x in self.witness)
        s = f"{self.axiom} [{w}]"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass(frozen=True)
class Morphism:
    id: str
    dom: str
    cod: str


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    comp: Mapping[tuple[str, str], str]
    identities: Mapping[str, str]
    name: str = "C"
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        object.__setattr__(self, "comp", dict(self.comp))
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "_index", {m.id: i for i, m in enumerate(self.morphisms)})

    @classmethod
    def build(
        cls,
        objects: Sequence[str],
        morphisms: Iterable[tuple[str, str, str]],
        comp: Mapping[tuple[str, str], str],
        identities: Mapping[str, str],
        name: str = "C",
    ) -> "FinCategory":
        return cls(tuple(objects), tuple(Morphism(*m) for m in morphisms), comp, identities, name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.comp == other.comp
            and self.identities == other.identities
        )

    def __hash__(self) -> int:
        return hash((self.objects, self.morphisms))

    @property
    def mor_ids(self) -> tuple[str, ...]:
        return tuple(m.id for m in self.morphisms)

    def index(self, f: str) -> int:
        return self._index[f]

    def mor(self, f: str) -> Morphism:
        return self.morphisms[self._index[f]]

    def dom(self, f: str) -> str:
        return self.mor(f).dom

    def cod(self, f: str) -> str:
        return self.mor(f).cod

    def identity(self, x: str) -> str:
        return self.identities[x]

    def is_identity(self, f: str) -> bool:
        m = self.mor(f)
        return self.identities.get(m.dom) == f

    def composable(self, g: str, f: str) -> bool:
        return self.dom(g) == self.cod(f)

    def compose(self, g: str, f: str) -> str:
        """``g o f``; raises ``KeyError`` when undefined."""
        if not self.composable(g, f):
            raise KeyError(f"{g} o {f} is not composable")
        return self.comp[(g, f)]

    def hom(self, x: str, y: str) -> list[str]:
        return [m.id for m in self.morphisms if m.dom == x and m.cod == y]

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        for g in self.morphisms:
            for f in self.morphisms:
                if g.dom == f.cod:
                    yield g.id, f.id

    def with_comp(self, comp: Mapping[tuple[str, str], str]) -> "FinCategory":
        return FinCategory(self.objects, self.morphisms, comp, self.identities, self.name)


def _duplicates(items: Iterable[str]) -> list[str]:
    seen, dups = set(), []
    for x in items:
        if x in seen and x not in dups:
            dups.append(x)
        seen.add(x)
    return dups


def validate_category(c: FinCategory) -> list[Violation]:
    """Scan every category axiom; returns all violations found (empty means valid)."""
    out: list[Violation] = []
    for x in _duplicates(c.objects):
        out.append(Violation("duplicate-object", (x,)))
    for f in _duplicates(c.mor_ids):
        out.append(Violation("duplicate-morphism", (f,)))
    obj_set = set(c.objects)
    mor_set = set(c.mor_ids)
    for m in c.morphisms:
        if m.dom not in obj_set or m.cod not in obj_set:
            out.append(Violation("unknown-object", (m.id,), f"{m.dom} -> {m.cod}"))
    for x in c.objects:
        i = c.identities.get(x)
        if i is None:
            out.append(Violation("missing-identity", (x,)))
        elif i not in mor_set:
            out.append(Violation("unknown-morphism", (i,), f"identity of {x}"))
        elif c.dom(i) != x or c.cod(i) != x:
            out.append(Violation("identity-endpoints", (x, i), f"{c.dom(i)} -> {c.cod(i)}"))
    if out:
        return out

    for (g, f), h in c.comp.items():
        if g not in mor_set or f not in mor_set or h not in mor_set:
            out.append(Violation("unknown-morphism", (g, f, h), "in composition table"))
        elif not c.composable(g, f):
            out.append(Violation("composability", (g, f), f"entry {h} given for a non-composable pair"))
    if out:
        return out

    for g, f in c.composable_pairs():
        h = c.comp.get((g, f))
        if h is None:
            out.append(Violation("totality", (g, f), "composite missing"))
            continue
        if c.dom(h) != c.dom(f) or c.cod(h) != c.cod(g):
            out.append(
                Violation(
                    "composite-endpoints",
                    (g, f, h),
                    f"{h}: {c.dom(h)} -> {c.cod(h)}, expected {c.dom(f)} -> {c.cod(g)}",
                )
            )
    if out:
        return out

    for m in c.morphisms:
        left = c.comp[(c.identities[m.cod], m.id)]
        right = c.comp[(m.id, c.identities[m.dom])]
        if left != m.id:
            out.append(Violation("identity-law", (c.identities[m.cod], m.id), f"composite is {left}"))
        if right != m.id:
            out.append(Violation("identity-law", (m.id, c.identities[m.dom]), f"composite is {right}"))

    for h in c.morphisms:
        for g in c.morphisms:
            if h.dom != g.cod:
                continue
            hg = c.comp[(h.id, g.id)]
            for f in c.morphisms:
                if g.dom != f.cod:
                    continue
                lhs = c.comp[(h.id, c.comp[(g.id, f.id)])]
                rhs = c.comp[(hg, f.id)]
                if lhs != rhs:
                    out.append(Violation("associativity", (h.id, g.id, f.id), f"{lhs} != {rhs}"))
    return out


def opposite_category(c: FinCategory) -> FinCategory:
    """Same ids, endpoints swapped, ``f^op o g^op = (g o f)^op``."""
    morphisms = tuple(Morphism(m.id, m.cod, m.dom) for m in c.morphisms)
    comp = {(f, g): h for (g, f), h in c.comp.items()}
    name = c.name[:-3] if c.name.endswith("^op") else c.name + "^op"
    return FinCategory(c.objects, morphisms, comp, c.identities, name)


def point_category(name: str = "pt") -> FinCategory:
    return FinCategory.build(["*"], [("1_*", "*", "*")], {("1_*", "1_*"): "1_*"}, {"*": "1_*"}, name)


# ---------------------------------------------------------------------------
# functors


@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]
    name: str = "F"

    def __post_init__(self):
        object.__setattr__(self, "obj_map", dict(self.obj_map))
        object.__setattr__(self, "mor_map", dict(self.mor_map))

    def __call__(self, f: str) -> str:
        return self.mor_map[f]

    def preimages(self, g: str) -> list[str]:
        return [f for f in self.source.mor_ids if self.mor_map[f] == g]

    def object_preimage(self, xp: str) -> str:
        """The unique source object over ``xp`` (functor must be bijective on objects)."""
        found = [x for x in self.source.objects if self.obj_map[x] == xp]
        if len(found) != 1:
            raise PreconditionError(f"object {xp} has {len(found)} preimages")
        return found[0]


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {f: f for f in c.mor_ids}, name=f"id_{c.name}")


def constant_functor(source: FinCategory, target: FinCategory | None = None) -> Functor:
    """Everything to the single object and morphism of a one-morphism category."""
    target = target or point_category()
    (x,) = target.objects
    one = target.identities[x]
    return Functor(source, target, {o: x for o in source.objects}, {f: one for f in source.mor_ids}, "const")


def validate_functor(F: Functor) -> list[Violation]:
    out: list[Violation] = []
    src, tgt = F.source, F.target
    tobj, tmor = set(tgt.objects), set(tgt.mor_ids)
    for x in src.objects:
        if x not in F.obj_map:
            out.append(Violation("object-map-total", (x,)))
        elif F.obj_map[x] not in tobj:
            out.append(Violation("object-map-target", (x, F.obj_map[x])))
    for f in src.mor_ids:
        if f not in F.mor_map:
            out.append(Violation("morphism-map-total", (f,)))
        elif F.mor_map[f] not in tmor:
            out.append(Violation("morphism-map-target", (f, F.mor_map[f])))
    if out:
        return out

    for m in src.morphisms:
        g = F.mor_map[m.id]
        if tgt.dom(g) != F.obj_map[m.dom]:
            out.append(Violation("preserves-domain", (m.id, g), f"{tgt.dom(g)} != {F.obj_map[m.dom]}"))
        if tgt.cod(g) != F.obj_map[m.cod]:
            out.append(Violation("preserves-codomain", (m.id, g), f"{tgt.cod(g)} != {F.obj_map[m.cod]}"))
    for x in src.objects:
        i = src.identities[x]
        if F.mor_map[i] != tgt.identities[F.obj_map[x]]:
            out.append(Violation("preserves-identity", (i,), f"maps to {F.mor_map[i]}"))
    for g, f in src.composable_pairs():
        lhs = F.mor_map[src.compose(g, f)]
        fg, ff = F.mor_map[g], F.mor_map[f]
        if not tgt.composable(fg, ff):
            out.append(Violation("preserves-composition", (g, f), f"images {fg}, {ff} are not composable"))
            continue
        rhs = tgt.compose(fg, ff)
        if lhs != rhs:
            out.append(Violation("preserves-composition", (g, f), f"F({g} o {f}) = {lhs} != {rhs}"))
    return out


@dataclass(frozen=True)
class FunctorTraits:
    injective_on_objects: bool
    surjective_on_objects: bool
    injective_on_morphisms: bool
    surjective_on_morphisms: bool

    def as_tuple(self) -> tuple[bool, bool, bool, bool]:
        return (
            self.injective_on_objects,
            self.surjective_on_objects,
            self.injective_on_morphisms,
            self.surjective_on_morphisms,
        )


def functor_traits(F: Functor) -> FunctorTraits:
    obj_images = [F.obj_map[x] for x in F.source.objects]
    mor_images = [F.mor_map[f] for f in F.source.mor_ids]
    traits = FunctorTraits(
        injective_on_objects=len(set(obj_images)) == len(obj_images),
        surjective_on_objects=set(obj_images) == set(F.target.objects),
        injective_on_morphisms=len(set(mor_images)) == len(mor_images),
        surjective_on_morphisms=set(mor_images) == set(F.target.mor_ids),
    )
    # surjective on morphisms forces every identity, hence every object, to be hit
    if traits.surjective_on_morphisms and not traits.surjective_on_objects:
        raise WellDefinednessError("surjective-on-objects", (), "surjective on morphisms but not on objects")
    return traits


def require_surjective_profile(F: Functor) -> FunctorTraits:
    t = functor_traits(F)
    if not (t.injective_on_objects and t.surjective_on_morphisms):
        raise PreconditionError(
            f"functor {F.name} must be injective on objects and surjective on morphisms (got {t})"
        )
    return t


@dataclass(frozen=True)
class MorPartition:
    category: FinCategory
    classes: tuple[tuple[str, ...], ...]
    class_of: Mapping[str, int]

    def cls(self, f: str) -> tuple[str, ...]:
        return self.classes[self.class_of[f]]

    def equivalent(self, f: str, g: str) -> bool:
        return self.class_of[f] == self.class_of[g]


def sim_partition(F: Functor) -> MorPartition:
    """Fibres of the morphism map, in canonical order of first appearance."""
    by_image: dict[str, list[str]] = {}
    for f in F.source.mor_ids:
        by_image.setdefault(F.mor_map[f], []).append(f)
    classes = tuple(tuple(v) for v in by_image.values())
    class_of = {f: i for i, cl in enumerate(classes) for f in cl}
    if functor_traits(F).injective_on_objects:
        src = F.source
        for cl in classes:
            if len({src.dom(f) for f in cl}) != 1 or len({src.cod(f) for f in cl}) != 1:
                raise WellDefinednessError(
                    "class-endpoints", cl, "equivalent morphisms with different endpoints"
                )
    return MorPartition(F.source, classes, class_of)


def id_class(F: Functor, x: str) -> tuple[str, ...]:
    """All source morphisms sent to the identity of ``F(x)``; always contains ``1_x``."""
    require_surjective_profile(F)
    target_id = F.target.identities[F.obj_map[x]]
    out = tuple(f for f in F.source.mor_ids if F.mor_map[f] == target_id)
    assert F.source.identities[x] in out
    return out


def check_sim_compatibility(F: Functor) -> list[Violation]:
    """Exhaustive check that equivalent composable pairs have equivalent composites."""
    part = sim_partition(F)
    src = F.source
    out = []
    pairs = list(src.composable_pairs())
    for (g1, f1), (g2, f2) in itertools.product(pairs, repeat=2):
        if part.equivalent(f1, f2) and part.equivalent(g1, g2):
            if not part.equivalent(src.compose(g1, f1), src.compose(g2, f2)):
                out.append(Violation("sim-compatibility", (g1, f1, g2, f2)))
    return out


def check_image_subcategory(F: Functor) -> list[Violation]:
    """Image closed under composition and identities."""
    tgt = F.target
    image = {F.mor_map[f] for f in F.source.mor_ids}
    image_objs = {F.obj_map[x] for x in F.source.objects}
    out = []
    for xp in image_objs:
        if tgt.identities[xp] not in image:
            out.append(Violation("image-identities", (xp,)))
    for g in image:
        for f in image:
            if tgt.composable(g, f) and tgt.compose(g, f) not in image:
                out.append(Violation("image-composition", (g, f)))
    return out


@dataclass(frozen=True)
class Condition423Report:
    holds: bool
    witnesses: tuple[tuple, ...]  # (f, side, class, composite set)


def check_condition_423(F: Functor) -> Condition423Report:
    """For every ``f: x -> y``: class of ``f`` == ``Id_y o f`` == ``f o Id_x`` as sets."""
    require_surjective_profile(F)
    src = F.source
    part = sim_partition(F)
    ids = {x: id_class(F, x) for x in src.objects}
    witnesses = []
    for m in src.morphisms:
        cls = frozenset(part.cls(m.id))
        left = frozenset(src.compose(g, m.id) for g in ids[m.cod])
        right = frozenset(src.compose(m.id, g) for g in ids[m.dom])
        if cls != left:
            witnesses.append((m.id, "left", tuple(sorted(cls)), tuple(sorted(left))))
        if cls != right:
            witnesses.append((m.id, "right", tuple(sorted(cls)), tuple(sorted(right))))
    return Condition423Report(not witnesses, tuple(witnesses))
