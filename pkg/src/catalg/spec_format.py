"""Reading workbench documents.

A document is YAML::

    field: rationals            # or gf:101
    categories:
      D:
        objects: [x, y]
        morphisms:
          - {id: 1x, dom: x, cod: x}
          - {id: f, dom: x, cod: y}
          - {id: 1y, dom: y, cod: y}
        identities: {x: 1x, y: 1y}
        compose:                # [g, f, g∘f]; composites with identities may be omitted
          - [f, 1x, f]
    algebras:
      kk: {preset: product_of_fields 2}
      q:
        basis: [a, b]
        unit: {a: 1}
        products: [[a, a, {a: 1}], [a, b, {b: 1}], [b, a, {b: 1}], [b, b, {a: "-1/2"}]]
    precosheaves:
      S:
        category: D
        objects: {x: kk, y: kk}
        maps: {f: [[1, 0], [1, 0]]}   # rows indexed by the target basis
    functors:
      s: {source: D, target: C, objects: {...}, morphisms: {...}}
    tasks:
      - {command: verify thm13, functor: s, precosheaf: S}
      - {command: verify cond423, functor: t, expect: fail}

Scalars are integers or strings like ``"-3/2"``; they are read into the run's field.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Mapping

import yaml

from .algstruct import AlgebraHom, FinAlgebra, Precosheaf, identity_hom, preset_algebra
from .errors import SpecError
from .fincat import FinCategory, Functor
from .linalg import Field, LinearMap, parse_field

__all__ = ["Task", "WorkbenchSpec", "parse_spec", "load_yaml", "COMMANDS"]

COMMANDS = {
    "build kc": ("category",),
    "build skew": ("precosheaf",),
    "build tensor": ("precosheaf",),
    "build ttp": ("precosheaf",),
    "induct turull": ("functor", "precosheaf"),
    "induct puig": ("functor", "precosheaf"),
    "verify twisting": ("precosheaf",),
    "verify thm11": ("precosheaf",),
    "verify thm13": ("functor", "precosheaf"),
    "verify lemma42": ("functor", "precosheaf"),
    "verify cond423": ("functor",),
    "verify weakbialg": ("category",),
    "verify mitchell": ("precosheaf",),
}


class _Mapping(dict):
    """dict remembering where each key and the mapping itself appeared."""

    mark: tuple[int, int] = (None, None)
    key_marks: dict


class _Sequence(list):
    mark: tuple[int, int] = (None, None)


class _Loader(yaml.SafeLoader):
    pass


def _pos(node) -> tuple[int, int]:
    return node.start_mark.line + 1, node.start_mark.column + 1


def _construct_mapping(loader, node):
    out = _Mapping()
    out.mark = _pos(node)
    out.key_marks = {}
    for k_node, v_node in node.value:
        key = loader.construct_object(k_node, deep=True)
        if key in out:
            raise SpecError(f"duplicate key {key!r}", *_pos(k_node))
        out[key] = loader.construct_object(v_node, deep=True)
        out.key_marks[key] = _pos(k_node)
    return out


def _construct_sequence(loader, node):
    out = _Sequence(loader.construct_object(n, deep=True) for n in node.value)
    out.mark = _pos(node)
    return out


_Loader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)
_Loader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_SEQUENCE_TAG, _construct_sequence)


def load_yaml(text: str) -> Any:
    try:
        return yaml.load(text, Loader=_Loader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise SpecError(f"malformed document: {exc.problem}", mark.line + 1, mark.column + 1) from None


def _where(container, key=None) -> tuple[int | None, int | None]:
    if key is not None and isinstance(container, _Mapping) and key in container.key_marks:
        return container.key_marks[key]
    return getattr(container, "mark", (None, None))


def _fail(msg: str, container=None, key=None):
    raise SpecError(msg, *_where(container, key))


def _get(m, key, kind, ctx: str, default=...):
    if not isinstance(m, dict):
        _fail(f"{ctx}: expected a mapping", m)
    if key not in m:
        if default is not ...:
            return default
        _fail(f"{ctx}: missing '{key}'", m)
    v = m[key]
    if kind is not None and not isinstance(v, kind):
        _fail(f"{ctx}: '{key}' has the wrong type", m, key)
    return v


def _scalar(F: Field, value, container, key, ctx: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        _fail(f"{ctx}: scalar must be an integer or 'a/b' string, got {value!r}", container, key)
    try:
        return F(value)
    except (ValueError, ZeroDivisionError):
        _fail(f"{ctx}: cannot read scalar {value!r}", container, key)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Task:
    command: str
    args: Mapping[str, str]
    expect: str = "pass"
    line: int | None = None

    @property
    def target(self) -> str:
        return "/".join(self.args[k] for k in COMMANDS[self.command])


@dataclass
class WorkbenchSpec:
    field: Field
    categories: dict[str, FinCategory] = dc_field(default_factory=dict)
    algebras: dict[str, FinAlgebra] = dc_field(default_factory=dict)
    precosheaves: dict[str, Precosheaf] = dc_field(default_factory=dict)
    functors: dict[str, Functor] = dc_field(default_factory=dict)
    tasks: list[Task] = dc_field(default_factory=list)

    def applicable(self, command: str) -> list[Task]:
        """One task per declaration (or functor/precosheaf pair) the command can run on."""
        roles = COMMANDS[command]
        if roles == ("category",):
            return [Task(command, {"category": c}) for c in self.categories]
        if roles == ("precosheaf",):
            return [Task(command, {"precosheaf": p}) for p in self.precosheaves]
        if roles == ("functor",):
            return [Task(command, {"functor": f}) for f in self.functors]
        out = []
        for fn, F in self.functors.items():
            for pn, P in self.precosheaves.items():
                if P.category == F.source:
                    out.append(Task(command, {"functor": fn, "precosheaf": pn}))
        return out


def parse_spec(text: str, field_override: str | None = None) -> WorkbenchSpec:
    doc = load_yaml(text)
    if doc is None:
        doc = _Mapping()
        doc.key_marks = {}
    if not isinstance(doc, dict):
        raise SpecError("document must be a mapping", 1, 1)
    known = {"field", "categories", "algebras", "precosheaves", "functors", "tasks"}
    for key in doc:
        if key not in known:
            _fail(f"unknown top-level key {key!r}", doc, key)
    field_text = field_override or doc.get("field", "rationals")
    try:
        F = parse_field(str(field_text))
    except ValueError as exc:
        _fail(str(exc), doc, "field")
    spec = WorkbenchSpec(F)

    for name, decl in (_get(doc, "categories", dict, "document", {}) or {}).items():
        spec.categories[str(name)] = _category(str(name), decl)
    for name, decl in (_get(doc, "algebras", dict, "document", {}) or {}).items():
        spec.algebras[str(name)] = _algebra(F, str(name), decl)
    for name, decl in (_get(doc, "functors", dict, "document", {}) or {}).items():
        spec.functors[str(name)] = _functor(spec, str(name), decl)
    for name, decl in (_get(doc, "precosheaves", dict, "document", {}) or {}).items():
        spec.precosheaves[str(name)] = _precosheaf(spec, str(name), decl)
    for entry in _get(doc, "tasks", list, "document", []) or []:
        spec.tasks.append(_task(spec, entry))
    return spec


def _ids(seq, ctx: str) -> list[str]:
    if not isinstance(seq, list):
        _fail(f"{ctx}: expected a list", seq)
    return [str(x) for x in seq]


def _category(name: str, decl) -> FinCategory:
    ctx = f"category {name}"
    objects = _ids(_get(decl, "objects", list, ctx), ctx)
    if len(set(objects)) != len(objects):
        _fail(f"{ctx}: duplicate object id", decl, "objects")
    morphisms = []
    seen = set()
    for m in _get(decl, "morphisms", list, ctx):
        mid, dom, cod = (str(_get(m, k, None, ctx)) for k in ("id", "dom", "cod"))
        if mid in seen:
            _fail(f"{ctx}: duplicate morphism id {mid!r}", m)
        seen.add(mid)
        for o in (dom, cod):
            if o not in objects:
                _fail(f"{ctx}: morphism {mid!r} refers to unknown object {o!r}", m)
        morphisms.append((mid, dom, cod))
    identities = {str(k): str(v) for k, v in _get(decl, "identities", dict, ctx).items()}
    ends = {m: (d, c) for m, d, c in morphisms}
    for x, i in identities.items():
        if x not in objects:
            _fail(f"{ctx}: identity for unknown object {x!r}", decl["identities"], x)
        if i not in ends:
            _fail(f"{ctx}: unknown identity morphism {i!r}", decl["identities"], x)
    for x in objects:
        if x not in identities:
            _fail(f"{ctx}: object {x!r} has no identity", decl, "identities")
    comp: dict[tuple[str, str], str] = {}
    for row in _get(decl, "compose", list, ctx, []) or []:
        if not isinstance(row, list) or len(row) != 3:
            _fail(f"{ctx}: compose rows are [g, f, g∘f]", row if isinstance(row, list) else decl, None if isinstance(row, list) else "compose")
        g, f, h = (str(v) for v in row)
        for mid in (g, f, h):
            if mid not in ends:
                _fail(f"{ctx}: unknown morphism {mid!r} in composition", row)
        if (g, f) in comp:
            _fail(f"{ctx}: composite of ({g}, {f}) given twice", row)
        comp[(g, f)] = h
    for mid, (d, c) in ends.items():
        comp.setdefault((identities[c], mid), mid)
        comp.setdefault((mid, identities[d]), mid)
    return FinCategory.build(objects, morphisms, comp, identities, name)


def _algebra(F: Field, name: str, decl) -> FinAlgebra:
    ctx = f"algebra {name}"
    if isinstance(decl, dict) and "preset" in decl:
        try:
            return preset_algebra(F, str(decl["preset"]), name=name)
        except ValueError as exc:
            _fail(f"{ctx}: {exc}", decl, "preset")
    labels = _ids(_get(decl, "basis", list, ctx), ctx)
    if len(set(labels)) != len(labels):
        _fail(f"{ctx}: duplicate basis label", decl, "basis")
    index = {lab: i for i, lab in enumerate(labels)}

    def vec(m, where):
        if not isinstance(m, dict):
            _fail(f"{ctx}: vectors are written as {{label: coefficient}}", where)
        out = {}
        for lab, c in m.items():
            if str(lab) not in index:
                _fail(f"{ctx}: unknown basis label {lab!r}", m, lab)
            out[index[str(lab)]] = _scalar(F, c, m, lab, ctx)
        return out

    unit = vec(_get(decl, "unit", dict, ctx), decl)
    products = {}
    for row in _get(decl, "products", list, ctx, []) or []:
        if not isinstance(row, list) or len(row) != 3:
            _fail(f"{ctx}: products rows are [left, right, {{label: c}}]", decl, "products")
        a, b = str(row[0]), str(row[1])
        for lab in (a, b):
            if lab not in index:
                _fail(f"{ctx}: unknown basis label {lab!r}", row)
        products[(index[a], index[b])] = vec(row[2], row)
    return FinAlgebra.from_products(F, labels, products, unit, name)


def _lookup(table: Mapping, name, kind: str, container, key):
    if str(name) not in table:
        _fail(f"unknown {kind} {name!r}", container, key)
    return table[str(name)]


def _functor(spec: WorkbenchSpec, name: str, decl) -> Functor:
    ctx = f"functor {name}"
    src = _lookup(spec.categories, _get(decl, "source", None, ctx), "category", decl, "source")
    tgt = _lookup(spec.categories, _get(decl, "target", None, ctx), "category", decl, "target")
    if decl.get("identity"):
        if src != tgt:
            _fail(f"{ctx}: identity functor needs source = target", decl, "identity")
        return Functor(src, tgt, {x: x for x in src.objects}, {f: f for f in src.mor_ids}, name)
    objs = {str(k): str(v) for k, v in _get(decl, "objects", dict, ctx).items()}
    mors = {str(k): str(v) for k, v in _get(decl, "morphisms", dict, ctx).items()}
    for x in src.objects:
        if x not in objs:
            _fail(f"{ctx}: object {x!r} not mapped", decl, "objects")
    for k, v in objs.items():
        if k not in src.objects or v not in tgt.objects:
            _fail(f"{ctx}: bad object assignment {k!r} -> {v!r}", decl["objects"], k)
    for f in src.mor_ids:
        if f not in mors:
            _fail(f"{ctx}: morphism {f!r} not mapped", decl, "morphisms")
    for k, v in mors.items():
        if k not in src.mor_ids or v not in tgt.mor_ids:
            _fail(f"{ctx}: bad morphism assignment {k!r} -> {v!r}", decl["morphisms"], k)
    return Functor(src, tgt, objs, mors, name)


def _precosheaf(spec: WorkbenchSpec, name: str, decl) -> Precosheaf:
    ctx = f"precosheaf {name}"
    F = spec.field
    cat = _lookup(spec.categories, _get(decl, "category", None, ctx), "category", decl, "category")
    objs_decl = _get(decl, "objects", dict, ctx)
    obj_alg = {}
    for x in cat.objects:
        if x not in objs_decl:
            _fail(f"{ctx}: no algebra for object {x!r}", decl, "objects")
        obj_alg[x] = _lookup(spec.algebras, objs_decl[x], "algebra", objs_decl, x)
    for x in objs_decl:
        if str(x) not in cat.objects:
            _fail(f"{ctx}: unknown object {x!r}", objs_decl, x)
    maps_decl = _get(decl, "maps", dict, ctx, {}) or {}
    for f in maps_decl:
        if str(f) not in cat.mor_ids:
            _fail(f"{ctx}: unknown morphism {f!r}", maps_decl, f)
    homs = {}
    for f in cat.mor_ids:
        a, b = obj_alg[cat.dom(f)], obj_alg[cat.cod(f)]
        if f not in maps_decl:
            if cat.is_identity(f):
                homs[f] = identity_hom(a)
                continue
            _fail(f"{ctx}: no map for morphism {f!r}", decl, "maps")
        rows = maps_decl[f]
        if not isinstance(rows, list) or len(rows) != b.dim or any(not isinstance(r, list) or len(r) != a.dim for r in rows):
            _fail(f"{ctx}: map for {f!r} must be a {b.dim}x{a.dim} matrix", maps_decl, f)
        entries = [[_scalar(F, v, maps_decl, f, ctx) for v in r] for r in rows]
        homs[f] = AlgebraHom(a, b, LinearMap.from_rows(F, entries, a.dim))
    return Precosheaf(cat, obj_alg, homs, name)


def _task(spec: WorkbenchSpec, entry) -> Task:
    if not isinstance(entry, dict):
        _fail("task must be a mapping", entry)
    command = " ".join(str(_get(entry, "command", str, "task")).split())
    if command not in COMMANDS:
        _fail(f"unknown command {command!r}", entry, "command")
    tables = {"category": spec.categories, "precosheaf": spec.precosheaves, "functor": spec.functors}
    args = {}
    for role in COMMANDS[command]:
        value = _get(entry, role, None, f"task {command}")
        _lookup(tables[role], value, role, entry, role)
        args[role] = str(value)
    expect = str(entry.get("expect", "pass"))
    if expect not in ("pass", "fail"):
        _fail("expect must be 'pass' or 'fail'", entry, "expect")
    if "functor" in args and "precosheaf" in args:
        if spec.precosheaves[args["precosheaf"]].category != spec.functors[args["functor"]].source:
            _fail("precosheaf does not live on the functor's source", entry, "precosheaf")
    return Task(command, args, expect, _where(entry)[0])
