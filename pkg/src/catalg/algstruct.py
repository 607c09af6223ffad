"""Finite-dimensional algebras by structure constants and the structures built on them.

An algebra stores ``table[i][j]``, the coordinate vector of ``b_i * b_j``,
densely.  Multiplication goes through a sparse cache of the same table, so
the O(dim^3) axiom scans stay cheap on the algebras this package builds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import PreconditionError
from .fincat import FinCategory, Violation
from .linalg import Field, LinearMap, Subspace, column_space

__all__ = [
    "FinAlgebra",
    "AlgebraElement",
    "AlgebraHom",
    "Precosheaf",
    "GradedAlgebra",
    "InteriorAlgebra",
    "CatModule",
    "FunctorData",
    "validate_algebra",
    "validate_hom",
    "validate_precosheaf",
    "validate_graded",
    "validate_interior",
    "validate_module",
    "multiply",
    "precosheaf_to_module",
    "module_to_precosheaf",
    "field_algebra",
    "product_of_fields",
    "matrix_algebra",
    "cyclic_group_algebra",
    "preset_algebra",
    "subalgebra",
    "identity_hom",
    "constant_precosheaf",
]


def _sparse(v: Sequence) -> tuple[tuple[int, object], ...]:
    return tuple((k, x) for k, x in enumerate(v) if x)


@dataclass(frozen=True, eq=False)
class FinAlgebra:
    field: Field
    labels: tuple[str, ...]
    table: tuple[tuple[tuple, ...], ...]
    unit: tuple
    name: str = "A"
    _sp: tuple = field(default=None, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError(f"structure table of {self.name} is not {n}x{n}")
        if any(len(v) != n for row in self.table for v in row) or len(self.unit) != n:
            raise ValueError(f"coordinate vectors of {self.name} must have length {n}")
        object.__setattr__(self, "_sp", tuple(tuple(_sparse(v) for v in row) for row in self.table))

    @classmethod
    def from_products(
        cls,
        field: Field,
        labels: Sequence[str],
        products: Mapping[tuple[int, int], Mapping[int, object]],
        unit: Mapping[int, object],
        name: str = "A",
    ) -> "FinAlgebra":
        """Build from sparse data: ``products[(i, j)] = {k: coeff}``, absent means zero."""
        n = len(labels)
        zero = field.zero
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                v = [zero] * n
                for k, c in products.get((i, j), {}).items():
                    v[k] = field(c)
                row.append(tuple(v))
            table.append(tuple(row))
        u = [zero] * n
        for k, c in unit.items():
            u[k] = field(c)
        return cls(field, tuple(labels), tuple(table), tuple(u), name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinAlgebra):
            return NotImplemented
        return self.labels == other.labels and self.table == other.table and self.unit == other.unit

    def __hash__(self) -> int:
        return hash((self.labels, self.unit))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def zero_vector(self) -> tuple:
        return tuple(self.field.zero for _ in range(self.dim))

    def basis_vector(self, i: int) -> tuple:
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.dim))

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        """Product of two coordinate vectors."""
        acc = [self.field.zero] * self.dim
        su = _sparse(u)
        sv = _sparse(v)
        for i, a in su:
            row = self._sp[i]
            for j, b in sv:
                ab = a * b
                for k, c in row[j]:
                    acc[k] = acc[k] + ab * c
        return tuple(acc)

    def mul_basis(self, i: int, j: int) -> tuple:
        return self.table[i][j]

    def left_mult(self, u: Sequence) -> LinearMap:
        """Matrix of ``c -> u * c``."""
        return LinearMap.from_columns(self.field, [self.mul(u, self.basis_vector(j)) for j in range(self.dim)], self.dim)

    def right_mult(self, u: Sequence) -> LinearMap:
        """Matrix of ``c -> c * u``."""
        return LinearMap.from_columns(self.field, [self.mul(self.basis_vector(j), u) for j in range(self.dim)], self.dim)

    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(self.field(x) for x in coords))

    def elem(self, label: str) -> "AlgebraElement":
        return AlgebraElement(self, self.basis_vector(self.labels.index(label)))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    def with_table(self, table) -> "FinAlgebra":
        return FinAlgebra(self.field, self.labels, table, self.unit, self.name)


@dataclass(frozen=True)
class AlgebraElement:
    algebra: FinAlgebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValueError("coordinate length does not match the algebra")

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same(self, other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same(self, other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "AlgebraElement":
        c = self.algebra.field(c)
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self) -> str:
        terms = [f"{c}*{lab}" for c, lab in zip(self.coords, self.algebra.labels) if c]
        return " + ".join(terms) if terms else "0"


def _same(u: AlgebraElement, v: AlgebraElement) -> None:
    if u.algebra is not v.algebra and u.algebra != v.algebra:
        raise PreconditionError("elements belong to different algebras")


def multiply(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    _same(u, v)
    return AlgebraElement(u.algebra, u.algebra.mul(u.coords, v.coords))


def validate_algebra(a: FinAlgebra) -> list[Violation]:
    """Associativity over every basis triple and both unit laws over every basis element."""
    out = []
    n = a.dim
    lab = a.labels
    for i in range(n):
        ei = a.basis_vector(i)
        if a.mul(a.unit, ei) != ei:
            out.append(Violation("left-unit", (lab[i],)))
        if a.mul(ei, a.unit) != ei:
            out.append(Violation("right-unit", (lab[i],)))
    for i in range(n):
        for j in range(n):
            ij = a.table[i][j]
            for k in range(n):
                lhs = a.mul(ij, a.basis_vector(k))
                rhs = a.mul(a.basis_vector(i), a.table[j][k])
                if lhs != rhs:
                    out.append(Violation("associativity", (lab[i], lab[j], lab[k])))
    return out


# ---------------------------------------------------------------------------
# presets


def field_algebra(F: Field, name: str = "k") -> FinAlgebra:
    return FinAlgebra.from_products(F, ["1"], {(0, 0): {0: 1}}, {0: 1}, name)


def product_of_fields(F: Field, n: int, name: str | None = None) -> FinAlgebra:
    """``k x ... x k`` with orthogonal idempotents ``e1..en``."""
    labels = [f"e{i + 1}" for i in range(n)]
    products = {(i, i): {i: 1} for i in range(n)}
    return FinAlgebra.from_products(F, labels, products, {i: 1 for i in range(n)}, name or f"k^{n}")


def matrix_algebra(F: Field, n: int, name: str | None = None) -> FinAlgebra:
    """``M_n(k)`` on matrix units ``E11, E12, ...`` in row-major order."""
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    idx = lambda i, j: i * n + j  # noqa: E731
    products = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                products[(idx(i, j), idx(j, l))] = {idx(i, l): 1}
    return FinAlgebra.from_products(F, labels, products, {idx(i, i): 1 for i in range(n)}, name or f"M{n}")


def cyclic_group_algebra(F: Field, n: int, name: str | None = None) -> FinAlgebra:
    labels = [f"g{i}" for i in range(n)]
    products = {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)}
    return FinAlgebra.from_products(F, labels, products, {0: 1}, name or f"kC{n}")


def preset_algebra(F: Field, spec: str, name: str | None = None) -> FinAlgebra:
    """``field``, ``product_of_fields n``, ``matrix n`` or ``group_algebra Cn``."""
    parts = spec.split()
    try:
        if parts == ["field"]:
            return field_algebra(F, name or "k")
        if len(parts) == 2 and parts[0] == "product_of_fields":
            return product_of_fields(F, int(parts[1]), name)
        if len(parts) == 2 and parts[0] == "matrix":
            return matrix_algebra(F, int(parts[1]), name)
        if len(parts) == 2 and parts[0] == "group_algebra" and parts[1][:1] in ("C", "c"):
            return cyclic_group_algebra(F, int(parts[1][1:]), name)
    except ValueError:
        pass
    raise ValueError(f"unknown algebra preset {spec!r}")


def subalgebra(a: FinAlgebra, sub: Subspace, name: str | None = None) -> FinAlgebra:
    """Restrict the structure constants of ``a`` to ``sub`` (must contain 1 and be closed)."""
    from .errors import WellDefinednessError

    if not sub.contains(a.unit):
        raise WellDefinednessError("subalgebra-unit", (a.name,), "unit not in the subspace")
    table = []
    for u in sub.basis:
        row = []
        for v in sub.basis:
            p = a.mul(u, v)
            if not sub.contains(p):
                raise WellDefinednessError("subalgebra-closure", (a.name,), "product leaves the subspace")
            row.append(sub.coordinates(p))
        table.append(tuple(row))
    labels = tuple(_vector_label(a, u) for u in sub.basis)
    return FinAlgebra(a.field, labels, tuple(table), sub.coordinates(a.unit), name or f"{a.name}|sub")


def _vector_label(a: FinAlgebra, v: Sequence) -> str:
    terms = []
    for c, lab in zip(v, a.labels):
        if not c:
            continue
        if c == 1:
            terms.append(lab)
        elif c == -1:
            terms.append(f"-{lab}")
        else:
            terms.append(f"{c}{lab}")
    return "+".join(terms).replace("+-", "-") or "0"


# ---------------------------------------------------------------------------
# homomorphisms and precosheaves


@dataclass(frozen=True)
class AlgebraHom:
    source: FinAlgebra
    target: FinAlgebra
    map: LinearMap

    def __post_init__(self):
        if self.map.shape != (self.target.dim, self.source.dim):
            raise ValueError(
                f"hom {self.source.name} -> {self.target.name} needs a "
                f"{self.target.dim}x{self.source.dim} matrix, got {self.map.shape}"
            )

    def __call__(self, v: Sequence) -> tuple:
        return self.map.apply(v)

    def __matmul__(self, other: "AlgebraHom") -> "AlgebraHom":
        return AlgebraHom(other.source, self.target, self.map @ other.map)


def identity_hom(a: FinAlgebra) -> AlgebraHom:
    return AlgebraHom(a, a, LinearMap.identity(a.field, a.dim))


def validate_hom(h: AlgebraHom) -> list[Violation]:
    out = []
    src, tgt = h.source, h.target
    if h(src.unit) != tgt.unit:
        out.append(Violation("unital", (src.name, tgt.name)))
    images = [h(src.basis_vector(i)) for i in range(src.dim)]
    for i in range(src.dim):
        for j in range(src.dim):
            if h(src.table[i][j]) != tgt.mul(images[i], images[j]):
                out.append(Violation("multiplicative", (src.labels[i], src.labels[j])))
    return out


@dataclass(frozen=True, eq=False)
class Precosheaf:
    category: FinCategory
    obj_alg: Mapping[str, FinAlgebra]
    mor_hom: Mapping[str, AlgebraHom]
    name: str = "R"

    def __post_init__(self):
        object.__setattr__(self, "obj_alg", dict(self.obj_alg))
        object.__setattr__(self, "mor_hom", dict(self.mor_hom))

    def __getitem__(self, key: str):
        if key in self.mor_hom:
            return self.mor_hom[key]
        return self.obj_alg[key]


def constant_precosheaf(c: FinCategory, alg: FinAlgebra | None = None, field: Field | None = None) -> Precosheaf:
    """Every object goes to ``alg`` (default: the ground field), every morphism to the identity."""
    if alg is None:
        if field is None:
            raise ValueError("need an algebra or a field")
        alg = field_algebra(field)
    homs = {f: identity_hom(alg) for f in c.mor_ids}
    return Precosheaf(c, {x: alg for x in c.objects}, homs, name="const")


def validate_precosheaf(r: Precosheaf) -> list[Violation]:
    c = r.category
    out = []
    for x in c.objects:
        if x not in r.obj_alg:
            out.append(Violation("object-algebra", (x,), "missing"))
        else:
            out.extend(Violation(f"algebra:{v.axiom}", (x,) + v.witness) for v in validate_algebra(r.obj_alg[x]))
    if out:
        return out
    for m in c.morphisms:
        h = r.mor_hom.get(m.id)
        if h is None:
            out.append(Violation("morphism-hom", (m.id,), "missing"))
            continue
        if h.source != r.obj_alg[m.dom] or h.target != r.obj_alg[m.cod]:
            out.append(Violation("hom-endpoints", (m.id,), f"expected {m.dom} -> {m.cod}"))
            continue
        out.extend(Violation(f"hom:{v.axiom}", (m.id,) + v.witness) for v in validate_hom(h))
    if out:
        return out
    for x in c.objects:
        i = c.identities[x]
        if r.mor_hom[i].map != LinearMap.identity(r.obj_alg[x].field, r.obj_alg[x].dim):
            out.append(Violation("preserves-identity", (i,)))
    for g, f in c.composable_pairs():
        gf = c.compose(g, f)
        if r.mor_hom[gf].map != r.mor_hom[g].map @ r.mor_hom[f].map:
            out.append(Violation("preserves-composition", (g, f), f"R({gf}) != R({g}) R({f})"))
    return out


# ---------------------------------------------------------------------------
# graded and interior algebras


@dataclass(frozen=True)
class GradedAlgebra:
    algebra: FinAlgebra
    grading_category: FinCategory
    degree: tuple[str, ...]

    def component(self, f: str) -> list[int]:
        return [i for i, d in enumerate(self.degree) if d == f]


def validate_graded(g: GradedAlgebra) -> list[Violation]:
    a, c = g.algebra, g.grading_category
    out = []
    if len(g.degree) != a.dim:
        return [Violation("degree-total", (), f"{len(g.degree)} degrees for dim {a.dim}")]
    for i in range(a.dim):
        for j in range(a.dim):
            prod = a.table[i][j]
            di, dj = g.degree[i], g.degree[j]
            if not c.composable(di, dj):
                if any(prod):
                    out.append(Violation("graded-zero", (a.labels[i], a.labels[j]), f"{di}, {dj} not composable"))
                continue
            d = c.compose(di, dj)
            for k, x in enumerate(prod):
                if x and g.degree[k] != d:
                    out.append(
                        Violation(
                            "graded-product",
                            (a.labels[i], a.labels[j]),
                            f"support {a.labels[k]} has degree {g.degree[k]}, expected {d}",
                        )
                    )
                    break
    return out


@dataclass(frozen=True)
class InteriorAlgebra:
    algebra: FinAlgebra
    base: FinAlgebra
    structural: AlgebraHom


def validate_interior(ia: InteriorAlgebra) -> list[Violation]:
    if ia.structural.source != ia.base or ia.structural.target != ia.algebra:
        return [Violation("structural-endpoints", ())]
    return validate_hom(ia.structural)


# ---------------------------------------------------------------------------
# modules over category algebras


@dataclass(frozen=True)
class CatModule:
    """A left module over the category algebra of ``category``: one square matrix per morphism."""

    category: FinCategory
    dim: int
    action: Mapping[str, LinearMap]
    blocks: Mapping[str, tuple[int, int]] | None = None  # object -> (offset, size) when known


def validate_module(m: CatModule) -> list[Violation]:
    c = m.category
    out = []
    fieldk = None
    for f in c.mor_ids:
        a = m.action.get(f)
        if a is None or a.shape != (m.dim, m.dim):
            out.append(Violation("action-shape", (f,)))
        else:
            fieldk = a.field
    if out:
        return out
    if fieldk is None:
        return out
    for g in c.mor_ids:
        for f in c.mor_ids:
            prod = m.action[g] @ m.action[f]
            if c.composable(g, f):
                if prod != m.action[c.compose(g, f)]:
                    out.append(Violation("module-composition", (g, f)))
            elif not prod.is_zero():
                out.append(Violation("module-orthogonality", (g, f)))
    total = LinearMap.zero(fieldk, m.dim, m.dim)
    for x in c.objects:
        total = total + m.action[c.identities[x]]
    if total != LinearMap.identity(fieldk, m.dim):
        out.append(Violation("module-unit", ()))
    return out


def precosheaf_to_module(s: Precosheaf) -> CatModule:
    """Block sum of the object spaces; ``f`` acts by ``S(f)`` from the dom block into the cod block."""
    c = s.category
    blocks, offset = {}, 0
    for x in c.objects:
        blocks[x] = (offset, s.obj_alg[x].dim)
        offset += s.obj_alg[x].dim
    n = offset
    field_ = next(iter(s.obj_alg.values())).field
    action = {}
    for m in c.morphisms:
        data = [[field_.zero] * n for _ in range(n)]
        (do, dn), (co, cn) = blocks[m.dom], blocks[m.cod]
        mat = s.mor_hom[m.id].map
        for i in range(cn):
            for j in range(dn):
                data[co + i][do + j] = mat.entries[i][j]
        action[m.id] = LinearMap(field_, n, n, tuple(tuple(r) for r in data))
    return CatModule(c, n, action, blocks)


@dataclass(frozen=True)
class FunctorData:
    """A vector-space valued functor: a subspace per object and a matrix per morphism."""

    category: FinCategory
    spaces: Mapping[str, Subspace]
    maps: Mapping[str, LinearMap]

    @property
    def dims(self) -> dict[str, int]:
        return {x: v.dim for x, v in self.spaces.items()}


def module_to_precosheaf(m: CatModule) -> FunctorData:
    """``x -> 1_x . M`` and ``f -> (f .)`` written in the echelon bases of those images."""
    c = m.category
    spaces = {x: column_space(m.action[c.identities[x]]) for x in c.objects}
    maps = {}
    for mor in c.morphisms:
        src, tgt = spaces[mor.dom], spaces[mor.cod]
        act = m.action[mor.id]
        cols = [tgt.coordinates(act.apply(b)) for b in src.basis]
        fld = act.field
        maps[mor.id] = (
            LinearMap.from_columns(fld, cols, tgt.dim) if cols else LinearMap.zero(fld, tgt.dim, 0)
        )
    return FunctorData(c, spaces, maps)
