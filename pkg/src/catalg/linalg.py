"""Exact scalar fields and dense linear algebra over them.

Two fields are supported: the rationals (backed by :class:`fractions.Fraction`)
and prime fields GF(p).  Every routine here is exact; nothing ever touches a
float.  Matrices are dense tuples of rows, which is plenty at the sizes the
rest of the package produces (a few hundred at most).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Field",
    "Rationals",
    "PrimeField",
    "GF",
    "QQ",
    "parse_field",
    "is_prime",
    "LinearMap",
    "Subspace",
    "QuotientMap",
    "kernel",
    "rank",
    "is_injective",
    "is_surjective",
    "column_space",
    "simultaneous_fixed_space",
    "quotient_map",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        # accept the unicode minus used in hand-written documents
        return Fraction(value.strip().replace("−", "-"))
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


class Field:
    """Common interface: ``field(x)`` coerces ints, fraction strings and Fractions."""

    name: str

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):  # pragma: no cover - abstract
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class Rationals(Field):
    name = "rationals"

    def __call__(self, value) -> Fraction:
        return _to_fraction(value)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("rationals")


class GF:
    """An element of the prime field with ``p`` elements."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GF(-self.v, self.p)

    def inverse(self) -> "GF":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return GF(pow(self.v, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * GF(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(o, self.p) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, GF):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.v, self.p))

    def __bool__(self) -> bool:
        return self.v != 0

    def __repr__(self) -> str:
        return f"{self.v}"


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"gf:{p}"

    def __call__(self, value) -> GF:
        if isinstance(value, GF):
            if value.p != self.p:
                raise ValueError(f"element of GF({value.p}) used in GF({self.p})")
            return value
        q = _to_fraction(value)
        if q.denominator % self.p == 0:
            raise ValueError(f"denominator of {q} vanishes in GF({self.p})")
        return GF(q.numerator, self.p) / q.denominator

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("gf", self.p))


QQ = Rationals()


def parse_field(text: str) -> Field:
    """``"rationals"`` (or ``"Q"``) and ``"gf:<p>"``."""
    t = text.strip().lower()
    if t in ("rationals", "q", "qq"):
        return QQ
    if t.startswith("gf:") or t.startswith("gf"):
        digits = t[3:] if t.startswith("gf:") else t[2:]
        try:
            p = int(digits)
        except ValueError:
            raise ValueError(f"malformed field {text!r}") from None
        return PrimeField(p)
    raise ValueError(f"unknown field {text!r}")


# ---------------------------------------------------------------------------
# elimination core


def _rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form in place; returns (nonzero rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                factor = rows[i][c]
                if factor:
                    rows[i] = [a - factor * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


@dataclass(frozen=True)
class LinearMap:
    """A matrix ``rows x cols``; column ``j`` is the image of the ``j``-th source basis vector."""

    field: Field
    rows: int
    cols: int
    entries: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not match declared shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "LinearMap":
        rows = [tuple(field(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "LinearMap":
        cols = len(columns)
        data = [[field.zero] * cols for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError(f"column {j} has length {len(col)}, expected {rows}")
            for i, x in enumerate(col):
                data[i][j] = field(x)
        return cls(field, rows, cols, tuple(tuple(r) for r in data))

    @classmethod
    def identity(cls, field: Field, n: int) -> "LinearMap":
        one, zero = field.one, field.zero
        return cls(field, n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "LinearMap":
        z = field.zero
        return cls(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} applied to {self.rows}x{self.cols} map")
        zero = self.field.zero
        out = []
        for row in self.entries:
            acc = zero
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} after {other.shape}")
        zero = self.field.zero
        ocols = other.columns()
        data = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out_row = []
            for col in ocols:
                acc = zero
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                out_row.append(acc)
            data.append(tuple(out_row))
        return LinearMap(self.field, self.rows, other.cols, tuple(data))

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._same_shape(other)
        return LinearMap(
            self.field,
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        self._same_shape(other)
        return LinearMap(
            self.field,
            self.rows,
            self.cols,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def _same_shape(self, other: "LinearMap") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def transpose(self) -> "LinearMap":
        return LinearMap.from_columns(self.field, self.entries, self.cols) if self.rows else LinearMap.zero(
            self.field, self.cols, 0
        )

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def vstack(self, other: "LinearMap") -> "LinearMap":
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return LinearMap(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field^ambient_dim`` stored by its reduced echelon basis.

    Because the reduced echelon basis is unique, two subspaces are equal
    exactly when their ``basis`` tuples are equal.
    """

    field: Field
    ambient_dim: int
    basis: tuple[tuple, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append([field(x) for x in v])
        reduced, pivots = _rref(rows, ambient_dim)
        return cls(field, ambient_dim, tuple(tuple(r) for r in reduced), tuple(pivots))

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls.span(field, n, LinearMap.identity(field, n).entries)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after clearing the pivot coordinates."""
        out = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = out[p]
            if c:
                out = [a - c * b for a, b in zip(out, row)]
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in the echelon basis; raises if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector does not lie in the subspace")
        return tuple(v[p] for p in self.pivots)

    def inclusion(self) -> LinearMap:
        """The ``ambient_dim x dim`` matrix whose columns are the basis vectors."""
        return LinearMap.from_columns(self.field, self.basis, self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient_dim)
        # a.u = b.w  <=>  [U | -W] (a, b) = 0
        cols = list(self.basis) + [tuple(-x for x in w) for w in other.basis]
        k = kernel(LinearMap.from_columns(self.field, cols, self.ambient_dim))
        n = self.dim
        zero = self.field.zero
        vecs = []
        for sol in k.basis:
            acc = [zero] * self.ambient_dim
            for a, u in zip(sol[:n], self.basis):
                if a:
                    acc = [x + a * y for x, y in zip(acc, u)]
            vecs.append(acc)
        return Subspace.span(self.field, self.ambient_dim, vecs)


def kernel(m: LinearMap) -> Subspace:
    """Null space of ``m`` in canonical echelon form."""
    field = m.field
    reduced, pivots = _rref([list(r) for r in m.entries], m.cols)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [field.zero] * m.cols
        v[free] = field.one
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        vectors.append(v)
    return Subspace.span(field, m.cols, vectors)


def rank(m: LinearMap) -> int:
    _, pivots = _rref([list(r) for r in m.entries], m.cols)
    return len(pivots)


def is_injective(m: LinearMap) -> bool:
    return rank(m) == m.cols


def is_surjective(m: LinearMap) -> bool:
    return rank(m) == m.rows


def column_space(m: LinearMap) -> Subspace:
    return Subspace.span(m.field, m.rows, m.columns())


def simultaneous_fixed_space(maps: Sequence[LinearMap], ambient_dim: int, field: Field | None = None) -> Subspace:
    """Vectors fixed by every map in ``maps``; the whole space if ``maps`` is empty."""
    if not maps:
        if field is None:
            raise ValueError("field is required when no maps are given")
        return Subspace.full(field, ambient_dim)
    field = maps[0].field
    stacked = None
    ident = LinearMap.identity(field, ambient_dim)
    for m in maps:
        if m.shape != (ambient_dim, ambient_dim):
            raise ValueError(f"map of shape {m.shape} in ambient dimension {ambient_dim}")
        d = m - ident
        stacked = d if stacked is None else stacked.vstack(d)
    return kernel(stacked)


@dataclass(frozen=True)
class QuotientMap:
    proj: LinearMap
    section: LinearMap
    sub: Subspace

    @property
    def dim(self) -> int:
        return self.proj.rows


def quotient_map(ambient_dim: int, n: Subspace) -> QuotientMap:
    """Projection onto ``field^ambient_dim / n`` plus a linear section.

    Quotient coordinates are the non-pivot coordinates of the remainder
    modulo the echelon basis of ``n``; the section sends the ``t``-th quotient
    basis vector to the corresponding standard basis vector.
    """
    if n.ambient_dim != ambient_dim:
        raise ValueError("subspace lives in a different ambient space")
    field = n.field
    pivot_set = set(n.pivots)
    free = [c for c in range(ambient_dim) if c not in pivot_set]
    proj_cols = []
    for j in range(ambient_dim):
        e = [field.zero] * ambient_dim
        e[j] = field.one
        r = n.reduce(e)
        proj_cols.append([r[c] for c in free])
    q = len(free)
    proj = LinearMap.from_columns(field, proj_cols, q) if ambient_dim else LinearMap.zero(field, q, 0)
    sec_cols = []
    for c in free:
        e = [field.zero] * ambient_dim
        e[c] = field.one
        sec_cols.append(e)
    section = LinearMap.from_columns(field, sec_cols, ambient_dim) if q else LinearMap.zero(field, ambient_dim, 0)
    if __debug__:
        if (proj @ section) != LinearMap.identity(field, q):
            raise AssertionError("proj . section is not the identity")
        if kernel(proj) != n:
            raise AssertionError("kernel of the projection differs from the subspace")
    return QuotientMap(proj, section, n)
