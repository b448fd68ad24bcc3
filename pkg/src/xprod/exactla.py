"""Exact scalars and dense multilinear algebra over Q and prime fields.

Scalars are plain values: ``fractions.Fraction`` over the rationals (always
reduced, positive denominator) and ``int`` residues in ``[0, p)`` over a prime
field.  All arithmetic goes through a :class:`Field` instance so results stay
canonical, and equality of canonical values is structural equality.

Tensor conventions used everywhere in the package:

* a :class:`TensorShape` is an ordered list of factor dimensions;
* multi-indices flatten row-major, leftmost factor most significant;
* a :class:`TensorMap` stores a dense ``codomain-total x domain-total``
  matrix, so ``tensor`` is the Kronecker product and factor order is never
  ambiguous.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import prod

from .errors import FieldMismatch, ShapeMismatch

MAX_PRIME = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Exact arithmetic on canonical scalar values."""

    kind: str

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def parse(self, text):
        raise NotImplementedError

    def fmt(self, a) -> str:
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def is_zero(self, a) -> bool:
        return a == self.zero


class Rationals(Field):
    """The field of arbitrary-precision rationals."""

    kind = "rationals"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def parse(self, text):
        if isinstance(text, int):
            return Fraction(text)
        text = str(text).strip()
        if "/" in text:
            # accept a signed denominator, e.g. "3/-6"
            num, _, den = text.partition("/")
            return Fraction(int(num.strip()), int(den.strip()))
        return Fraction(text)

    def fmt(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def is_zero(self, a):
        return not a

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "Rationals()"


class PrimeField(Field):
    """Integers mod p for a prime p < 2**31."""

    kind = "prime"

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"modulus {p!r} is not prime")
        if p >= MAX_PRIME:
            raise ValueError(f"modulus {p} exceeds 2^31")
        self.p = p

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a, b):
        d = a - b
        return d + self.p if d < 0 else d

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (self.p - a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def parse(self, text):
        return int(text) % self.p

    def fmt(self, a):
        return str(a)

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


RATIONALS = Rationals()


@dataclass(frozen=True)
class TensorShape:
    """Ordered factor dimensions of a tensor product of spaces."""

    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.dims:
            raise ShapeMismatch("empty tensor shape")
        if any(d < 1 for d in self.dims):
            raise ShapeMismatch(f"non-positive factor dimension in {self.dims}")

    @cached_property
    def total(self) -> int:
        return prod(self.dims)

    def index(self, multi) -> int:
        return flat_index(self, multi)

    def multi(self, flat: int) -> tuple[int, ...]:
        return unflatten(self, flat)

    def concat(self, other: "TensorShape") -> "TensorShape":
        return TensorShape(self.dims + other.dims)

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)


def shape(*dims: int) -> TensorShape:
    return TensorShape(tuple(dims))


def flat_index(shp: TensorShape, multi) -> int:
    """Row-major flat index of a multi-index, leftmost factor most significant."""
    multi = tuple(multi)
    if len(multi) != len(shp.dims):
        raise ShapeMismatch(f"multi-index {multi} does not match shape {shp.dims}")
    flat = 0
    for i, d in zip(multi, shp.dims):
        if not 0 <= i < d:
            raise ShapeMismatch(f"index {multi} out of range for shape {shp.dims}")
        flat = flat * d + i
    return flat


def unflatten(shp: TensorShape, flat: int) -> tuple[int, ...]:
    if not 0 <= flat < shp.total:
        raise ShapeMismatch(f"flat index {flat} out of range for shape {shp.dims}")
    multi = []
    for d in reversed(shp.dims):
        multi.append(flat % d)
        flat //= d
    return tuple(reversed(multi))


# -- vectors ---------------------------------------------------------------

def vzero(field: Field, n: int) -> tuple:
    return (field.zero,) * n


def basis_vector(field: Field, n: int, i: int) -> tuple:
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def vadd(field: Field, u, v) -> tuple:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vsub(field: Field, u, v) -> tuple:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vscale(field: Field, c, u) -> tuple:
    return tuple(field.mul(c, a) for a in u)


def tensor_vec(field: Field, *vectors) -> tuple:
    """Kronecker product of coordinate vectors, row-major convention."""
    out = (field.one,)
    for v in vectors:
        out = tuple(field.mul(a, b) for a in out for b in v)
    return out


def is_zero_vec(field: Field, v) -> bool:
    return all(field.is_zero(a) for a in v)


# -- matrices (tuples of row tuples) ---------------------------------------

def matmul(field: Field, a, b) -> tuple:
    bt = tuple(zip(*b))
    out = []
    for row in a:
        out.append(tuple(
            _dot(field, row, col) for col in bt
        ))
    return tuple(out)


def _dot(field: Field, u, v):
    s = field.zero
    for x, y in zip(u, v):
        if not field.is_zero(x) and not field.is_zero(y):
            s = field.add(s, field.mul(x, y))
    return s


def identity_rows(field: Field, n: int) -> tuple:
    return tuple(basis_vector(field, n, i) for i in range(n))


def invert(field: Field, rows) -> tuple:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(rows)
    work = [list(r) + list(basis_vector(field, n, i)) for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not field.is_zero(work[r][col])), None)
        if pivot is None:
            raise ShapeMismatch("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        pinv = field.inv(work[col][col])
        work[col] = [field.mul(pinv, x) for x in work[col]]
        for r in range(n):
            if r != col and not field.is_zero(work[r][col]):
                factor = work[r][col]
                work[r] = [field.sub(x, field.mul(factor, y))
                           for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def greedy_basis_completion(field: Field, seeds, n: int) -> tuple[tuple, tuple[int, ...]]:
    """Complete independent seed vectors to a basis of k^n.

    Standard basis vectors are scanned in index order and appended whenever
    they are independent of what was collected so far, which makes the
    completion deterministic.  Returns the basis as a tuple of column vectors
    (seeds first) and the chosen standard indices.
    """
    basis = [tuple(s) for s in seeds]
    chosen: list[int] = []

    def rank(vectors):
        m = [list(v) for v in vectors]
        r = 0
        for col in range(n):
            pivot = next((i for i in range(r, len(m)) if not field.is_zero(m[i][col])), None)
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            pinv = field.inv(m[r][col])
            m[r] = [field.mul(pinv, x) for x in m[r]]
            for i in range(len(m)):
                if i != r and not field.is_zero(m[i][col]):
                    f = m[i][col]
                    m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
            r += 1
        return r

    current = rank(basis)
    if current != len(basis):
        raise ShapeMismatch("seed vectors are dependent")
    for i in range(n):
        if len(basis) == n:
            break
        cand = basis + [basis_vector(field, n, i)]
        if rank(cand) == len(cand):
            basis = cand
            chosen.append(i)
    if len(basis) != n:
        raise ShapeMismatch("could not complete to a basis")
    return tuple(basis), tuple(chosen)


# -- tensor maps ------------------------------------------------------------

@dataclass(frozen=True)
class TensorMap:
    """Linear map between tensor products, stored as a dense exact matrix.

    ``rows`` has one row per codomain coordinate and one column per domain
    coordinate, both flattened row-major.
    """

    field: Field
    domain: TensorShape
    codomain: TensorShape
    rows: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.rows) != self.codomain.total:
            raise ShapeMismatch(
                f"matrix has {len(self.rows)} rows, codomain total is {self.codomain.total}")
        for r in self.rows:
            if len(r) != self.domain.total:
                raise ShapeMismatch(
                    f"matrix row length {len(r)}, domain total is {self.domain.total}")

    def apply(self, vec) -> tuple:
        if len(vec) != self.domain.total:
            raise ShapeMismatch(
                f"vector length {len(vec)}, domain total is {self.domain.total}")
        return tuple(_dot(self.field, row, vec) for row in self.rows)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def column_items(self, j: int) -> tuple:
        """Nonzero (row, value) pairs of column j."""
        f = self.field
        return tuple((i, row[j]) for i, row in enumerate(self.rows) if not f.is_zero(row[j]))

    def reshaped(self, domain: TensorShape | None = None,
                 codomain: TensorShape | None = None) -> "TensorMap":
        """Reinterpret factor grouping without touching the matrix."""
        domain = domain if domain is not None else self.domain
        codomain = codomain if codomain is not None else self.codomain
        if domain.total != self.domain.total or codomain.total != self.codomain.total:
            raise ShapeMismatch("reshape must preserve total dimensions")
        return TensorMap(self.field, domain, codomain, self.rows)

    def same_matrix(self, other: "TensorMap") -> bool:
        return self.field == other.field and self.rows == other.rows


def from_columns(field: Field, domain: TensorShape, codomain: TensorShape,
                 columns) -> TensorMap:
    rows = tuple(tuple(col[i] for col in columns) for i in range(codomain.total))
    return TensorMap(field, domain, codomain, rows)


def identity(field: Field, shp: TensorShape) -> TensorMap:
    return TensorMap(field, shp, shp, identity_rows(field, shp.total))


def zero_map(field: Field, domain: TensorShape, codomain: TensorShape) -> TensorMap:
    row = vzero(field, domain.total)
    return TensorMap(field, domain, codomain, tuple(row for _ in range(codomain.total)))


def compose(*maps: TensorMap) -> TensorMap:
    """Composite g o f o ...; the rightmost map is applied first."""
    if not maps:
        raise ShapeMismatch("compose needs at least one map")
    out = maps[0]
    for f in maps[1:]:
        if out.field != f.field:
            raise FieldMismatch("composing maps over different fields")
        if out.domain.total != f.codomain.total:
            raise ShapeMismatch(
                f"compose: domain total {out.domain.total} != codomain total {f.codomain.total}")
        out = TensorMap(out.field, f.domain, out.codomain,
                        matmul(out.field, out.rows, f.rows))
    return out


def tensor(*maps: TensorMap) -> TensorMap:
    """Kronecker product of maps; shapes concatenate in order."""
    if not maps:
        raise ShapeMismatch("tensor needs at least one map")
    out = maps[0]
    for g in maps[1:]:
        if out.field != g.field:
            raise FieldMismatch("tensoring maps over different fields")
        field = out.field
        rows = []
        for rf in out.rows:
            for rg in g.rows:
                rows.append(tuple(field.mul(a, b) for a in rf for b in rg))
        out = TensorMap(field, out.domain.concat(g.domain),
                        out.codomain.concat(g.codomain), tuple(rows))
    return out


def flip(field: Field, d1: int, d2: int) -> TensorMap:
    """The map sending a basis vector e_(i,j) to e_(j,i)."""
    dom = shape(d1, d2)
    cod = shape(d2, d1)
    columns = []
    for i in range(d1):
        for j in range(d2):
            columns.append(basis_vector(field, cod.total, cod.index((j, i))))
    return from_columns(field, dom, cod, columns)


def graded_flip(field: Field, d1: int, d2: int, deg1, deg2) -> TensorMap:
    """Sign-twisted flip: e_(i,j) goes to (-1)^(deg1[i]*deg2[j]) e_(j,i)."""
    dom = shape(d1, d2)
    cod = shape(d2, d1)
    minus_one = field.neg(field.one)
    columns = []
    for i in range(d1):
        for j in range(d2):
            col = list(vzero(field, cod.total))
            col[cod.index((j, i))] = minus_one if deg1[i] and deg2[j] else field.one
            columns.append(tuple(col))
    return from_columns(field, dom, cod, columns)


def permute_factors(field: Field, dims, perm) -> TensorMap:
    """Rearrange tensor factors: output factor t is input factor perm[t]."""
    dims = tuple(dims)
    perm = tuple(perm)
    if sorted(perm) != list(range(len(dims))):
        raise ShapeMismatch(f"{perm} is not a permutation of the factors")
    dom = TensorShape(dims)
    cod = TensorShape(tuple(dims[p] for p in perm))
    columns = []
    for multi in itertools.product(*(range(d) for d in dims)):
        target = tuple(multi[p] for p in perm)
        columns.append(basis_vector(field, cod.total, cod.index(target)))
    return from_columns(field, dom, cod, columns)


def vector_map(field: Field, vec) -> TensorMap:
    """Embed the ground field: the map [1] -> [n] sending 1 to the vector."""
    return from_columns(field, shape(1), shape(len(vec)), (tuple(vec),))
