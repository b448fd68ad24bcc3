"""Ready-made builders on top of the two-sided crossed product, and a
finite-field search that doubles as a fixture oracle.

* :func:`iterated_ttp` glues three pairwise twisting maps satisfying the
  braid relation into the algebra on A (x) B (x) C with multiplication
  ``(a⊗b⊗c)(a'⊗b'⊗c') = a (a'_R3)_R1 ⊗ b_R1 b'_R2 ⊗ (c_R3)_R2 c'``.
* :func:`ma_build` assembles two-sided data from coalgebra-based input
  (G, R, T, τ) with ``E(h⊗h') = (h_1)^G ⊗ (h'_1)_G ⊗ τ(h_2, h'_2)``.
* :func:`remark1_transport` (R1 = flip) rewrites the two-sided product as a
  mirror crossed product over the twisted tensor product A (x)_R3 C.
* :func:`remark2_lr` (R3 = flip) rewrites it as an L-R-style product on
  V (x) (A (x) C) built from the maps J, T, γ, η.
* :func:`search_fp` enumerates map tuples over a prime field and returns the
  ones passing every two-sided condition.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .algebra import (
    Coalgebra,
    FinAlgebra,
    PointedSpace,
    conjugate_algebra,
    new_algebra,
    ordinary_tensor,
    same_algebra,
)
from .crossed import MirrorData, build_mirror, build_ttp, check_mirror, check_twisting
from .errors import (
    AxiomFailure,
    FieldMismatch,
    InternalCheckError,
    PreconditionFail,
    SearchSpaceTooLarge,
    ShapeMismatch,
)
from .exactla import (
    Field,
    PrimeField,
    TensorMap,
    basis_vector,
    compose,
    flip,
    from_columns,
    identity,
    permute_factors,
    shape,
    tensor,
    tensor_vec,
    vector_map,
)
from .report import ConditionResult, Report, Witness, merge
from .twosided import TwoSidedData, _Ten, build_twosided, check_twosided

SEARCH_MAP_NAMES = ("R1", "R2", "R3", "E")


def product_connector(a: FinAlgebra, b: FinAlgebra, c: FinAlgebra) -> TensorMap:
    """The map v ⊗ v' -> 1_A ⊗ vv' ⊗ 1_C built from the middle algebra."""
    f = a.field
    cols = []
    for j in range(b.dim):
        for jp in range(b.dim):
            cols.append(tensor_vec(f, a.unit, b.basis_product(j, jp), c.unit))
    return from_columns(f, shape(b.dim, b.dim), shape(a.dim, b.dim, c.dim), tuple(cols))


def _prefixed(prefix: str, rep: Report) -> Report:
    return Report(tuple(
        ConditionResult(f"{prefix}:{e.name}", e.passed, e.witness, e.informational)
        for e in rep.entries))


def braid_report(r1: TensorMap, r2: TensorMap, r3: TensorMap,
                 a: FinAlgebra, b: FinAlgebra, c: FinAlgebra) -> Report:
    """The hexagon identity for three twisting maps, checked columnwise."""
    f = a.field
    ida = identity(f, shape(a.dim))
    idb = identity(f, shape(b.dim))
    idc = identity(f, shape(c.dim))
    lhs = compose(tensor(ida, r2), tensor(r3, idb), tensor(idc, r1))
    rhs = compose(tensor(r1, idc), tensor(idb, r3), tensor(r2, ida))
    witness = None
    for j in range(lhs.domain.total):
        if lhs.column(j) != rhs.column(j):
            witness = Witness(lhs.domain.multi(j), lhs.column(j), rhs.column(j),
                              "(id⊗R2)∘(R3⊗id)∘(id⊗R1)=(R1⊗id)∘(id⊗R3)∘(R2⊗id)")
            break
    return Report((ConditionResult("braid", witness is None, witness),))


def iterated_ttp(a: FinAlgebra, b: FinAlgebra, c: FinAlgebra,
                 r1: TensorMap, r2: TensorMap, r3: TensorMap) -> FinAlgebra:
    """Iterated twisted tensor product of three algebras.

    Requires R1, R2, R3 to be pairwise twisting maps satisfying the braid
    relation; delegates to the two-sided product with the middle slot pointed
    by 1_B and E(b⊗b') = 1_A ⊗ bb' ⊗ 1_C, then verifies the multiplication
    against its own displayed formula.
    """
    rep = merge(
        _prefixed("R1", check_twisting(r1, a, b)),
        _prefixed("R2", check_twisting(r2, b, c)),
        _prefixed("R3", check_twisting(r3, a, c)),
        braid_report(r1, r2, r3, a, b, c),
    )
    if not rep.all_pass:
        raise AxiomFailure(rep, "iterated twisted tensor product preconditions fail")
    data = TwoSidedData(a, b.as_pointed(), c, r1, r2, r3, product_connector(a, b, c))
    out = build_twosided(data)
    f = a.field
    dims = (a.dim, b.dim, c.dim, a.dim, b.dim, c.dim)
    triple = shape(a.dim, b.dim, c.dim)
    for idx in itertools.product(*(range(n) for n in dims)):
        t = _Ten.basis(f, dims, idx)
        t = t.map_at(r3, 2)            # (c, a') -> a'_R3, c_R3
        t = t.map_at(r1, 1)            # (b, a'_R3) -> (a'_R3)_R1, b_R1
        t = t.map_at(r2, 3)            # (c_R3, b') -> b'_R2, (c_R3)_R2
        t = t.mul_at(a, 0).mul_at(b, 1).mul_at(c, 2)
        col = out.mul.column(out.mul.domain.index(
            (triple.index(idx[:3]), triple.index(idx[3:]))))
        if t.vector() != col:
            raise InternalCheckError(
                f"iterated product disagrees with its formula at {idx}")
    return out


@dataclass(frozen=True)
class MaData:
    """Coalgebra-based input (H, A, B, G, R, T, τ) for a two-sided product.

    Shapes: G: [H,H] -> [A,H], R: [H,A] -> [A,H], T: [B,H] -> [H,B],
    tau: [H,H] -> [B].
    """

    H: Coalgebra
    A: FinAlgebra
    B: FinAlgebra
    G: TensorMap
    R: TensorMap
    T: TensorMap
    tau: TensorMap

    def __post_init__(self):
        nh, na, nb = self.H.dim, self.A.dim, self.B.dim
        fields = {self.H.field, self.A.field, self.B.field,
                  self.G.field, self.R.field, self.T.field, self.tau.field}
        if len(fields) != 1:
            raise FieldMismatch("coalgebra-based data across different fields")
        expect = (
            ("G", self.G, (nh, nh), (na, nh)),
            ("R", self.R, (nh, na), (na, nh)),
            ("T", self.T, (nb, nh), (nh, nb)),
            ("tau", self.tau, (nh, nh), (nb,)),
        )
        for name, m, dom, cod in expect:
            if m.domain.dims != dom or m.codomain.dims != cod:
                raise ShapeMismatch(
                    f"{name} must map {list(dom)} to {list(cod)}, got "
                    f"{list(m.domain.dims)} to {list(m.codomain.dims)}")


def ma_connector(d: MaData) -> TensorMap:
    """E(h⊗h') = (h_1)^G ⊗ (h'_1)_G ⊗ τ(h_2, h'_2), via the comultiplications."""
    f = d.H.field
    nh = d.H.dim
    idh = identity(f, shape(nh))
    mid_swap = tensor(idh, flip(f, nh, nh), idh)
    return compose(tensor(d.G, d.tau), mid_swap, tensor(d.H.comul, d.H.comul))


def ma_build(d: MaData) -> TwoSidedData:
    """Assemble two-sided data with R1 = R, R2 = T, R3 = flip and E from (G, τ).

    The assembled data must pass every two-sided condition; failures are
    raised as an :class:`AxiomFailure` carrying the full report.
    """
    f = d.H.field
    data = TwoSidedData(
        d.A,
        PointedSpace(f, d.H.dim, d.H.unit),
        d.B,
        d.R,
        d.T,
        flip(f, d.B.dim, d.A.dim),
        ma_connector(d),
    )
    rep = check_twosided(data)
    if not rep.all_pass:
        raise AxiomFailure(rep, "coalgebra-based data fails two-sided conditions")
    return data


# -- remark transports --------------------------------------------------------

def _require_flip(m: TensorMap, d1: int, d2: int, name: str):
    if m.rows != flip(m.field, d1, d2).rows:
        raise PreconditionFail(f"{name} is not the flip map")


def _transport_to_vac(alg: FinAlgebra, na: int, nv: int, nc: int) -> FinAlgebra:
    """Move the algebra on A (x) V (x) C along the permutation to V (x) A (x) C."""
    perm = permute_factors(alg.field, (na, nv, nc), (1, 0, 2))
    return conjugate_algebra(alg, perm.reshaped(shape(alg.dim), shape(alg.dim)))


def remark1_transport(d: TwoSidedData) -> tuple[MirrorData, Report]:
    """With R1 = flip, present the two-sided product as a mirror crossed product.

    Builds B' = A (x)_R3 C, P((a⊗c)⊗v) = v_R2 ⊗ (a ⊗ c_R2) and
    ν(v⊗v') = E_V(v,v') ⊗ (E_A(v,v') ⊗ E_C(v,v')), then asserts that
    V (x)~_{P,ν} B' equals the permuted two-sided product exactly.
    """
    f = d.field
    a, v, c = d.A, d.V, d.C
    _require_flip(d.R1, v.dim, a.dim, "R1")
    transported = _transport_to_vac(build_twosided(d), a.dim, v.dim, c.dim)
    bprime = build_ttp(a, c, d.R3)
    ida = identity(f, shape(a.dim))
    to_vac = permute_factors(f, (a.dim, v.dim, c.dim), (1, 0, 2))
    p_map = compose(to_vac, tensor(ida, d.R2)).reshaped(
        domain=shape(bprime.dim, v.dim), codomain=shape(v.dim, bprime.dim))
    nu_map = compose(to_vac, d.E).reshaped(codomain=shape(v.dim, bprime.dim))
    mir = MirrorData(v, bprime, p_map, nu_map)
    try:
        mirror_alg = build_mirror(mir)
    except AxiomFailure as exc:
        raise InternalCheckError(
            f"transported mirror data fails its own conditions: {exc}") from exc
    if not same_algebra(mirror_alg, transported):
        raise InternalCheckError("mirror presentation differs from the permuted product")
    out = merge(_prefixed("mirror", check_mirror(mir)),
                Report((ConditionResult("transport-equality", True),)))
    return mir, out


@dataclass(frozen=True)
class LRData:
    """Maps (J, T, γ, η) presenting a two-sided product on V (x) (A (x) C).

    J((a⊗c)⊗v) = v_R2 ⊗ (a ⊗ c_R2)
    T(v⊗(a⊗c)) = v_R1 ⊗ (a_R1 ⊗ c)
    γ(v⊗v') = v ⊗ v' ⊗ (1_A ⊗ 1_C)
    η(v⊗v') = E_V(v,v') ⊗ (1_A ⊗ E_C(v,v')) ⊗ (E_A(v,v') ⊗ 1_C)

    The A (x) C factor is grouped into a single tensor slot.
    """

    J: TensorMap
    T: TensorMap
    gamma: TensorMap
    eta: TensorMap


def remark2_lr(d: TwoSidedData) -> tuple[LRData, FinAlgebra, Report]:
    """With R3 = flip, present the two-sided product as an L-R-style product.

    The product on V (x) (A (x) C) is built from the displayed expansion
    ``(v⊗(a⊗c))•(v'⊗(a'⊗c')) = E_V(v_R1,v'_R2) ⊗ (a a'_R1 E_A(v_R1,v'_R2) ⊗
    E_C(v_R1,v'_R2) c_R2 c')`` and asserted equal to the permuted two-sided
    product.  The report also carries an informational witness showing this
    product is generally not a mirror crossed product: a basis tuple with
    (v⊗(a⊗c))•(1_V⊗(a'⊗c')) different from v ⊗ (a⊗c)(a'⊗c').
    """
    f = d.field
    a, v, c = d.A, d.V, d.C
    na, nv, nc = a.dim, v.dim, c.dim
    _require_flip(d.R3, nc, na, "R3")
    transported = _transport_to_vac(build_twosided(d), na, nv, nc)
    ac = ordinary_tensor(a, c)
    nac = ac.dim
    ida = identity(f, shape(na))
    idv = identity(f, shape(nv))
    idc = identity(f, shape(nc))
    to_vac = permute_factors(f, (na, nv, nc), (1, 0, 2))
    j_map = compose(to_vac, tensor(ida, d.R2)).reshaped(
        domain=shape(nac, nv), codomain=shape(nv, nac))
    t_map = compose(to_vac, tensor(d.R1, idc)).reshaped(
        domain=shape(nv, nac), codomain=shape(nv, nac))
    gamma = tensor(idv, idv, vector_map(f, ac.unit)).reshaped(
        domain=shape(nv, nv), codomain=shape(nv, nv, nac))
    to_vca = permute_factors(f, (na, nv, nc), (1, 2, 0))
    insert_units = tensor(idv, vector_map(f, a.unit), idc, ida, vector_map(f, c.unit))
    eta = compose(insert_units.reshaped(domain=shape(nv, nc, na)),
                  to_vca, d.E).reshaped(codomain=shape(nv, nac, nac))
    lr = LRData(j_map, t_map, gamma, eta)

    dims = (nv, na, nc, nv, na, nc)
    cols = []
    for idx in itertools.product(*(range(n) for n in dims)):
        t = _Ten.basis(f, dims, idx)
        t = t.permute((0, 4, 1, 2, 3, 5))      # v, a', a, c, v', c'
        t = t.map_at(d.R1, 0)                  # a'_R1, v_R1, a, c, v', c'
        t = t.map_at(d.R2, 3)                  # ..., v'_R2, c_R2, c'
        t = t.permute((2, 0, 1, 3, 4, 5))      # a, a'_R1, v_R1, v'_R2, c_R2, c'
        t = t.map_at(d.E, 2)                   # a, a'_R1, E_A, E_V, E_C, c_R2, c'
        t = t.mul_at(a, 0).mul_at(a, 0)
        t = t.mul_at(c, 2).mul_at(c, 2)        # E_C c_R2 c'
        t = t.permute((1, 0, 2))               # V, A, C
        cols.append(t.vector())
    n = nv * nac
    mul = from_columns(f, shape(n, n), shape(n), tuple(cols))
    lr_alg = new_algebra(f, n, mul, tensor_vec(f, v.unit, ac.unit))
    if not same_algebra(lr_alg, transported):
        raise InternalCheckError("L-R presentation differs from the permuted product")

    info = None
    for j, i, k, ip, kp in itertools.product(
            range(nv), range(na), range(nc), range(na), range(nc)):
        x = tensor_vec(f, basis_vector(f, nv, j),
                       basis_vector(f, na, i), basis_vector(f, nc, k))
        y = tensor_vec(f, v.unit, basis_vector(f, na, ip), basis_vector(f, nc, kp))
        left = lr_alg.mul_vec(x, y)
        right = tensor_vec(f, basis_vector(f, nv, j), ac.mul_vec(
            tensor_vec(f, basis_vector(f, na, i), basis_vector(f, nc, k)),
            tensor_vec(f, basis_vector(f, na, ip), basis_vector(f, nc, kp))))
        if left != right:
            info = Witness((j, i, k, ip, kp), left, right,
                           "(v⊗(a⊗c))•(1_V⊗(a'⊗c')) vs v⊗(a⊗c)(a'⊗c')")
            break
    report = Report((
        ConditionResult("transport-equality", True),
        ConditionResult("lr-differs-from-mirror", True, info, informational=True),
    ))
    return lr, lr_alg, report


# -- finite-field search ------------------------------------------------------

@dataclass(frozen=True)
class SearchSpec:
    """Parameters of a finite-field search for valid two-sided data.

    ``frozen`` maps a subset of {"R1", "R2", "R3", "E"} to fixed maps; the
    remaining maps are enumerated.  Unit conditions pin every matrix column
    whose input involves a distinguished basis vector, so only the remaining
    columns are free.  ``budget`` bounds randomized sampling; ``cap`` bounds
    the exhaustive space.
    """

    field: Field
    dims: tuple[int, int, int]
    mode: str = "exhaustive"
    budget: int = 256
    seed: int = 0
    frozen: dict = dc_field(default_factory=dict)
    cap: int = 1 << 16


def _unit_basis_index(field, unit, what):
    nonzero = [i for i, x in enumerate(unit) if not field.is_zero(x)]
    if len(nonzero) != 1 or unit[nonzero[0]] != field.one:
        raise PreconditionFail(
            f"search requires the unit of {what} to be a standard basis vector")
    return nonzero[0]


def _map_template(f, name, na, nv, nc, ua, uv, uc):
    """Pinned columns plus the list of free column inputs for one map."""
    if name == "R1":
        dom, cod = shape(nv, na), shape(na, nv)
        pin = {}
        for j, i in itertools.product(range(nv), range(na)):
            if j == uv:
                pin[(j, i)] = tensor_vec(f, basis_vector(f, na, i), basis_vector(f, nv, uv))
            elif i == ua:
                pin[(j, i)] = tensor_vec(f, basis_vector(f, na, ua), basis_vector(f, nv, j))
    elif name == "R2":
        dom, cod = shape(nc, nv), shape(nv, nc)
        pin = {}
        for k, j in itertools.product(range(nc), range(nv)):
            if k == uc:
                pin[(k, j)] = tensor_vec(f, basis_vector(f, nv, j), basis_vector(f, nc, uc))
            elif j == uv:
                pin[(k, j)] = tensor_vec(f, basis_vector(f, nv, uv), basis_vector(f, nc, k))
    elif name == "R3":
        dom, cod = shape(nc, na), shape(na, nc)
        pin = {}
        for k, i in itertools.product(range(nc), range(na)):
            if k == uc:
                pin[(k, i)] = tensor_vec(f, basis_vector(f, na, i), basis_vector(f, nc, uc))
            elif i == ua:
                pin[(k, i)] = tensor_vec(f, basis_vector(f, na, ua), basis_vector(f, nc, k))
    elif name == "E":
        dom, cod = shape(nv, nv), shape(na, nv, nc)
        pin = {}
        for j, jp in itertools.product(range(nv), repeat=2):
            if j == uv or jp == uv:
                other = jp if j == uv else j
                pin[(j, jp)] = tensor_vec(
                    f, basis_vector(f, na, ua), basis_vector(f, nv, other),
                    basis_vector(f, nc, uc))
    else:
        raise ValueError(name)
    free = [idx for idx in itertools.product(*(range(x) for x in dom.dims))
            if idx not in pin]
    return dom, cod, pin, free


def _decode(f, digits, templates):
    """Fill the free columns of every unfrozen map from base-p digits."""
    maps = {}
    pos = 0
    for name, (dom, cod, pin, free) in templates.items():
        offsets = {idx: pos + t * cod.total for t, idx in enumerate(free)}
        cols = []
        for idx in itertools.product(*(range(x) for x in dom.dims)):
            if idx in pin:
                cols.append(pin[idx])
            else:
                base = offsets[idx]
                cols.append(tuple(digits[base + r] for r in range(cod.total)))
        pos += len(free) * cod.total
        maps[name] = from_columns(f, dom, cod, tuple(cols))
    return maps


def search_fp(spec: SearchSpec, a: FinAlgebra, v: PointedSpace, c: FinAlgebra,
              workers: int = 1) -> list[TwoSidedData]:
    """Enumerate or sample candidate (R1, R2, R3, E) over F_p and keep the
    tuples passing every two-sided condition.

    Results are deduplicated by exact matrix equality and returned in a
    canonical order (sorted by their serialized matrices), so the output is
    byte-stable for a fixed spec and seed regardless of worker count.
    """
    f = spec.field
    if not isinstance(f, PrimeField):
        raise PreconditionFail("search requires a prime field")
    if {a.field, v.field, c.field} != {f}:
        raise FieldMismatch("search algebras over a different field")
    if spec.dims != (a.dim, v.dim, c.dim):
        raise ShapeMismatch(f"spec dims {spec.dims} do not match the algebras")
    if spec.mode not in ("exhaustive", "randomized"):
        raise PreconditionFail(f"unknown search mode {spec.mode!r}")
    na, nv, nc = spec.dims
    ua = _unit_basis_index(f, a.unit, "A")
    uv = _unit_basis_index(f, v.unit, "V")
    uc = _unit_basis_index(f, c.unit, "C")

    frozen = {}
    templates = {}
    for name in SEARCH_MAP_NAMES:
        if name in spec.frozen:
            frozen[name] = spec.frozen[name]
        else:
            templates[name] = _map_template(f, name, na, nv, nc, ua, uv, uc)
    slots = sum(len(free) * cod.total for (_, cod, _, free) in templates.values())
    space = f.p ** slots

    if spec.mode == "exhaustive":
        if space > spec.cap:
            raise SearchSpaceTooLarge(space, spec.cap)
        candidates = range(space)
    else:
        rng = random.Random(spec.seed)
        candidates = [rng.randrange(space) for _ in range(spec.budget)]

    def digits_of(n):
        out = [0] * slots
        for t in range(slots - 1, -1, -1):
            out[t] = n % f.p
            n //= f.p
        return out

    def evaluate(chunk):
        found = []
        for n in chunk:
            maps = dict(frozen)
            maps.update(_decode(f, digits_of(n), templates))
            data = TwoSidedData(a, v, c, maps["R1"], maps["R2"], maps["R3"], maps["E"])
            if check_twosided(data, cross_validate=False).all_pass:
                found.append(data)
        return found

    candidates = list(candidates)
    workers = max(1, int(workers))
    if workers == 1 or len(candidates) < 2:
        results = evaluate(candidates)
    else:
        step = (len(candidates) + workers - 1) // workers
        chunks = [candidates[t:t + step] for t in range(0, len(candidates), step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(evaluate, chunks))
        results = [d for part in parts for d in part]

    def key(data: TwoSidedData):
        return tuple(
            tuple(tuple(f.fmt(x) for x in row) for row in m.rows)
            for m in (data.R1, data.R2, data.R3, data.E))

    unique = {}
    for data in results:
        unique.setdefault(key(data), data)
    return [unique[k] for k in sorted(unique)]
