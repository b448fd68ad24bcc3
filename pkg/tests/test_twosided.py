"""The two-sided crossed product: checks, builder, presentations, converse,
universal property."""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import (
    Q,
    corpus,
    dual_numbers,
    group_algebra_z2,
    twosided_flip_trivial,
)
from xprod import (
    CONDITION_LABELS,
    TwoSidedData,
    build_ttp,
    build_twosided,
    check_twosided,
    conjugate_algebra,
    derive_maps,
    extract,
    flip,
    identity,
    is_algebra_map,
    permute_factors,
    presentations_agree,
    universal_map,
)
from xprod.constructions import product_connector
from xprod.errors import (
    AxiomFailure,
    NotAlgebraMap,
    PremiseFail,
    SplitFail,
    UnitMismatch,
)
from xprod.exactla import (
    TensorMap,
    basis_vector,
    from_columns,
    shape,
    tensor_vec,
    vscale,
)

CORPUS = dict(corpus())


def legs(field, dims, vec):
    shp = shape(*dims)
    return [(shp.multi(t), x) for t, x in enumerate(vec) if not field.is_zero(x)]


def test_all_condition_labels_present_in_order():
    rep = check_twosided(CORPUS["q-dual-flip-trivial"])
    assert tuple(e.name for e in rep.entries) == CONDITION_LABELS


def test_flips_with_commutative_v_product_all_pass():
    g = group_algebra_z2(Q)
    data = twosided_flip_trivial(g, g, g)
    assert check_twosided(data).all_pass


def test_graded_fixture_all_pass():
    assert check_twosided(CORPUS["q-dual-graded-super"]).all_pass


def oracle_equiv6_sides(d, j, jp, jpp):
    """Independent leg-by-leg evaluation of both sides of equiv6."""
    f = d.field
    na, nv, nc = d.A.dim, d.V.dim, d.C.dim
    out_dims = (na, nv, nc)

    def e_legs(x, y):
        return legs(f, out_dims, d.E.apply(tensor_vec(
            f, basis_vector(f, nv, x), basis_vector(f, nv, y))))

    def e_legs_vec(xvec, y):
        return legs(f, out_dims, d.E.apply(tensor_vec(f, xvec, basis_vector(f, nv, y))))

    lhs = {}
    for (a1, b1, g1), c1 in e_legs(jp, jpp):
        r1out = d.R1.apply(tensor_vec(f, basis_vector(f, nv, j),
                                      basis_vector(f, na, a1)))
        for (a2, v2), c2 in legs(f, (na, nv), r1out):
            inner = d.E.apply(tensor_vec(f, basis_vector(f, nv, v2),
                                         basis_vector(f, nv, b1)))
            for (a3, b3, g3), c3 in legs(f, out_dims, inner):
                amul = d.A.mul_vec(basis_vector(f, na, a2), basis_vector(f, na, a3))
                cmul = d.C.mul_vec(basis_vector(f, nc, g3), basis_vector(f, nc, g1))
                coef = f.mul(f.mul(c1, c2), c3)
                for (ka,), xa in legs(f, (na,), amul):
                    for (kc,), xc in legs(f, (nc,), cmul):
                        key = (ka, b3, kc)
                        lhs[key] = f.add(lhs.get(key, f.zero),
                                         f.mul(coef, f.mul(xa, xc)))
    rhs = {}
    for (a1, b1, g1), c1 in e_legs(j, jp):
        r2out = d.R2.apply(tensor_vec(f, basis_vector(f, nc, g1),
                                      basis_vector(f, nv, jpp)))
        for (v2, c2i), c2 in legs(f, (nv, nc), r2out):
            inner = d.E.apply(tensor_vec(f, basis_vector(f, nv, b1),
                                         basis_vector(f, nv, v2)))
            for (a3, b3, g3), c3 in legs(f, out_dims, inner):
                amul = d.A.mul_vec(basis_vector(f, na, a1), basis_vector(f, na, a3))
                cmul = d.C.mul_vec(basis_vector(f, nc, g3), basis_vector(f, nc, c2i))
                coef = f.mul(f.mul(c1, c2), c3)
                for (ka,), xa in legs(f, (na,), amul):
                    for (kc,), xc in legs(f, (nc,), cmul):
                        key = (ka, b3, kc)
                        rhs[key] = f.add(rhs.get(key, f.zero),
                                         f.mul(coef, f.mul(xa, xc)))

    def dense(dic):
        shp = shape(*out_dims)
        out = [f.zero] * shp.total
        for key, val in dic.items():
            if not f.is_zero(val):
                out[shp.index(key)] = val
        return tuple(out)

    return dense(lhs), dense(rhs)


def test_perturbed_e_fails_equiv6_with_reproducible_witness():
    base = CORPUS["q-dual-graded-super"]
    cols = [base.E.column(t) for t in range(4)]
    # E(x (x) x) = x (x) 1_V (x) 1_C
    cols[3] = tensor_vec(Q, basis_vector(Q, 2, 1), basis_vector(Q, 2, 0),
                         basis_vector(Q, 2, 0))
    bad = TwoSidedData(base.A, base.V, base.C, base.R1, base.R2, base.R3,
                       from_columns(Q, shape(2, 2), shape(2, 2, 2), cols))
    rep = check_twosided(bad)
    entry = rep.get("equiv6")
    assert not entry.passed
    assert entry.witness.indices == (1, 1, 1)
    lhs, rhs = oracle_equiv6_sides(bad, 1, 1, 1)
    assert lhs != rhs
    assert entry.witness.left == lhs
    assert entry.witness.right == rhs


def test_derive_maps_flip_case():
    d = CORPUS["q-dual-flip-trivial"]
    derived = derive_maps(d)
    # R is the plain factor rotation (v (x) c (x) a -> a (x) v (x) c)
    assert derived.R.rows == permute_factors(Q, (2, 2, 2), (2, 0, 1)).rows
    assert derived.P.rows == permute_factors(Q, (2, 2, 2), (1, 2, 0)).rows
    # sigma and nu collapse to the componentwise products
    f = Q
    dd = dual_numbers(Q)
    for j, k, jp, kp in product(range(2), repeat=4):
        got = derived.sigma.apply(tensor_vec(
            f, basis_vector(f, 2, j), basis_vector(f, 2, k),
            basis_vector(f, 2, jp), basis_vector(f, 2, kp)))
        vv = dd.mul_vec(basis_vector(f, 2, j), basis_vector(f, 2, jp))
        cc = dd.mul_vec(basis_vector(f, 2, k), basis_vector(f, 2, kp))
        assert got == tensor_vec(f, d.A.unit, vv, cc)
    for i, j, ip, jp in product(range(2), repeat=4):
        got = derived.nu.apply(tensor_vec(
            f, basis_vector(f, 2, i), basis_vector(f, 2, j),
            basis_vector(f, 2, ip), basis_vector(f, 2, jp)))
        aa = dd.mul_vec(basis_vector(f, 2, i), basis_vector(f, 2, ip))
        vv = dd.mul_vec(basis_vector(f, 2, j), basis_vector(f, 2, jp))
        assert got == tensor_vec(f, aa, vv, d.C.unit)


def test_derive_maps_graded_sign():
    d = CORPUS["q-dual-graded-super"]
    derived = derive_maps(d)
    x = basis_vector(Q, 2, 1)
    one_c = basis_vector(Q, 2, 0)
    got = derived.R.apply(tensor_vec(Q, x, one_c, x))
    want = vscale(Q, Q.neg(Q.one), tensor_vec(Q, x, x, one_c))
    assert got == want


def test_derive_maps_unit_slot_is_identity_like():
    d = CORPUS["q-dual-graded-super"]
    derived = derive_maps(d)
    f = Q
    for j, k in product(range(2), repeat=2):
        got = derived.R.apply(tensor_vec(
            f, basis_vector(f, 2, j), basis_vector(f, 2, k), d.A.unit))
        assert got == tensor_vec(f, d.A.unit, basis_vector(f, 2, j),
                                 basis_vector(f, 2, k))


def test_build_graded_signs():
    m = build_twosided(CORPUS["q-dual-graded-super"])
    f = Q
    x = basis_vector(f, 2, 1)
    one = basis_vector(f, 2, 0)
    x11 = tensor_vec(f, x, one, one)
    ox1 = tensor_vec(f, one, x, one)
    xx1 = tensor_vec(f, x, x, one)
    assert m.mul_vec(x11, ox1) == xx1
    assert m.mul_vec(ox1, x11) == vscale(f, f.neg(f.one), xx1)


def test_scalar_end_collapse_gives_e_product_on_v():
    d = CORPUS["q-scalar-ends"]
    m = build_twosided(d)
    assert m.dim == 2
    # the product on V is exactly the middle component of E
    f = Q
    for j, jp in product(range(2), repeat=2):
        got = m.mul_vec(basis_vector(f, 2, j), basis_vector(f, 2, jp))
        want = d.E.apply(tensor_vec(f, basis_vector(f, 2, j), basis_vector(f, 2, jp)))
        assert got == want


def test_flip_fixture_builds_ordinary_triple_tensor():
    from xprod import ordinary_tensor
    d = CORPUS["q-dual-flip-trivial"]
    m = build_twosided(d)
    valg = dual_numbers(Q)
    want = ordinary_tensor(ordinary_tensor(d.A, valg), d.C)
    assert m.mul.rows == want.mul.rows and m.unit == want.unit


def test_embeddings_into_built_product_are_algebra_maps():
    d = CORPUS["q-dual-graded-super"]
    m = build_twosided(d)
    f = Q
    emb_a = from_columns(f, shape(2), shape(8), tuple(
        tensor_vec(f, basis_vector(f, 2, i), d.V.unit, d.C.unit) for i in range(2)))
    emb_c = from_columns(f, shape(2), shape(8), tuple(
        tensor_vec(f, d.A.unit, d.V.unit, basis_vector(f, 2, k)) for k in range(2)))
    assert is_algebra_map(emb_a, d.A, m).all_pass
    assert is_algebra_map(emb_c, d.C, m).all_pass


def test_presentations_agree_on_fixtures():
    for name in ("q-dual-flip-trivial", "q-dual-graded-super", "q-ut2-pointed-line"):
        rep = presentations_agree(CORPUS[name])
        assert rep.all_pass, name


def test_dim1_v_degenerates_to_ttp():
    d = CORPUS["q-ut2-pointed-line"]
    m = build_twosided(d)
    t = build_ttp(d.A, d.C, d.R3)
    assert m.mul.rows == t.mul.rows and m.unit == t.unit


def test_unit_laws_direct():
    for name in ("q-dual-graded-super", "f2-searched-0"):
        d = CORPUS[name]
        m = build_twosided(d)
        f = d.field
        unit = tensor_vec(f, d.A.unit, d.V.unit, d.C.unit)
        assert m.unit == unit
        for t in range(m.dim):
            e = basis_vector(f, m.dim, t)
            assert m.mul_vec(unit, e) == e
            assert m.mul_vec(e, unit) == e


def test_build_requires_all_pass():
    base = CORPUS["q-dual-graded-super"]
    cols = [base.E.column(t) for t in range(4)]
    cols[3] = tensor_vec(Q, basis_vector(Q, 2, 1), basis_vector(Q, 2, 0),
                         basis_vector(Q, 2, 0))
    bad = TwoSidedData(base.A, base.V, base.C, base.R1, base.R2, base.R3,
                       from_columns(Q, shape(2, 2), shape(2, 2, 2), cols))
    with pytest.raises(AxiomFailure) as exc:
        build_twosided(bad)
    assert "equiv6" in exc.value.report.failed_names()


# -- converse ------------------------------------------------------------------

def test_extract_round_trip_graded():
    d = CORPUS["q-dual-graded-super"]
    got = extract(build_twosided(d), d.A, d.V, d.C)
    for label in ("R1", "R2", "R3", "E"):
        assert getattr(got, label).rows == getattr(d, label).rows


def test_extract_ordinary_triple_gives_flips_and_trivial_e():
    dq = dual_numbers(Q)
    gq = group_algebra_z2(Q)
    d = twosided_flip_trivial(dq, gq, dq)
    got = extract(build_twosided(d), d.A, d.V, d.C)
    assert got.R1.rows == flip(Q, 2, 2).rows
    assert got.R2.rows == flip(Q, 2, 2).rows
    assert got.R3.rows == flip(Q, 2, 2).rows
    assert got.E.rows == product_connector(dq, gq, dq).rows


def corrupted_algebra():
    """Transport the graded fixture along a unipotent map mixing C into V."""
    d = CORPUS["q-dual-graded-super"]
    m = build_twosided(d)
    rows = [list(r) for r in identity(Q, shape(8)).rows]
    rows[1][6] = Q.one  # e_(1,1,0) also feeds e_(0,0,1)
    g = TensorMap(Q, shape(8), shape(8), tuple(tuple(r) for r in rows))
    return d, conjugate_algebra(m, g)


def test_extract_split_fail_with_valid_witness():
    d, bad = corrupted_algebra()
    with pytest.raises(SplitFail) as exc:
        extract(bad, d.A, d.V, d.C)
    assert exc.value.which == "ajut1"
    w = exc.value.witness
    assert w.indices == (1, 1)
    # re-evaluate: the product (1 (x) x (x) 1) (x (x) 1 (x) 1) in the corrupted
    # algebra must reproduce the witness vector and escape A (x) V (x) span(1_C)
    f = Q
    x = basis_vector(f, 2, 1)
    one = basis_vector(f, 2, 0)
    got = bad.mul_vec(tensor_vec(f, one, x, one), tensor_vec(f, x, one, one))
    assert got == w.left
    assert got != w.right
    assert not f.is_zero(got[shape(2, 2, 2).index((0, 0, 1))])


def test_extract_non_basis_unit_over_f2():
    from fixtures import F2, twosided_flip_trivial, upper_triangular2
    from xprod import scalar_algebra
    u = upper_triangular2(F2)  # unit (1, 0, 1): the projector must complete it
    d = twosided_flip_trivial(u, scalar_algebra(F2), u)
    got = extract(build_twosided(d), d.A, d.V, d.C)
    for label in ("R1", "R2", "R3", "E"):
        assert getattr(got, label).rows == getattr(d, label).rows


def test_extract_bicocycle_round_trip():
    # E has nonunit components in both outer slots
    d = CORPUS["q-bicocycle"]
    got = extract(build_twosided(d), d.A, d.V, d.C)
    assert got.E.rows == d.E.rows


def test_extract_unit_mismatch():
    d = CORPUS["q-dual-graded-super"]
    m = build_twosided(d)
    from xprod.algebra import PointedSpace
    wrong_v = PointedSpace(Q, 2, basis_vector(Q, 2, 1))
    with pytest.raises(UnitMismatch):
        extract(m, d.A, wrong_v, d.C)


def test_extract_wrong_component_algebra_is_not_algebra_map():
    d = CORPUS["q-dual-graded-super"]
    m = build_twosided(d)
    wrong_a = group_algebra_z2(Q)
    with pytest.raises(NotAlgebraMap) as exc:
        extract(m, wrong_a, d.V, d.C)
    assert "a ↦" in exc.value.which


# -- universal property ----------------------------------------------------------

def canonical_embeddings(d):
    f = d.field
    na, nv, nc = d.A.dim, d.V.dim, d.C.dim
    n = na * nv * nc
    fa = from_columns(f, shape(na), shape(n), tuple(
        tensor_vec(f, basis_vector(f, na, i), d.V.unit, d.C.unit) for i in range(na)))
    fv = from_columns(f, shape(nv), shape(n), tuple(
        tensor_vec(f, d.A.unit, basis_vector(f, nv, j), d.C.unit) for j in range(nv)))
    fc = from_columns(f, shape(nc), shape(n), tuple(
        tensor_vec(f, d.A.unit, d.V.unit, basis_vector(f, nc, k)) for k in range(nc)))
    return fa, fv, fc


def test_universal_canonical_embeddings_give_identity():
    d = CORPUS["q-dual-graded-super"]
    x = build_twosided(d)
    fa, fv, fc = canonical_embeddings(d)
    f = universal_map(d, x, fa, fv, fc)
    assert f.rows == identity(Q, shape(x.dim)).rows


def test_universal_scalar_ends_driven_by_fv():
    d = CORPUS["q-scalar-ends"]
    f = Q
    dq = dual_numbers(Q)
    x = dq
    unit_emb = from_columns(f, shape(1), shape(2), (dq.unit,))
    fv_good = identity(f, shape(2))
    result = universal_map(d, x, unit_emb, fv_good, unit_emb)
    assert result.rows == identity(f, shape(2)).rows
    # fV not multiplicative for the E-product: fV(x) = 1_A
    fv_bad = from_columns(f, shape(2), shape(2), (dq.unit, dq.unit))
    with pytest.raises(PremiseFail) as exc:
        universal_map(d, x, unit_emb, fv_bad, unit_emb)
    assert exc.value.which == "premise-2"


def test_universal_premise1_violation_with_reproducible_witness():
    d = CORPUS["q-ut2-pointed-line"]
    u = d.A
    idu = identity(Q, shape(3))
    fv = from_columns(Q, shape(1), shape(3), (u.unit,))
    with pytest.raises(PremiseFail) as exc:
        universal_map(d, u, idu, fv, idu)
    assert exc.value.which == "premise-1"
    w = exc.value.witness
    k, j, i = w.indices
    # re-evaluate both sides: with flips, premise 1 reads f_C(c) f_A(a) = f_A(a) f_C(c)
    ec = basis_vector(Q, 3, k)
    ea = basis_vector(Q, 3, i)
    assert u.mul_vec(ec, ea) == w.left
    assert u.mul_vec(ea, ec) == w.right
    assert w.left != w.right


@given(st.sampled_from(["R1", "R2", "R3", "E"]), st.data())
@settings(max_examples=30, deadline=None)
def test_random_single_entry_mutation_sound_or_witnessed(map_name, data):
    """Soundness and failure isolation under random single-entry edits.

    Any single-entry change over F2 either leaves all twelve conditions
    passing, in which case the build must succeed and be associative, or some
    condition fails and every failing entry carries a witness whose two sides
    genuinely differ.
    """
    base = CORPUS["f2-dual-flip-trivial"]
    parts = {"R1": base.R1, "R2": base.R2, "R3": base.R3, "E": base.E}
    m = parts[map_name]
    row = data.draw(st.integers(0, len(m.rows) - 1))
    col = data.draw(st.integers(0, m.domain.total - 1))
    rows = [list(r) for r in m.rows]
    rows[row][col] = m.field.add(rows[row][col], m.field.one)
    parts[map_name] = TensorMap(m.field, m.domain, m.codomain,
                                tuple(tuple(r) for r in rows))
    mutant = TwoSidedData(base.A, base.V, base.C, parts["R1"], parts["R2"],
                          parts["R3"], parts["E"])
    rep = check_twosided(mutant)
    if rep.all_pass:
        built = build_twosided(mutant)
        from xprod.algebra import associativity_witness
        assert associativity_witness(built) is None
    else:
        for entry in rep.entries:
            if not entry.passed:
                assert entry.witness is not None
                assert entry.witness.left != entry.witness.right


def test_universal_result_is_algebra_map():
    d = CORPUS["q-dual-flip-trivial"]
    x = build_twosided(d)
    fa, fv, fc = canonical_embeddings(d)
    f = universal_map(d, x, fa, fv, fc)
    assert is_algebra_map(f, build_twosided(d), x).all_pass
