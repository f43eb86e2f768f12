import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import TRIVIAL_CENTER_TORI, aut, group, torus
from torsor.morphisms import OutGroup, compute_aut, identity_aut, inner, out_conjugacy_test
from torsor.torus import (Alpha, DirectOut, MappingTorus, NotCentralizing, NotReversing, TorusAut,
                          TorusElement, Zeta, alpha_twist, apply, build_alpha, build_zeta, classify,
                          compose_aut, enumerate_out_direct, identity_torus_aut, inner_equivalent,
                          inner_torus_auts, invert_aut, torsion_check, torus_inner, torus_inv,
                          torus_mul, torus_pow, verify, zeta_twist)
from torsor.groups import CapExceeded


def make(name):
    return MappingTorus(*torus(name))


@pytest.fixture(scope="module")
def Ms():
    return {name: make(name) for name in TRIVIAL_CENTER_TORI}


def oracle_mul(M, *elems):
    phi = M.phi.table
    phi_inv = M.phi.inverse().table
    tokens = [tok for x in elems for tok in oracles.element_tokens(x.h, x.k)]
    return TorusElement(*oracles.torus_normal_form(tokens, M.base.mul, phi, phi_inv))


def test_phi_order():
    assert make("D7_outer3").phi_order == 3
    assert make("D7_id").phi_order == 1
    assert make("A4_outer").phi_order == 2


def test_defining_relation(Ms):
    for M in Ms.values():
        t, tinv = TorusElement(0, 1), TorusElement(0, -1)
        for h in range(M.base.order):
            x = torus_mul(M, torus_mul(M, t, TorusElement(h, 0)), tinv)
            assert x == TorusElement(M.phi(h), 0)
            assert torus_mul(M, TorusElement(h, 0), TorusElement(M.base.inv(h), 0)) == TorusElement(0, 0)


def test_mul_matches_rewriting_oracle(Ms):
    M = Ms["D7_outer3"]
    for h in range(M.base.order):
        for h2 in range(M.base.order):
            x, y = TorusElement(h, 2), TorusElement(h2, -2)
            expected = oracle_mul(M, x, y)
            assert expected == TorusElement(M.base.mul(h, M.phi(M.phi(h2))), 0)
            assert torus_mul(M, x, y) == expected


elements = st.builds(TorusElement, st.integers(0, 13), st.integers(-7, 7))


@given(elements, elements, elements)
def test_mul_associative_and_matches_oracle(x, y, z):
    M = make("D7_outer3")
    assert torus_mul(M, torus_mul(M, x, y), z) == torus_mul(M, x, torus_mul(M, y, z))
    assert torus_mul(M, x, y) == oracle_mul(M, x, y)
    assert torus_mul(M, x, torus_inv(M, x)) == TorusElement(0, 0) == torus_mul(M, torus_inv(M, x), x)


@given(st.integers(0, 13), st.integers(-10**30, 10**30))
def test_big_exponents_are_exact(h, k):
    M = make("D7_outer3")
    x = TorusElement(h, k)
    y = torus_mul(M, x, torus_inv(M, x))
    assert y == TorusElement(0, 0)
    assert torus_mul(M, x, TorusElement(0, 1)).k == k + 1


@given(st.integers(0, 13), st.integers(-20, 20), st.integers(1, 12))
def test_torsion_iff_exponent_zero(h, k, n):
    M = make("D7_outer3")
    x = TorusElement(h, k)
    assert torsion_check(M, x) == (k == 0)
    assert torus_pow(M, x, n).k == n * k
    if k == 0:
        assert torus_pow(M, x, M.base.element_order(h)) == TorusElement(0, 0)


def test_torsion_examples():
    M = make("S3_id")
    assert torsion_check(M, TorusElement(3, 0))
    assert not torsion_check(M, TorusElement(0, 1))
    for h in range(6):
        assert not torsion_check(M, TorusElement(h, 3))


def exhaustive_alpha_twists(M, delta):
    H = M.base
    return [g for g in range(H.order)
            if all(delta(M.phi(h)) == H.mul(H.mul(g, M.phi(delta(h))), H.inv(g)) for h in range(H.order))]


def exhaustive_zeta_twists(M, delta):
    H = M.base
    pinv = M.phi.inverse()
    return [g for g in range(H.order)
            if all(delta(M.phi(h)) == H.mul(H.mul(H.inv(g), pinv(delta(h))), g) for h in range(H.order))]


def test_alpha_twist_examples(Ms):
    M = Ms["D7_outer3"]
    assert alpha_twist(M, identity_aut(M.base)) == 0
    assert alpha_twist(M, M.phi) == 0
    H = M.base
    for k in range(H.order):
        g = alpha_twist(M, inner(H, k))
        # substituting h -> k^-1 h k into the twist equation gives g = k^-1 phi(k)
        assert g == H.mul(H.inv(k), M.phi(k))
        assert exhaustive_alpha_twists(M, inner(H, k)) == [g]


def test_twists_are_unique(Ms):
    for M in Ms.values():
        for d in compute_aut(M.base):
            a, z = exhaustive_alpha_twists(M, d), exhaustive_zeta_twists(M, d)
            assert len(a) <= 1 and len(z) <= 1
            assert alpha_twist(M, d) == (a[0] if a else None)
            assert zeta_twist(M, d) == (z[0] if z else None)


def test_build_alpha(Ms):
    M = Ms["D5_outer"]
    a = build_alpha(M, identity_aut(M.base))
    assert a == identity_torus_aut(M)
    ap = build_alpha(M, M.phi)
    assert ap == torus_inner(M, 0, 1)
    for h in range(M.base.order):
        assert apply(M, ap, TorusElement(h, 0)) == TorusElement(M.phi(h), 0)
    assert apply(M, ap, TorusElement(0, 1)) == TorusElement(0, 1)


def test_build_alpha_s3_inner_phi():
    S3 = group("S3")
    tr, cyc = S3.element_id((1, 0, 2)), S3.element_id((1, 2, 0))
    M = MappingTorus(S3, inner(S3, tr))
    a = build_alpha(M, inner(S3, cyc))
    assert verify(M, a)
    for h in range(6):
        lhs = torus_mul(M, torus_mul(M, apply(M, a, M.t), TorusElement(a.delta(h), 0)),
                        torus_inv(M, apply(M, a, M.t)))
        assert lhs == TorusElement(a.delta(M.phi(h)), 0)


def test_build_zeta_rejects_non_reversing():
    with pytest.raises(NotReversing):
        build_zeta(make("D7_outer3"), identity_aut(group("D7")))


def test_not_centralizing_raised():
    # Out(C2xC2) ~ S3 is nonabelian; the twist equation makes sense without the center hypothesis
    K = group("C2xC2")
    auts = compute_aut(K)
    out = OutGroup(K, auts)
    O = out.group
    x = next(i for i in range(O.order) if O.element_order(i) == 2)
    y = next(i for i in range(O.order) if O.element_order(i) == 2 and O.mul(i, x) != O.mul(x, i))
    M = MappingTorus(K, out.rep(x))
    with pytest.raises(NotCentralizing):
        build_alpha(M, out.rep(y))


def test_zeta_examples(Ms):
    M = Ms["S3_id"]
    ident = identity_aut(M.base)
    assert zeta_twist(M, ident) == 0
    z = build_zeta(M, ident)
    assert apply(M, z, M.t) == TorusElement(0, -1)
    D = Ms["D7_outer3"]
    assert all(zeta_twist(D, d) is None for d in compute_aut(D.base))
    S3 = group("S3")
    Mi = MappingTorus(S3, inner(S3, S3.element_id((1, 2, 0))))
    assert any(zeta_twist(Mi, d) is not None for d in compute_aut(S3))


def test_apply_zeta_sends_t_to_g_inverse_t_inverse(Ms):
    for M in Ms.values():
        for d in compute_aut(M.base):
            g = zeta_twist(M, d)
            if g is not None:
                assert apply(M, build_zeta(M, d), M.t) == TorusElement(M.base.inv(g), -1)


def test_apply_identity(Ms):
    M = Ms["A4_outer"]
    e = identity_torus_aut(M)
    for h in range(12):
        for k in (-3, 0, 5):
            assert apply(M, e, TorusElement(h, k)) == TorusElement(h, k)


def all_verified(M):
    return DirectOut(M).automorphisms


@pytest.mark.parametrize("name", TRIVIAL_CENTER_TORI)
def test_compose_invert_and_eps(name, Ms):
    M = Ms[name]
    auts = all_verified(M)
    for a in auts[:12]:
        inv = invert_aut(M, a)
        assert compose_aut(M, a, inv) == identity_torus_aut(M) == compose_aut(M, inv, a)
        for b in auts[:12]:
            c = compose_aut(M, a, b)
            assert c.eps == a.eps * b.eps
            assert verify(M, c)
            for x in (TorusElement(1 % M.base.order, 0), M.t, TorusElement(0, -2)):
                assert apply(M, c, x) == apply(M, b, apply(M, a, x))


@pytest.mark.parametrize("name", TRIVIAL_CENTER_TORI)
def test_alpha_composition_is_exact(name, Ms):
    M = Ms[name]
    cent = [d for d in compute_aut(M.base) if alpha_twist(M, d) is not None]
    alpha = {d: build_alpha(M, d) for d in cent}
    for d in cent:
        for x in cent:
            assert compose_aut(M, alpha[d], alpha[x]) == alpha[d * x]
        assert invert_aut(M, alpha[d]) == alpha[d.inverse()]


@pytest.mark.parametrize("name", TRIVIAL_CENTER_TORI)
def test_zeta_square_identity(name, Ms):
    M = Ms[name]
    H = M.base
    for d in compute_aut(H):
        g = zeta_twist(M, d)
        if g is None:
            continue
        z = build_zeta(M, d)
        sq = compose_aut(M, z, z)
        assert isinstance(classify(M, sq), Alpha)
        # zeta^2 followed by conjugation h -> g h g^-1 is alpha of delta^2 then the same conjugation
        conj = torus_inner(M, g, 0)
        base = d * d * inner(H, g).inverse()
        assert compose_aut(M, sq, conj) == build_alpha(M, base)
        assert apply(M, build_alpha(M, base), M.t) == TorusElement(H.mul(g, d(H.inv(g))), 1)


def test_torus_inner(Ms):
    M = Ms["D7_outer3"]
    assert torus_inner(M, 0, 0) == identity_torus_aut(M)
    assert torus_inner(M, 0, 1) == build_alpha(M, M.phi)
    assert torus_inner(M, 0, M.phi_order) == identity_torus_aut(M)
    for k in range(M.base.order):
        a = torus_inner(M, k, 2)
        x = TorusElement(k, 2)
        for y in (TorusElement(3, 0), M.t, TorusElement(5, -1)):
            conj = torus_mul(M, torus_mul(M, x, y), torus_inv(M, x))
            assert apply(M, a, y) == conj


def test_inner_equivalent(Ms):
    M = Ms["D5_outer"]
    a = build_alpha(M, M.phi)
    e = identity_torus_aut(M)
    assert inner_equivalent(M, a, a)
    assert inner_equivalent(M, e, a)
    z = next(x for x in all_verified(M) if x.eps == -1)
    assert not inner_equivalent(M, e, z)
    for c in inner_torus_auts(M):
        assert c.eps == 1


def test_classify(Ms):
    M = Ms["S3_id"]
    d = compute_aut(M.base)[3]
    assert classify(M, build_alpha(M, d)) == Alpha(d)
    assert classify(M, build_zeta(M, d)) == Zeta(d)


@pytest.mark.parametrize("name", TRIVIAL_CENTER_TORI)
def test_existence_matches_out_level_conditions(name, Ms):
    M = Ms[name]
    H = M.base
    auts = compute_aut(H)
    out = OutGroup(H, auts)
    O = out.group
    p = out.index_of(M.phi)
    for d in auts:
        c = out.index_of(d)
        assert (alpha_twist(M, d) is not None) == (O.mul(c, p) == O.mul(p, c))
        assert (zeta_twist(M, d) is not None) == (O.mul(O.mul(O.inv(c), p), c) == O.inv(p))
    some_zeta = any(zeta_twist(M, d) is not None for d in auts)
    assert some_zeta == (out_conjugacy_test(O, p, O.inv(p)) is not None)


@pytest.mark.parametrize("name", TRIVIAL_CENTER_TORI)
def test_alpha_inner_iff_class_in_cyclic_phi(name, Ms):
    M = Ms[name]
    H = M.base
    auts = compute_aut(H)
    out = OutGroup(H, auts)
    from torsor.morphisms import cyclic_closure
    cyc = set(cyclic_closure(out.group, out.index_of(M.phi)))
    inn = set(inner_torus_auts(M))
    for d in auts:
        if alpha_twist(M, d) is not None:
            assert (build_alpha(M, d) in inn) == (out.index_of(d) in cyc)


@pytest.mark.parametrize("name, out0, out, index", [
    ("S3_id", 1, 2, 2), ("D7_id", 3, 6, 2), ("D7_outer3", 1, 1, 1),
])
def test_enumerate_out_direct(name, out0, out, index):
    O, O0, idx = enumerate_out_direct(make(name))
    assert (O0.order, O.order, idx) == (out0, out, index)
    O.validate()


def test_direct_classes_agree_with_inner_equivalent(Ms):
    M = Ms["S3_aut3"]
    d = DirectOut(M)
    auts = d.automorphisms
    for a in auts:
        for b in auts:
            assert (d.class_index(a) == d.class_index(b)) == inner_equivalent(M, a, b)


@pytest.mark.parametrize("name", TRIVIAL_CENTER_TORI)
def test_verified_auts_preserve_base(name, Ms):
    M = Ms[name]
    for a in DirectOut(M).automorphisms:
        images = [apply(M, a, TorusElement(h, 0)) for h in range(M.base.order)]
        assert all(x.k == 0 for x in images)
        assert sorted(x.h for x in images) == list(range(M.base.order))


def test_verify_rejects_bad_maps(Ms):
    M = Ms["D7_outer3"]
    d = compute_aut(M.base)[1]
    assert not verify(M, TorusAut(identity_aut(M.base), 0, 2))
    bad = [TorusAut(d, g, 1) for g in range(14) if not verify(M, TorusAut(d, g, 1))]
    assert len(bad) >= 13


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        DirectOut(make("A5_id"), cap=1000)
