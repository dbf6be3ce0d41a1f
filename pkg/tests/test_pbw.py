import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import commutative_product, ore_power_times_coeff, qplane_product, sigma_word_value
from skewpbw.catalog import instantiate
from skewpbw.errors import CapExceeded, PresentationError
from skewpbw.finring import Ideal, builtin_ring, ideal_generated
from skewpbw.pbw import (
    DEGLEX,
    LEX,
    MonomialOrder,
    PBWPresentation,
    box_size,
    check_presentation,
    extend_maps,
    iter_box,
    monomials_up_to,
    quotient_extension,
    rewrite_word,
    tower_presentation,
    word_of_term,
)


def poly_strategy(P, max_terms=3, max_deg=3):
    monos = monomials_up_to(P.n, max_deg)
    coeffs = list(P.ring.elements)
    return st.dictionaries(st.sampled_from(monos), st.sampled_from(coeffs), max_size=max_terms).map(P.poly)


# -- orders -----------------------------------------------------------------


def test_deglex_and_lex():
    assert DEGLEX.greater((0, 2), (1, 0))
    assert DEGLEX.greater((1, 1), (0, 2))
    assert LEX.greater((1, 0), (0, 2))
    assert sorted(monomials_up_to(2, 1)) == [(0, 0), (0, 1), (1, 0)]
    assert len(monomials_up_to(3, 2)) == 10
    with pytest.raises(ValueError):
        MonomialOrder("revlex")


def test_leading_data(qplane):
    f = qplane.parse("[2]*x + y^2 + [3]")
    L = qplane.leading(f)
    assert L.lm == (0, 2) and L.lc == 1 and L.deg == 2
    lex = qplane.with_order("lex")
    Lx = lex.leading(lex.parse("[2]*x + y^2 + [3]"))
    assert Lx.lm == (1, 0)
    Z = qplane.leading(qplane.zero())
    assert Z.is_zero and Z.lm is None and Z.deg is None and Z.lc == qplane.ring.zero


# -- spec examples ------------------------------------------------------------


def test_quantum_plane_yx(qplane):
    assert qplane.format(qplane.parse("y*x")) == "[3]*x*y"
    assert qplane.flags.quasi_commutative and qplane.flags.c_central


def test_jordan_relation(jordan):
    R = jordan.ring
    t = R.element("t")
    f = jordan.var_times_coeff(1, t)
    assert f == jordan.poly({(1,): t, (0,): R.element("t^2")})
    assert jordan.format(f) == "[t]*y + [t^2]"
    assert not jordan.flags.endomorphism_type


def test_threedim_e_i(e_i):
    assert e_i.format(e_i.parse("z*y")) == "y*z + x"


def test_constant_square(const_z4):
    f = const_z4.parse("[2]*x + [2]")
    assert (f * f).is_zero


# -- oracles ----------------------------------------------------------------------


@pytest.mark.parametrize("name", ["jordan_trunc", "swap_ore"])
def test_ore_closed_form(name):
    P = instantiate(name)
    for k in range(0, 5):
        for r in P.ring.elements:
            got = P.mono_times_coeff((k,), r)
            expect = ore_power_times_coeff(P, k, r)
            full = dict(got.tail.terms)
            if got.leading_coeff != P.ring.zero:
                full[(k,)] = got.leading_coeff
            assert {m[0]: c for m, c in full.items()} == expect


@given(st.data())
def test_qplane_formula(data):
    P = instantiate("quantum_plane")
    f = data.draw(poly_strategy(P))
    g = data.draw(poly_strategy(P))
    assert (f * g).terms == qplane_product(P.ring, 3, f.terms, g.terms)


@given(st.data())
def test_constant_is_commutative_polynomial_ring(data):
    P = instantiate("constant_poly", {"ring": "z8", "vars": "x,y"})
    f = data.draw(poly_strategy(P))
    g = data.draw(poly_strategy(P))
    assert (f * g).terms == commutative_product(P.ring, f.terms, g.terms)


@pytest.mark.parametrize("name", ["jordan_trunc", "threedim_e_i", "threedim_b_i", "derivation_control", "ut2_constant"])
@pytest.mark.parametrize("strategy", ["leftmost", "rightmost"])
def test_engine_agrees_with_rewriting(name, strategy):
    P = instantiate(name)
    R = P.ring
    coeffs = [R.one] + [r for r in R.elements if r not in (R.zero, R.one)][:2]
    letters = [("x", i) for i in range(1, P.n + 1)] + [("c", r) for r in coeffs]
    for length in range(1, 4):
        for w in itertools.product(letters, repeat=length):
            assert P.normal_form(w) == rewrite_word(P, w, strategy), w


@pytest.mark.parametrize("name", ["jordan_trunc", "swap_ore", "threedim_e_i", "threedim_c_i"])
def test_associativity_on_monomial_triples(name):
    P = instantiate(name)
    monos = [P.monomial(m) for m in monomials_up_to(P.n, 2)]
    consts = [P.const(r) for r in P.ring.elements if r != P.ring.zero][:3]
    pool = monos + consts
    for a, b, c in itertools.product(pool, repeat=3):
        assert (a * b) * c == a * (b * c)


@given(st.data())
def test_distributivity(data):
    P = instantiate("jordan_trunc")
    f, g, h = (data.draw(poly_strategy(P)) for _ in range(3))
    assert f * (g + h) == f * g + f * h
    assert (g + h) * f == g * f + h * f
    assert f - f == P.zero()


def test_degree_bound(jordan, qplane):
    for P in (jordan, qplane):
        for a in monomials_up_to(P.n, 3):
            for b in monomials_up_to(P.n, 3):
                f = P.mono_times_mono(a, b)
                total = sum(a) + sum(b)
                assert all(sum(m) < total for m in f.tail.terms)


def test_mono_times_coeff_leading_is_sigma_word(jordan, swap):
    for P in (jordan, swap):
        for k in range(4):
            for r in P.ring.elements:
                d = P.mono_times_coeff((k,), r)
                assert d.leading_coeff == sigma_word_value(P.system, (k,), r)
                assert all(sum(m) < k for m in d.tail.terms)


def test_power_and_product(const_z4):
    x = const_z4.var(1)
    assert x ** 3 == const_z4.monomial((3,))
    assert const_z4.product(x, x, x) == x ** 3
    assert x ** 0 == const_z4.one()


def test_wrong_algebra_is_rejected(jordan, qplane):
    with pytest.raises(Exception):
        jordan.var(1) * qplane.var(1)


# -- diamond check -----------------------------------------------------------------


def test_catalog_passes_diamond_check():
    from skewpbw.catalog import list_entries

    for e in list_entries():
        assert check_presentation(instantiate(e.name)).ok, e.name


def test_noninvertible_c():
    z4 = builtin_ring("z4")
    res = check_presentation(PBWPresentation(z4, ("x", "y"), c={(1, 2): 2}))
    assert (res.axiom, res.witness) == ("c_invertible", (1, 2))


def test_o1_failure():
    z5 = builtin_ring("z5")
    P = PBWPresentation(z5, ("x", "y", "z"), c={(1, 3): 2}, tails={(1, 2): (0, 0, 0, 1)})
    res = check_presentation(P)
    assert (res.axiom, res.witness) == ("O1", (1, 2, 3))
    assert "z^2" in res.message


def test_o2_failure_noncentral_c():
    u = builtin_ring("ut2z2")
    P = PBWPresentation(u, ("x", "y"), c={(1, 2): u.element("[[1,1],[0,1]]")})
    res = check_presentation(P)
    assert (res.axiom, res.witness) == ("O2", (1, 2, u.element("[[1,0],[0,0]]")))
    assert not P.flags.c_central


def test_malformed_presentations():
    z4 = builtin_ring("z4")
    with pytest.raises(PresentationError):
        PBWPresentation(z4, ("x", "x"))
    with pytest.raises(PresentationError):
        PBWPresentation(z4, ("x", "y"), c={(2, 1): 1})
    with pytest.raises(PresentationError):
        PBWPresentation(z4, ("x", "y"), tails={(1, 2): (0, 1)})


# -- extended maps, quotients, tower ---------------------------------------------


def test_extend_maps(jordan):
    maps = extend_maps(jordan)
    assert maps.ok
    R = jordan.ring
    f = jordan.poly({(2,): R.element("t")})
    assert maps.delta_bar(1, f) == jordan.poly({(2,): R.element("t^2")})


def test_derivation_control_blocks_extension():
    P = instantiate("derivation_control")
    assert check_presentation(P).ok
    maps = extend_maps(P)
    failed = [h for h in maps.hypotheses if not h.holds]
    assert [h.name for h in failed] == ["delta_kills_c"]
    assert failed[0].witness == (1, 1, 2)
    with pytest.raises(PresentationError):
        maps.sigma_bar(1, P.one())
    with pytest.raises(PresentationError):
        tower_presentation(P)


def test_quotient_extension_z8():
    P = instantiate("constant_poly", {"ring": "z8"})
    R = P.ring
    qe = quotient_extension(P, ideal_generated(R, [4]))
    assert qe.presentation.ring.order == 4
    assert qe.intersection == frozenset({0, 4})
    f = P.parse("[6]*x + [5]")
    g = P.parse("[3]*x^2 + [4]")
    assert qe.project(f * g) == qe.project(f) * qe.project(g)


def test_quotient_extension_jordan(jordan):
    R = jordan.ring
    qe = quotient_extension(jordan, ideal_generated(R, [R.element("t^3")]))
    assert sorted(R.label(a) for a in qe.intersection) == ["0", "t^3"]
    Q = qe.presentation
    assert check_presentation(Q).ok
    for f in itertools.islice(iter_box(jordan, 1, 2), 40):
        for g in itertools.islice(iter_box(jordan, 1, 2), 0, 40, 3):
            assert qe.project(f * g) == qe.project(f) * qe.project(g)


def test_quotient_extension_rejects_bad_ideals(swap, jordan):
    R = swap.ring
    with pytest.raises(PresentationError):
        quotient_extension(swap, ideal_generated(R, [R.element("(1,0)")]))
    with pytest.raises(PresentationError):
        quotient_extension(jordan, Ideal(jordan.ring, frozenset(jordan.ring.elements)))


def test_tower(qplane):
    T = tower_presentation(qplane)
    assert T.var_names == ("x'", "y'")
    a = T.lift(qplane.var(1))
    xp = T.var(1)
    # sigma is the identity, so x' commutes with every lifted coefficient
    assert xp * a == a * xp
    yp = T.var(2)
    assert yp * xp == T.poly({(1, 1): qplane.const(3)})


def test_tower_cap():
    P = instantiate("constant_poly")
    T = tower_presentation(P, max_degree=2)
    big = T.lift(P.var(1) ** 2)
    with pytest.raises(CapExceeded):
        big * big


def test_box():
    P = instantiate("constant_poly")
    box = list(iter_box(P, 2, 2))
    assert len(box) == box_size(P, 2, 2) == len(set(box))
    assert box[0].is_zero


def test_word_of_term():
    assert word_of_term((1, 2), 3) == [("c", 3), ("x", 1), ("x", 2), ("x", 2)]
