import json

import pytest

from oracles import brute_nilpotent
from skewpbw.catalog import instantiate
from skewpbw.errors import BudgetError, SkewPBWError
from skewpbw.finring import builtin_ring, ideal_generated
from skewpbw.niltheory import (
    EXIT_CODES,
    HYPOTHESIS_FAILED,
    INCONCLUSIVE,
    REFUTED,
    SCHEMA_VERSION,
    THEOREMS,
    VERIFIED,
    Budget,
    Counterexample,
    NilOracle,
    VerificationReport,
    _finish,
    check_transfer_pair,
    default_cap,
    in_nilRA,
    is_nilpotent_poly_criterion,
    is_nilpotent_poly_direct,
    standing_hypotheses,
    verify,
)
from skewpbw.pbw import Hypothesis, iter_box, tower_presentation


def test_direct_examples(const_z4, swap):
    assert str(is_nilpotent_poly_direct(const_z4.zero())) == "nilpotent(1)"
    assert str(is_nilpotent_poly_direct(const_z4.parse("[2]*x + [2]"))) == "nilpotent(2)"
    assert str(is_nilpotent_poly_direct(swap.parse("[(1,0)]*x"))) == "nilpotent(2)"
    r = is_nilpotent_poly_direct(const_z4.parse("x"), cap=5)
    assert not r.nilpotent and str(r) == "not_nilpotent_within_cap(5)"
    with pytest.raises(ValueError):
        is_nilpotent_poly_direct(const_z4.one(), cap=0)


def test_default_cap(const_z4):
    # two terms, max nil index 2: (m+1)k+1 = 2*2+1
    assert default_cap(const_z4.parse("[2]*x + [2]")) == 5
    # a unit coefficient has no nil index; the ring order stands in
    assert default_cap(const_z4.parse("x")) == 5


def test_constant_coefficients_match_power_loop():
    R = builtin_ring("z8")
    P = instantiate("constant_poly", {"ring": "z8"})
    for r in R.elements:
        assert is_nilpotent_poly_direct(P.const(r)).nilpotent == brute_nilpotent(R, r)


def test_criterion_examples(const_z4, swap):
    c = is_nilpotent_poly_criterion(const_z4.parse("[2]*x + [2]"))
    assert c.value and c.status == "criterion"
    assert not is_nilpotent_poly_criterion(const_z4.parse("[1] + [2]*x")).value
    s = is_nilpotent_poly_criterion(swap.parse("[(1,0)]*x"))
    assert s.status == "hypothesis_failed"
    assert s.value and not s.read_off  # nilpotent although the coefficient is not
    assert str(s.direct) == "nilpotent(2)"


def test_in_nilRA(const_z4):
    assert in_nilRA(const_z4.zero())
    assert in_nilRA(const_z4.parse("[2] + [2]*x"))
    U = instantiate("ut2_constant")
    assert in_nilRA(U.parse("[[[0,1],[0,0]]]*x"))
    assert not in_nilRA(U.parse("[[[1,0],[0,0]]]*x"))


def test_standing_hypotheses():
    names = [h.name for h in standing_hypotheses(instantiate("quantum_plane"))]
    assert names == ["sigma_compatible", "delta_compatible", "reversible", "c_central"]
    ut = {h.name: h for h in standing_hypotheses(instantiate("ut2_constant"))}
    assert not ut["reversible"].holds
    assert ut["reversible"].witness == ("[[0,1],[0,0]]", "[[1,0],[0,0]]")


def test_oracle_on_criterion_path(qplane):
    oracle = NilOracle(qplane, use_criterion=True)
    for f in iter_box(qplane, 2, 1):
        assert oracle(f) == is_nilpotent_poly_direct(f).nilpotent
    assert oracle.mismatches == []


def test_nil_coeff_on_swap_is_deterministic(swap):
    b = Budget(1, 1, "exhaustive")
    r1, r2 = verify("thm_nil_coeff", swap, b), verify("thm_nil_coeff", swap, b)
    assert r1.to_json() == r2.to_json()
    assert r1.verdict == HYPOTHESIS_FAILED and r1.exit_code == 2
    assert r1.hypothesis("sigma_compatible").witness == ("(1,0)", "(1,0)", "s1")
    assert r1.counterexamples[0].inputs == {"f": "[(1,0)]*x"}
    assert r1.counterexamples[0].got == "nilpotent(2)"


def test_all_witness_mode(swap):
    first = verify("thm_nil_coeff", swap, Budget(1, 1))
    every = verify("thm_nil_coeff", swap, Budget(1, 1, all_witnesses=True))
    assert len(first.counterexamples) == 1
    assert len(every.counterexamples) > 1
    assert every.counterexamples[0] == first.counterexamples[0]


@pytest.mark.parametrize("name,theorem,verdict,failing", [
    ("jordan_trunc", "lemma_nil_words", VERIFIED, []),
    ("jordan_trunc", "lemma_sigma_reflect", VERIFIED, []),
    ("swap_ore", "lemma_nil_words", HYPOTHESIS_FAILED, ["sigma_compatible"]),
    ("ut2_constant", "lemma_nil_words", HYPOTHESIS_FAILED, ["reversible"]),
    ("ut2_constant", "lemma_sigma_reflect", VERIFIED, []),
    ("jordan_trunc", "thm_tower_weak_sym", HYPOTHESIS_FAILED, ["sigma_rigid"]),
    ("threedim_a", "thm_tower_weak_sym", VERIFIED, []),
    ("derivation_control", "thm_ext_weak_sigdelta", HYPOTHESIS_FAILED, ["extend_maps.delta_kills_c"]),
])
def test_verdicts(name, theorem, verdict, failing):
    rep = verify(theorem, instantiate(name), Budget(1, 1, "seeded", 200))
    assert rep.verdict == verdict
    assert [h.name for h in rep.hypotheses if not h.holds] == failing


def test_tower_on_swap_is_allowed_but_unsupported():
    rep = verify("thm_tower_weak_sym", instantiate("swap_ore"), Budget(1, 1, "exhaustive", 50))
    assert rep.verdict == HYPOTHESIS_FAILED
    assert rep.hypothesis("sigma_rigid").witness == ("(1,0)", "s1")
    assert any("unsupported" in n for n in rep.notes)


def test_tower_square(const_z4):
    T = tower_presentation(const_z4)
    f = T.lift(const_z4.parse("[2] + [2]*x")) * T.var(1)
    assert (f * f).is_zero


def test_report_invariants():
    for name in ("swap_ore", "quantum_plane", "ut2_constant"):
        for th in ("thm_nil_coeff", "lemma_nil_words"):
            rep = verify(th, instantiate(name), Budget(1, 1))
            hyps_ok = all(h.holds for h in rep.hypotheses)
            if rep.verdict == VERIFIED:
                assert hyps_ok and not rep.counterexamples
            if rep.verdict == REFUTED:
                assert rep.counterexamples
            if rep.verdict == HYPOTHESIS_FAILED:
                assert any(not h.holds and h.witness is not None for h in rep.hypotheses)
            assert rep.exit_code == EXIT_CODES[rep.verdict]


def test_verdict_precedence():
    def rep(hold, cex):
        return VerificationReport("t", "p", [Hypothesis("h", hold)], {},
                                  counterexamples=[Counterexample({}, "a", "b")] if cex else [])

    assert _finish(rep(False, True), inconclusive=True).verdict == HYPOTHESIS_FAILED
    assert _finish(rep(True, True), inconclusive=True).verdict == REFUTED
    assert _finish(rep(True, False), inconclusive=True).verdict == INCONCLUSIVE
    assert _finish(rep(True, False)).verdict == VERIFIED
    assert EXIT_CODES == {VERIFIED: 0, REFUTED: 1, HYPOTHESIS_FAILED: 2, INCONCLUSIVE: 4}


def test_json_schema(qplane):
    doc = json.loads(verify("thm_nil_coeff", qplane, Budget(1, 1)).to_json())
    assert doc["schema"] == SCHEMA_VERSION == 1
    assert set(doc) >= {"theorem", "hypotheses", "domain", "checks_run", "counterexamples", "verdict"}
    assert doc["domain"]["orders"] == ["deglex", "lex"]


def test_seeded_reproducible(qplane):
    b = Budget(2, 1, "seeded", 300, seed=7)
    a, c = verify("thm_weak_sym_transfer", qplane, b), verify("thm_weak_sym_transfer", qplane, b)
    assert a.to_dict() == c.to_dict()
    assert a.domain["seed"] == 7 and a.checks_run == 300


def test_budget_errors(qplane):
    with pytest.raises(BudgetError):
        Budget(0, 1)
    with pytest.raises(BudgetError):
        Budget(1, -1)
    with pytest.raises(BudgetError):
        Budget(1, 1, "random")
    with pytest.raises(SkewPBWError):
        verify("no_such_theorem", qplane)
    with pytest.raises(BudgetError):
        verify("thm_quotient_transfer", qplane)
    assert len(THEOREMS) == 9


def test_embedding_consistency():
    # for constants, fgh nilpotent in A is abc nilpotent in R
    P = instantiate("ut2_constant")
    R = P.ring
    for a in R.elements:
        for b in R.elements:
            for c in R.elements:
                f = P.const(a) * P.const(b) * P.const(c)
                assert is_nilpotent_poly_direct(f).nilpotent == brute_nilpotent(R, R.prod([a, b, c]))


def test_transfer_pairs():
    assert check_transfer_pair(instantiate("constant_poly"), Budget(1, 1)).status == "agree"
    ut = check_transfer_pair(instantiate("ut2_constant"), Budget(1, 1))
    assert ut.status == "hypothesis_failed" and ut.ring_weak_symmetric
    assert check_transfer_pair(instantiate("swap_ore"), Budget(1, 1)).status == "hypothesis_failed"


def test_quotient_transfer_hypotheses(swap):
    R = swap.ring
    rep = verify("thm_quotient_transfer", swap, Budget(), ideal_generated(R, [R.element("(1,0)")]))
    assert rep.verdict == HYPOTHESIS_FAILED
    assert not rep.hypothesis("invariant").holds
