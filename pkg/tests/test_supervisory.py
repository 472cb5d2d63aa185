import random
from fractions import Fraction

import pytest

import oracles
from fdes.algebra import ONE, ZERO
from fdes.errors import AlphabetMismatch, SemanticsMismatch, StringNotInLanguage
from fdes.language import FiniteSupportFuzzyLanguage, prefix_closure
from fdes.supervisory import (
    REPORT_HEADERS,
    EventAttributes,
    ExplicitSupervisor,
    check_admissibility,
    check_controllability,
    check_language_controllability,
    check_n_controllability,
    check_nonblocking,
    check_sufficient_condition,
    controlled_generated_degree,
    controlled_marked_degree,
    crisp_active_events,
    synthesize_supervisor,
)

F = Fraction


# --- event attributes -----------------------------------------------------------


def test_event_attributes():
    attrs = EventAttributes({"a": "0.7", "b": "0.2"})
    assert attrs.uc("a") == F(7, 10)
    assert attrs.controllability == {"a": F(3, 10), "b": F(4, 5)}
    with pytest.raises(AlphabetMismatch):
        attrs.uc("zz")
    with pytest.raises(AlphabetMismatch):
        attrs.require_alphabet(("a", "b", "c"))
    attrs.require_alphabet(("a", "b"))


# --- automaton-spec controllability check ----------------------------------------


def test_check_two_state_report(two_state, attrs_two_state):
    g, h = two_state
    report = check_controllability(g, h, attrs_two_state)
    assert not report.overall
    assert report.warnings == []
    # one row per reachable pair node per event
    assert len(report.rows) == 7 * 2
    row = report.counterexample
    assert row.representative == ("a1",)
    assert row.event == "a1"
    assert (row.prK_s, row.LG_s_sigma, row.sigma_uc, row.lhs, row.prK_s_sigma) == (
        F(4, 5),
        F(2, 5),
        F(7, 10),
        F(2, 5),
        F(1, 5),
    )
    assert not row.verdict


def test_check_rows_satisfy_their_own_arithmetic(two_state, attrs_two_state):
    g, h = two_state
    report = check_controllability(g, h, attrs_two_state)
    for row in report.rows:
        assert row.lhs == min(row.prK_s, row.sigma_uc, row.LG_s_sigma)
        assert row.verdict == (row.lhs <= row.prK_s_sigma)
    assert report.overall == all(r.verdict for r in report.rows)


def test_check_render_and_dict(two_state, attrs_two_state):
    g, h = two_state
    report = check_controllability(g, h, attrs_two_state)
    text = report.render_text(first_failure=True)
    lines = text.splitlines()
    assert lines[0].split() == list(REPORT_HEADERS)
    assert len(lines) == 1 + 3 + 1  # header, three rows, overall
    assert lines[-1] == "overall: F"
    doc = report.to_dict()
    assert doc["schema_version"] == "1"
    assert doc["overall"] is False
    assert doc["rows"][0]["s"] == ""  # epsilon renders as the empty string in JSON
    assert doc["rows"][2]["verdict"] is False


def test_check_three_state_verdicts(three_state, attrs_mixed, attrs_low):
    g, h = three_state
    failing = check_controllability(g, h, attrs_mixed)
    assert not failing.overall
    bad = [(r.representative, r.event) for r in failing.rows if not r.verdict]
    assert bad[:2] == [((), "b2"), ((), "b3")]
    passing = check_controllability(g, h, attrs_low)
    assert passing.overall
    assert passing.counterexample is None


def test_check_requires_max_min(maxprod_open):
    g, attrs = maxprod_open
    with pytest.raises(SemanticsMismatch):
        check_controllability(g, g, attrs)


# --- language-spec check -----------------------------------------------------------


def test_language_check_chain(chain):
    g, k, attrs_ok, attrs_bad = chain
    good = check_language_controllability(g, k, attrs_ok)
    assert good.overall
    bad = check_language_controllability(g, k, attrs_bad)
    assert not bad.overall
    assert bad.counterexample.representative == ("a", "b")
    assert bad.counterexample.event == "c"
    assert bad.counterexample.lhs == F(3, 10)
    assert bad.counterexample.prK_s_sigma == ZERO


def test_sufficient_condition(chain):
    g, k, attrs_ok, _ = chain
    # the bundled spec language is controllable but fails the stronger test
    # (it does not contain the single-step prefix "a" at full degree)
    assert not check_sufficient_condition(g, k, attrs_ok)
    closed = prefix_closure(k)
    assert check_sufficient_condition(g, closed, attrs_ok)
    assert check_language_controllability(g, closed, attrs_ok).overall


def test_sufficient_condition_implies_controllable():
    rng = random.Random(41)
    hits = 0
    for _ in range(80):
        g = oracles.random_automaton(rng, max_events=2)
        k = prefix_closure(oracles.random_language(rng, g.alphabet))
        attrs = oracles.random_attrs(rng, g.alphabet)
        if check_sufficient_condition(g, k, attrs):
            hits += 1
            assert check_language_controllability(g, k, attrs).overall
    assert hits  # the implication must actually have fired


# --- bounded check -----------------------------------------------------------------


def test_check_n_row_counts(two_state, attrs_two_state):
    g, h = two_state
    for n in (0, 1, 2):
        report = check_n_controllability(g, h, attrs_two_state, n)
        strings = sum(2**i for i in range(n + 1))
        assert len(report.rows) == strings * 2
        assert report.n == n
    assert check_n_controllability(g, h, attrs_two_state, 0).overall
    assert not check_n_controllability(g, h, attrs_two_state, 1).overall


def test_check_n_progress_and_language_spec(chain):
    g, k, _, attrs_bad = chain
    seen = []
    report = check_n_controllability(g, k, attrs_bad, 3, progress=seen.append)
    assert not report.overall
    assert len(seen) == sum(3**i for i in range(4))
    assert report.counterexample.representative == ("a", "b")


def test_check_n_agrees_with_pair_check():
    """The bounded string-tree check and the pair-graph check agree: a pass is
    a pass at every bound, and a failure shows up once the bound covers the
    counterexample."""
    rng = random.Random(42)
    for _ in range(30):
        g, h = oracles.dominated_pair(rng, max_states=2, max_events=2)
        attrs = oracles.random_attrs(rng, g.alphabet)
        exact = check_controllability(g, h, attrs)
        if exact.overall:
            assert check_n_controllability(g, h, attrs, 3).overall
        else:
            depth = len(exact.counterexample.representative)
            bounded = check_n_controllability(g, h, attrs, min(depth, 4))
            assert not bounded.overall


# --- synthesized supervisors --------------------------------------------------------


def test_synthesize_chain_supervisor(chain):
    g, k, attrs_ok, _ = chain
    sup = synthesize_supervisor(g, k, attrs_ok)
    assert sup.check_passed
    assert sup.alphabet == ("a", "b", "c")
    assert sup.enablement_degree((), "a") == F(4, 5)
    assert sup.enablement_degree(("a",), "b") == F(4, 5)
    assert sup.enablement_degree((), "b") == ZERO
    assert sup.enablement_degree((), "c") == ZERO
    assert sup.enablement_degree(("a", "b"), "c") == ZERO
    rows = sup.rows()
    nonzero = {(s, e): d for s, degs in rows for e, d in degs.items() if d != ZERO}
    assert nonzero == {((), "a"): F(4, 5), (("a",), "b"): F(4, 5)}


def test_synthesize_branches_follow_the_construction(two_state, attrs_two_state):
    g, h = two_state
    sup = synthesize_supervisor(g, h, attrs_two_state)
    assert not sup.check_passed  # still constructed, but flagged
    # uc(a1)=0.7 < pr(K)(a1)=0.8: enable at pr(K)(s sigma)
    assert sup.enablement_degree((), "a1") == F(4, 5)
    # uc(a2)=0.2 >= pr(K)(a2)=0.2: enable at min(uc, L_G(s sigma))
    assert sup.enablement_degree((), "a2") == F(1, 5)
    assert sup.prk_degree(()) == F(4, 5)


def test_controlled_language_fold(chain):
    g, k, attrs_ok, _ = chain
    sup = synthesize_supervisor(g, k, attrs_ok)
    assert controlled_generated_degree(sup, g, ()) == ONE
    assert controlled_generated_degree(sup, g, ("a",)) == F(4, 5)
    assert controlled_generated_degree(sup, g, ("a", "b")) == F(4, 5)
    assert controlled_generated_degree(sup, g, ("a", "b", "c")) == ZERO
    assert controlled_marked_degree(sup, g, ("a", "b")) == F(4, 5)
    assert controlled_marked_degree(sup, g, ("a",)) == ZERO


def test_explicit_supervisor_controls_the_chain(chain):
    g, _, _, _ = chain
    sup = ExplicitSupervisor(("a", "b", "c"), {(): {"a": F(4, 5)}, ("a",): {"b": F(4, 5)}})
    assert sup.enablement_degree((), "a") == F(4, 5)
    assert sup.enablement_degree((), "b") == ZERO
    assert sup.enablement_degree(("x",), "a") == ZERO  # off-table -> default
    assert controlled_generated_degree(sup, g, ("a", "b")) == F(4, 5)
    assert controlled_generated_degree(sup, g, ("a", "b", "c")) == ZERO


# --- admissibility --------------------------------------------------------------------


def test_admissibility_of_explicit_supervisors(chain):
    g, _, attrs_ok, attrs_bad = chain
    sup = ExplicitSupervisor(("a", "b", "c"), {(): {"a": F(4, 5)}, ("a",): {"b": F(4, 5)}})
    assert check_admissibility(sup, g, attrs_ok).ok
    # raising uc(c) above zero makes the all-zero row at "a b" inadmissible
    res = check_admissibility(sup, g, attrs_bad)
    assert not res.ok
    # witness: string, event, required floor min(uc, L_G), actual enablement
    assert res.counterexample == (("a", "b"), "c", F(3, 10), ZERO)
    raised = ExplicitSupervisor(
        ("a", "b", "c"),
        {(): {"a": F(4, 5)}, ("a",): {"b": F(4, 5)}, ("a", "b"): {"c": F(3, 10)}},
    )
    assert check_admissibility(raised, g, attrs_bad).ok


def test_synthesized_supervisors_are_admissible_random():
    rng = random.Random(43)
    for _ in range(40):
        g, h = oracles.dominated_pair(rng, max_states=2, max_events=2)
        attrs = oracles.random_attrs(rng, g.alphabet)
        sup = synthesize_supervisor(g, h, attrs)
        assert check_admissibility(sup, g, attrs).ok


# --- round trip -----------------------------------------------------------------------


def test_round_trip_small():
    rng = random.Random(44)
    passed = failed = 0
    for _ in range(40):
        g, h = oracles.dominated_pair(rng)
        attrs = oracles.random_attrs(rng, g.alphabet)
        if oracles.assert_round_trip(g, h, attrs, depth=4, rng=rng):
            passed += 1
        else:
            failed += 1
    assert passed and failed  # both branches exercised


# --- nonblocking ------------------------------------------------------------------------


def test_nonblocking_chain(chain):
    g, k, attrs_ok, _ = chain
    sup = synthesize_supervisor(g, k, attrs_ok)
    report = check_nonblocking(sup, g, k, attrs_ok)
    assert report.nonblocking
    assert report.condition_a and report.condition_b and report.direct_ok
    assert report.depth_used == 4
    assert any("not contained" in w for w in report.warnings)
    text = report.render_text()
    assert "verdict: nonblocking" in text
    doc = report.to_dict()
    assert doc["schema_version"] == "1"
    assert doc["nonblocking"] is True


def test_blocking_chain(chain):
    g, k, _, attrs_bad = chain
    sup = synthesize_supervisor(g, k, attrs_bad)
    report = check_nonblocking(sup, g, k, attrs_bad)
    assert not report.nonblocking
    assert report.direct_witness == ("a", "b", "c")
    assert not report.condition_b
    assert report.condition_b_witness.representative == ("a", "b")
    assert "verdict: blocking" in report.render_text()


def test_nonblocking_warns_on_weak_empty_string(chain):
    g, _, attrs_ok, _ = chain
    weak = FiniteSupportFuzzyLanguage(("a", "b", "c"), {(): "0.9", ("a", "b"): "0.8"})
    sup = synthesize_supervisor(g, weak, attrs_ok)
    report = check_nonblocking(sup, g, weak, attrs_ok)
    assert any("K(eps)" in w or "K(ε)" in w for w in report.warnings)


# --- crisp specialization ---------------------------------------------------------------


def test_crisp_active_events(crisp_pair):
    _, h = crisp_pair
    assert crisp_active_events(h, ()) == {"a1", "a3"}
    assert crisp_active_events(h, ("a1",)) == {"a2"}
    assert crisp_active_events(h, ("a1", "a2")) == set()
    assert crisp_active_events(h, ("a3",)) == set()
    with pytest.raises(StringNotInLanguage):
        crisp_active_events(h, ("b1",))


def test_crisp_check_agrees_with_subset_oracle(crisp_pair, attrs_crisp):
    g, h = crisp_pair
    report = check_controllability(g, h, attrs_crisp)
    uc_events = {e for e in g.alphabet if attrs_crisp.uc(e) == ONE}
    assert report.overall == oracles.crisp_pair_controllable(g, h, uc_events)


def test_crisp_agreement_random():
    rng = random.Random(45)
    verdicts = set()
    for _ in range(60):
        g, h = oracles.dominated_pair(rng, palette=(ZERO, ONE))
        uc_events = set()
        uncontrollability = {}
        for e in g.alphabet:
            hot = rng.random() < 0.5
            uncontrollability[e] = ONE if hot else ZERO
            if hot:
                uc_events.add(e)
        attrs = EventAttributes(uncontrollability)
        report = check_controllability(g, h, attrs)
        assert report.overall == oracles.crisp_pair_controllable(g, h, uc_events)
        verdicts.add(report.overall)
    assert verdicts == {True, False}
