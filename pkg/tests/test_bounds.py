import pytest

from app.core.bounds import (
    apply_matveev_relations,
    apply_rule,
    catalog_lookup,
    ceil_div,
    ledger_rows,
    merge,
    parse_ledger_script,
    read_ledger_script,
    replay,
    run_ledger_script,
    sc_upper_from_triangulation,
)
from app.core.errors import (
    BoundContradictionError,
    ExpressionFormatError,
    MissingInputError,
    RuleRefusedError,
)
from app.models.bounds import BoundLedger


def test_triangulation_bound():
    bound = sc_upper_from_triangulation(2, "M")
    assert bound.value == 8
    assert bound.provenance.chain() == "triangulation(M: n=2)"
    with pytest.raises(RuleRefusedError):
        sc_upper_from_triangulation(0)


def test_catalog_values():
    assert catalog_lookup("S3").sc == 0 and catalog_lookup("S3").c == 0
    lens4 = catalog_lookup("L(4,1)")
    assert (lens4.sc, lens4.c, lens4.c_lower) == (0, None, 1)
    lens3 = catalog_lookup("L(3,1)")
    assert (lens3.sc, lens3.c, lens3.sc_lower) == (None, 0, 1)
    assert catalog_lookup("T3").empty


def test_catalog_rule_pins_exact_values():
    ledger = apply_rule(BoundLedger(), "catalog", "L(4,1)")
    bounds = ledger.bounds("L(4,1)")
    assert (bounds.sc_lower.value, bounds.sc_upper.value) == (0, 0)
    assert bounds.c_lower.value == 1
    assert bounds.c_upper is None


def test_rules_only_tighten():
    ledger = apply_rule(BoundLedger(), "triangulation", "M", {"n": 2})
    ledger = apply_rule(ledger, "triangulation", "M", {"n": 5})
    assert ledger.bounds("M").sc_upper.value == 8
    ledger = apply_rule(ledger, "cubulation", "M", {"k": 3})
    assert ledger.bounds("M").sc_upper.value == 3
    assert len(ledger.history) == 3


def test_matveev_needs_hypotheses():
    ledger = apply_rule(BoundLedger(), "cubulation", "M", {"k": 3})
    with pytest.raises(RuleRefusedError):
        apply_matveev_relations(ledger, "M")
    ledger = apply_rule(ledger, "hypotheses", "M")
    ledger = apply_matveev_relations(ledger, "M")
    c_upper = ledger.bounds("M").c_upper
    assert c_upper.value == 24
    assert c_upper.provenance.inputs[0].rule == "cubulation"


def test_matveev_lower_bounds_round_up():
    ledger = apply_rule(BoundLedger(), "hypotheses", "M")
    ledger = apply_rule(ledger, "assert", "M", {"quantity": "c", "relation": ">=", "value": 9})
    ledger = apply_matveev_relations(ledger, "M")
    assert ledger.bounds("M").sc_lower.value == 2

    ledger = apply_rule(BoundLedger(), "hypotheses", "N")
    ledger = apply_rule(ledger, "assert", "N", {"quantity": "sc", "relation": ">=", "value": 5})
    ledger = apply_matveev_relations(ledger, "N")
    assert ledger.bounds("N").c_lower.value == ceil_div(5, 4) == 2


@pytest.mark.parametrize("lens", ["L(3,1)", "L(4,1)"])
def test_matveev_refused_for_small_lens_spaces(lens):
    ledger = apply_rule(BoundLedger(), "hypotheses", lens)
    ledger = apply_rule(ledger, "triangulation", lens, {"n": 2})
    with pytest.raises(RuleRefusedError):
        apply_matveev_relations(ledger, lens)


def test_triangulation_c_needs_hypotheses():
    with pytest.raises(RuleRefusedError):
        apply_rule(BoundLedger(), "triangulation_c", "M", {"n": 3})
    ledger = apply_rule(BoundLedger(), "hypotheses", "M")
    ledger = apply_rule(ledger, "triangulation_c", "M", {"n": 3})
    assert ledger.bounds("M").c_upper.value == 3


def test_contradiction_reports_both_chains():
    ledger = apply_rule(BoundLedger(), "assert", "M", {"quantity": "sc", "relation": "<=", "value": 1})
    with pytest.raises(BoundContradictionError) as info:
        apply_rule(ledger, "assert", "M", {"quantity": "sc", "relation": ">=", "value": 2})
    message = str(info.value)
    assert "assert(M: sc<=1)" in message
    assert "assert(M: sc>=2)" in message


def test_subadditivity():
    with pytest.raises(MissingInputError):
        apply_rule(BoundLedger(), "subadditivity", "R", {"left": "A", "right": "B"})
    with pytest.raises(MissingInputError):
        apply_rule(BoundLedger(), "subadditivity", "R", {"left": "A"})
    ledger = run_ledger_script("cubulation A k=2\ntriangulation B n=1\nsubadditivity R left=A right=B\n")
    bound = ledger.bounds("R").sc_upper
    assert bound.value == 6
    assert {p.rule for p in bound.provenance.inputs} == {"cubulation", "triangulation"}
    with pytest.raises(RuleRefusedError):
        apply_rule(ledger, "subadditivity", "R2", {"left": "A", "right": "B", "kind": "+"})


def test_history_replays_to_the_same_ledger():
    ledger = run_ledger_script("catalog S3\ncubulation T3 k=2\nhypotheses T3\nmatveev T3\n")
    assert replay(ledger.history).entries == ledger.entries


def test_merge_is_symmetric():
    a = run_ledger_script("cubulation M k=4\nassert N c>=1\n")
    b = run_ledger_script("triangulation M n=1\nassert N c<=7\n")
    ab, ba = merge(a, b), merge(b, a)
    assert ab.entries == ba.entries
    assert ab.bounds("M").sc_upper.value == 4
    assert (ab.bounds("N").c_lower.value, ab.bounds("N").c_upper.value) == (1, 7)


def test_merge_detects_contradictions():
    a = run_ledger_script("assert M sc<=1\n")
    b = run_ledger_script("assert M sc>=3\n")
    with pytest.raises(BoundContradictionError):
        merge(a, b)


def test_script_fixture(fixtures_dir):
    ledger = read_ledger_script(fixtures_dir / "s3.ledger")
    s3 = ledger.bounds("S3")
    assert (s3.sc_lower.value, s3.sc_upper.value) == (0, 0)
    t3 = ledger.bounds("T3")
    assert t3.sc_upper.value == 2
    assert t3.c_upper.value == 16
    rows = {(name, quantity): interval for name, quantity, interval, _ in ledger_rows(ledger)}
    assert rows[("T3", "sc")] == "[0, 2]"
    assert rows[("S3", "c")] == "[0, 0]"


@pytest.mark.parametrize(
    "text, line",
    [
        ("catalog S3\ntriangulation\n", 2),
        ("assert M sc<3\n", 1),
        ("# comment\ncubulation M 3\n", 2),
    ],
)
def test_script_errors(text, line):
    with pytest.raises(ExpressionFormatError) as info:
        parse_ledger_script(text)
    assert info.value.line == line


def test_unknown_rule():
    with pytest.raises(KeyError):
        apply_rule(BoundLedger(), "nonsense", "M")


def test_catalog_guards_against_a_wrong_lower_bound():
    ledger = apply_rule(BoundLedger(), "catalog", "S3")
    with pytest.raises(BoundContradictionError):
        apply_rule(ledger, "assert", "S3", {"quantity": "sc", "relation": ">=", "value": 1})
