import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from relmod.closure import (
    Atom,
    Certificate,
    CertifyFailure,
    ClosureDatum,
    ExprParseError,
    NEGLIGIBLE,
    NON_NEGLIGIBLE,
    UNKNOWN,
    ProductRule,
    Retract,
    Sum,
    Tensor,
    Term,
    VRule,
    certify,
    check_cor1,
    check_cor2,
    dumps_closure,
    expr_to_str,
    loads_closure,
    negligible_closure,
    parse_expr,
    replay_certificate,
    toy_closure_datum,
    toy_expressions,
)
from relmod.datum import Degree, GradingSpec, SmallSubset
from relmod.verdicts import DATA_ABSENT, FAILS, HOLDS


def drop_rule(datum, left, right):
    return dataclasses.replace(datum, product_rules=tuple(
        r for r in datum.product_rules if (r.left, r.right) != (left, right)))


def set_negligible(datum, **flags):
    return dataclasses.replace(datum, atoms=tuple(
        dataclasses.replace(a, negligible=flags.get(a.name, a.negligible))
        for a in datum.atoms))


class TestParsing:
    def test_round_trip(self):
        for text in ("a", "a*b", "a*b*v", "retract(a*b)", "(a+b)*v",
                     "retract(a) + b*v"):
            e = parse_expr(text)
            assert parse_expr(expr_to_str(e)) == e

    def test_bad_inputs(self):
        for text in ("a *", "retract a", "(a", "a + + b", "a$b"):
            with pytest.raises(ExprParseError):
                parse_expr(text)


class TestCor1:
    def test_toy_holds(self):
        assert check_cor1(toy_closure_datum()).status == HOLDS

    def test_single_atom_self_rule(self):
        datum = ClosureDatum(
            atoms=(dataclasses.replace(toy_closure_datum().atoms[0], name="a",
                                       dual="a", degree=None),
                   dataclasses.replace(toy_closure_datum().atoms[2], name="v",
                                       dual="v", degree=None)),
            distinguished="v", bound=2,
            v_rules=(VRule("a", None, True), VRule("v", None, True)),
            product_rules=(ProductRule("a", "a", (Term("a", 0),)),))
        assert check_cor1(datum).status == HOLDS

    def test_missing_rule_fails_naming_pair(self):
        v = check_cor1(drop_rule(toy_closure_datum(), "a", "b"))
        assert v.status == FAILS
        assert v.witnesses[0].indices == ("a", "b")
        assert "missing product rule" in v.witnesses[0].name

    def test_unflagged_atom_fails(self):
        toy = toy_closure_datum()
        bad = dataclasses.replace(toy, atoms=tuple(
            dataclasses.replace(a, strong_decomposition=a.name != "b")
            for a in toy.atoms))
        v = check_cor1(bad)
        assert v.status == FAILS
        assert ("b",) in [w.indices for w in v.witnesses]

    def test_no_distinguished_atom(self):
        toy = toy_closure_datum()
        v = check_cor1(dataclasses.replace(toy, distinguished=None))
        assert v.status == DATA_ABSENT

    def test_missing_v_coverage_fails(self):
        toy = toy_closure_datum()
        v = check_cor1(dataclasses.replace(
            toy, v_rules=tuple(r for r in toy.v_rules if r.atom != "a")))
        assert v.status == FAILS
        assert ("a",) in [w.indices for w in v.witnesses]


class TestCor2:
    def test_toy_holds(self):
        assert check_cor2(toy_closure_datum()).status == HOLDS

    def test_non_generic_pair_exempt(self):
        # a (x) b lands in degree 0 which lies in X, so no rule is needed
        v = check_cor2(drop_rule(toy_closure_datum(), "a", "b"))
        assert v.status == HOLDS

    def test_generic_pair_requires_rule(self):
        toy = drop_rule(toy_closure_datum(), "a", "b")
        shifted = dataclasses.replace(toy, atoms=tuple(
            dataclasses.replace(a, dual=None,
                                degree=Degree(alpha=1, shift=Fraction(1))
                                if a.name == "b" else a.degree)
            for a in toy.atoms))
        v = check_cor2(shifted)
        assert v.status == FAILS
        assert v.witnesses[0].indices == ("a", "b")

    def test_monotone_in_small_subset(self):
        # enlarging X (shrinking the generic locus) never flips holds to fails
        toy = drop_rule(toy_closure_datum(), "a", "b")
        assert check_cor2(toy).status == HOLDS
        bigger_x = dataclasses.replace(toy, grading=GradingSpec(
            small=SmallSubset("list", (Degree(), Degree(alpha=2),
                                       Degree(alpha=-2)))))
        assert check_cor2(bigger_x).status == HOLDS

    def test_no_grading_data_absent(self):
        v = check_cor2(dataclasses.replace(toy_closure_datum(), grading=None))
        assert v.status == DATA_ABSENT


class TestCertify:
    def test_single_flagged_atom(self):
        c = certify(toy_closure_datum(), "a", depth=0)
        assert isinstance(c, Certificate) and c.kind == "atom"
        assert not c.children

    def test_sum_with_rule_application(self):
        c = certify(toy_closure_datum(), "(a*b)+a", depth=4)
        assert isinstance(c, Certificate) and c.kind == "direct-sum"
        kinds = [ch.kind for ch in c.children]
        assert kinds == ["tensor-rewrite", "atom"]

    def test_triple_product_uses_two_rewrites(self):
        c = certify(toy_closure_datum(), "a*a*a", depth=3)
        assert isinstance(c, Certificate)
        assert c.count_rewrites() == 2

    def test_all_toy_expressions_certify_and_replay(self):
        toy = toy_closure_datum()
        exprs = toy_expressions()
        assert len(exprs) == 56
        for e in exprs:
            c = certify(toy, e, depth=8)
            assert isinstance(c, Certificate), (e, c)
            assert replay_certificate(c, toy)

    def test_stuck_failure_names_pair(self):
        f = certify(drop_rule(toy_closure_datum(), "a", "b"), "a*b", depth=4)
        assert isinstance(f, CertifyFailure) and f.kind == "stuck"
        assert "(a, b)" in f.message

    def test_depth_exhaustion_distinct(self):
        f = certify(toy_closure_datum(), "a*a*a", depth=1)
        assert isinstance(f, CertifyFailure) and f.kind == "depth-exhausted"

    def test_replay_rejects_tampered_certificate(self):
        toy = toy_closure_datum()
        c = certify(toy, "a*a", depth=4)
        assert isinstance(c, Certificate)
        stripped = drop_rule(toy, "a", "a")
        with pytest.raises(ValueError):
            replay_certificate(c, stripped)

    def test_replay_rejects_unflagged_leaf(self):
        toy = toy_closure_datum()
        c = certify(toy, "a", depth=0)
        bad = dataclasses.replace(toy, atoms=tuple(
            dataclasses.replace(a, strong_decomposition=a.name != "a")
            for a in toy.atoms))
        with pytest.raises(ValueError):
            replay_certificate(c, bad)

    def test_retract_and_v_powers(self):
        c = certify(toy_closure_datum(), "retract(b*v*v)", depth=4)
        assert isinstance(c, Certificate) and c.kind == "retract"
        assert c.children[0].kind == "v-power"


class TestNegligible:
    def test_ideal_absorption(self):
        toy = set_negligible(toy_closure_datum(), b=True)
        assert negligible_closure(toy, "b*a*v") == NEGLIGIBLE
        assert negligible_closure(toy, "retract(b)") == NEGLIGIBLE

    def test_sum_of_non_negligibles(self):
        assert negligible_closure(toy_closure_datum(), "a + a") == NON_NEGLIGIBLE

    def test_retract_of_unflagged_is_unknown(self):
        toy = set_negligible(toy_closure_datum(), a=None)
        assert negligible_closure(toy, "retract(a)") == UNKNOWN

    def test_tensor_of_non_negligibles_is_unknown(self):
        assert negligible_closure(toy_closure_datum(), "a*a") == UNKNOWN

    @given(flags=st.tuples(st.booleans(), st.booleans(), st.booleans()))
    @settings(max_examples=20)
    def test_monotone_in_flags(self, flags):
        # adding negligible flags never changes an answer from negligible
        base = set_negligible(toy_closure_datum(),
                              a=flags[0] or None, b=flags[1] or None,
                              v=flags[2] or None)
        more = set_negligible(toy_closure_datum(),
                              a=flags[0], b=flags[1], v=flags[2])
        for expr in ("a", "a*b", "a+b", "retract(a*v)", "b*v*v"):
            before = negligible_closure(base, expr)
            after = negligible_closure(more, expr)
            if before == NEGLIGIBLE:
                assert after == NEGLIGIBLE


class TestSerialization:
    def test_round_trip(self):
        toy = toy_closure_datum()
        assert loads_closure(dumps_closure(toy)) == toy

    def test_dual_degree_negation_checked(self):
        toy = toy_closure_datum()
        bad_atoms = tuple(
            dataclasses.replace(a, degree=Degree(alpha=1) if a.name == "b" else a.degree)
            for a in toy.atoms)
        bad = dataclasses.replace(toy, atoms=bad_atoms)
        assert any("degree negation" in p for p in bad.validate())

    def test_undeclared_rhs_atom_rejected(self):
        toy = toy_closure_datum()
        bad = dataclasses.replace(toy, product_rules=toy.product_rules + (
            ProductRule("a", "a", (Term("ghost", 0),)),))
        assert any("ghost" in p for p in bad.validate())
