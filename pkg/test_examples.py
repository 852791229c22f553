"""The {a, b, c} counterexample and the Sturmian family"""
import pytest
from pydantic import ValidationError

from sadiclab.schemas.examples import CounterexampleSpec, SturmianSpec
from sadiclab.services.examples import (
    all_triples,
    block_closed_form,
    block_morphism,
    counterexample_block_start,
    counterexample_directive,
    rho,
    sturmian_directive,
    sturmian_lr_verdict,
    verify_block_identities,
    verify_gap_lemma,
    verify_not_lr,
    verify_sturmian_gaps,
    verify_telescoping,
)
from sadiclab.services.morphisms import constant_length
from sadiclab.services.sadic import limit_prefix
from sadiclab.utils.errors import DirectiveError, ParameterError


class TestCounterexampleDirective:
    @pytest.mark.parametrize("k, start", [(1, 0), (2, 2), (3, 5), (4, 9)])
    def test_block_starts(self, k, start):
        assert counterexample_block_start(k) == start

    def test_block_start_of_a_tail(self):
        assert counterexample_block_start(3, first_block=3) == 0
        assert counterexample_block_start(4, first_block=3) == 4
        with pytest.raises(ParameterError):
            counterexample_block_start(2, first_block=3)

    def test_tail_directive(self, sigma, tau):
        y = counterexample_directive(first_block=3)
        assert [y.morphism(n) for n in range(5)] == [sigma, sigma, sigma, tau, sigma]

    @pytest.mark.parametrize("n, length", [(1, 9), (2, 243), (3, 19683)])
    def test_rho_lengths(self, n, length):
        m = rho(n)
        assert constant_length(m) == length
        assert m.name == f"rho{n}"

    def test_spec(self):
        assert CounterexampleSpec(n=2).tail_first_block == 4
        with pytest.raises(ValidationError):
            CounterexampleSpec(n=0)


class TestCounterexampleChecks:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_gap_lemma(self, n):
        report = verify_gap_lemma(n, 30 * 3 ** (n + 1))
        assert report.conclusive
        assert report.bound == 3 ** (n + 1)
        assert report.min_gap >= report.bound
        assert report.passed

    def test_gap_lemma_inconclusive_window(self):
        report = verify_gap_lemma(2, 20)
        assert not report.conclusive
        assert not report.passed
        assert report.strict is None

    @pytest.mark.parametrize("n, window", [(1, 1000), (2, 3000)])
    def test_not_lr(self, n, window):
        report = verify_not_lr(n, window)
        assert report.w_length >= 3 ** (n + 2)
        assert report.exactly_twice
        assert report.x_prefix_ok
        assert report.ratio >= report.ratio_bound
        assert report.rho_length == 3 ** (n * (n + 3) // 2)
        assert report.passed

    def test_not_lr_skips_unreachable_prefix(self):
        report = verify_not_lr(3, 10000, x_window=1000)
        assert report.x_prefix_ok is None
        assert report.passed

    @pytest.mark.parametrize("n", [1, 2])
    def test_telescoping(self, n):
        report = verify_telescoping(n, 3000)
        assert report.first_mismatch is None
        assert report.passed

    def test_bad_n(self):
        with pytest.raises(ParameterError):
            verify_gap_lemma(0, 100)


class TestSturmianSpec:
    @pytest.mark.parametrize("quotients", [(), (-1,), (1, 0), (0, 2, 0)])
    def test_invalid(self, quotients):
        with pytest.raises(ValidationError):
            SturmianSpec(quotients=quotients)

    def test_extensions(self):
        golden = SturmianSpec(quotients=(0, 1))
        assert [golden.quotient(k) for k in range(1, 6)] == [0, 1, 1, 1, 1]
        assert not golden.finite
        linear = SturmianSpec(quotients=(1, 2), extend="linear")
        assert [linear.quotient(k) for k in range(1, 6)] == [1, 2, 3, 4, 5]
        cycle = SturmianSpec(quotients=(2, 1, 3))
        assert [cycle.quotient(k) for k in range(1, 7)] == [2, 1, 3, 1, 3, 1]
        finite = SturmianSpec(quotients=(2, 3), extend="none")
        assert finite.quotient(3) is None
        assert finite.finite
        assert str(finite) == "2,3"


class TestSturmianDirective:
    def test_golden_prefix(self, golden):
        assert limit_prefix(golden, 5).word.text == "01101"

    def test_stream_skips_zero_quotient(self, golden):
        assert golden.morphism(0).name == "sigma"
        assert golden.morphism(1).name == "tau"

    def test_finite_stream(self):
        d = sturmian_directive(SturmianSpec(quotients=(1, 1, 1), extend="none"))
        assert d.length == 3
        prefix = limit_prefix(d, 6)
        assert prefix.certificate == "finite"
        assert prefix.word.text == "010010"

    def test_empty_stream(self):
        with pytest.raises(DirectiveError):
            sturmian_directive(SturmianSpec(quotients=(0,), extend="none"))


class TestSturmianBlocks:
    def test_closed_forms(self):
        assert block_morphism(1, 1, 1).image("0").text == "010"
        assert block_morphism(1, 1, 1).image("1").text == "10010"
        assert block_morphism(2, 1, 1).image("0").text == "0100"
        assert block_closed_form(2, 1, 1, "0") == "0100"
        assert block_morphism(1, 1, 1, "sigma").image("1").text == "101"
        assert block_closed_form(1, 1, 1, "1", "sigma") == "101"

    def test_all_identities_up_to_four(self):
        triples = all_triples(4, 4, 4)
        assert len(triples) == 64
        report = verify_block_identities(triples)
        assert len(report.rows) == 64 * 2 * 2
        assert report.passed

    def test_exponents_must_be_positive(self):
        with pytest.raises(ParameterError):
            verify_block_identities([(0, 1, 1)])

    @pytest.mark.parametrize("form", ["tau", "sigma"])
    def test_gap_bound(self, golden, form):
        tail = limit_prefix(golden, 2000).word
        report = verify_sturmian_gaps(1, 1, 1, tail, form)
        assert report.bound == 5
        assert report.passed

    def test_per_factor_bounds_are_reported(self, golden):
        tail = limit_prefix(golden, 2000).word
        report = verify_sturmian_gaps(2, 3, 1, tail)
        assert report.bound == 9
        assert report.sub_bounds == {"01": 4, "10": 4, "00": 3}
        assert report.passed


class TestSturmianVerdict:
    def test_golden_is_bounded(self):
        report = sturmian_lr_verdict(SturmianSpec(quotients=(0, 1)), 6, 10000)
        assert len(report.rows) == 7
        assert all(row.bound == 5 for row in report.rows)
        assert all(row.observed is not None and row.observed <= 5 for row in report.rows)
        assert report.max_quotient == 1
        assert not report.growing
        assert report.passed

    def test_forms_alternate(self):
        report = sturmian_lr_verdict(SturmianSpec(quotients=(0, 1)), 1, 2000)
        assert report.rows[0].form == "sigma tau sigma"
        assert report.rows[1].form == "tau sigma tau"

    def test_unbounded_quotients_grow(self):
        report = sturmian_lr_verdict(SturmianSpec(quotients=(1, 2), extend="linear"), 3, 5000)
        assert [row.exponents for row in report.rows] == [(1, 2, 3), (4, 5, 6), (7, 8, 9), (10, 11, 12)]
        assert report.growing
        assert report.verdict == "unbounded trend"

    def test_finite_quotients(self):
        report = sturmian_lr_verdict(SturmianSpec(quotients=(1, 1, 1, 1, 1), extend="none"), 6, 500)
        assert len(report.rows) == 1
        assert report.dropped_blocks == 2
        assert report.rows[0].observed == 3

    def test_too_short_for_a_triple(self):
        with pytest.raises(DirectiveError):
            sturmian_lr_verdict(SturmianSpec(quotients=(1, 1), extend="none"), 2, 100)

    def test_profile_attached(self):
        report = sturmian_lr_verdict(SturmianSpec(quotients=(0, 1)), 1, 2000, max_u_len=10)
        assert report.profile is not None
        assert report.profile.max_ratio <= 4
