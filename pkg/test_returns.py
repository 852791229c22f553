"""Return-word tables, the coding Theta, derived morphisms and the ratio profile"""
import random
from fractions import Fraction

import pytest

from sadiclab.schemas.examples import SturmianSpec
from sadiclab.schemas.returns import ReturnWordTable
from sadiclab.schemas.word import Alphabet, TwoSidedWindow, Word
from sadiclab.services.examples import contrast_profiles
from sadiclab.services.returns import (
    brute_force_return_words,
    build_tower,
    build_tower_from_directive,
    completeness_span,
    decode,
    derived_morphism,
    encode,
    lr_ratio_estimate,
    return_words,
    tower_alpha,
)
from sadiclab.services.sadic import limit_prefix
from sadiclab.services.words import find_all
from sadiclab.utils.errors import (
    AlphabetMismatchError,
    EmptyPatternError,
    FactorizationError,
    IncompleteTableError,
    InsufficientOccurrencesError,
    ParameterError,
)


def _window(rng: random.Random, max_length: int = 2000) -> TwoSidedWindow:
    """Random window over 2 or 3 letters, with a random origin"""
    alphabet = Alphabet.of("abc"[:rng.choice((2, 3))])
    length = rng.randint(2, max_length)
    word = Word.from_symbols(alphabet, [rng.randrange(alphabet.size) for _ in range(length)])
    return TwoSidedWindow(word=word, origin=rng.randint(0, length))


def _context(rng: random.Random, x: TwoSidedWindow):
    """u, v either read off the window around some position or drawn at random"""
    if rng.random() < 0.7 and x.end - x.start >= 2:
        p = rng.randint(x.start + 1, x.end - 1)
        u_len = rng.randint(0, min(3, p - x.start))
        v_len = rng.randint(1, min(3, x.end - p))
        return x.slice(p - u_len, p), x.slice(p, p + v_len)
    u = Word.from_symbols(x.alphabet, [rng.randrange(x.alphabet.size) for _ in range(rng.randint(0, 2))])
    v = Word.from_symbols(x.alphabet, [rng.randrange(x.alphabet.size) for _ in range(rng.randint(1, 3))])
    return u, v


class TestReturnWords:
    def test_fibonacci_table(self, fibonacci_window):
        a = Alphabet.of("ab")
        table = return_words(fibonacci_window, Word.empty(a), a.word("a"))
        assert [w.text for w in table.returns] == ["ab", "a"]
        assert table.counts == (4, 3)
        assert table.first_positions == (0, 2)
        assert table.occurrences == 8
        assert table.complete
        assert table.theta.image("1").text == "ab"

    def test_completeness_span(self, fibonacci_window):
        a = Alphabet.of("ab")
        assert completeness_span(2, 1) == 12
        assert return_words(fibonacci_window, Word.empty(a), a.word("a"), K=2).complete
        assert not return_words(fibonacci_window, Word.empty(a), a.word("a"), K=3).complete

    def test_two_sided_context(self):
        a = Alphabet.of("ab")
        x = TwoSidedWindow(word=a.word("abaababaabaab"), origin=3)
        table = return_words(x, a.word("a"), a.word("b"))
        # occurrences of ab before position -1 are ignored
        assert table.source_span == (-1, 10)
        assert table.first_positions[0] == 0
        assert [w.text for w in table.returns] == ["ba", "baa"]

    def test_empty_v(self, fibonacci_window):
        a = Alphabet.of("ab")
        with pytest.raises(EmptyPatternError):
            return_words(fibonacci_window, a.word("a"), Word.empty(a))

    def test_too_few_occurrences(self, fibonacci_window):
        a = Alphabet.of("ab")
        with pytest.raises(InsufficientOccurrencesError):
            return_words(fibonacci_window, Word.empty(a), a.word("bb"))
        assert brute_force_return_words(fibonacci_window, Word.empty(a), a.word("bb")) == set()

    def test_alphabet_mismatch(self, fibonacci_window, abc):
        with pytest.raises(AlphabetMismatchError):
            return_words(fibonacci_window, Word.empty(abc), abc.word("a"))

    @pytest.mark.parametrize("u_len,v_len", [(0, 1), (1, 1), (3, 2), (0, 3), (5, 5)])
    def test_returns_are_exactly_the_framed_factors(self, u_len, v_len, golden):
        x = TwoSidedWindow.from_prefix(limit_prefix(golden, 3000).word, origin=200)
        u, v = x.slice(-u_len, 0), x.slice(0, v_len)
        uv = (u + v).codes
        table = return_words(x, u, v)
        for w in table.returns:
            s = (u + w + v).codes
            assert s in x.word.codes
            assert s.startswith(uv) and s.endswith(uv)
            assert find_all(s, uv) == [0, len(w)]

        codes = x.word.codes
        starts = [p for p in find_all(codes, uv) if p >= x.origin - u_len]
        framed = set()
        for i, j in enumerate(starts):
            for k in starts[i + 1:i + 4]:
                s = codes[j:k + len(uv)]
                if len(find_all(s, uv)) == 2:
                    framed.add(s[len(u):len(s) - len(v)])
        assert framed == {w.codes for w in table.returns}

    @pytest.mark.parametrize("source,u_len,v_len", [
        ("golden", 1, 1), ("golden", 2, 3), ("golden", 4, 4), ("counterexample", 1, 1), ("counterexample", 2, 3),
    ])
    def test_moving_the_cut_keeps_the_count(self, source, u_len, v_len, request):
        d = request.getfixturevalue(source)
        x = TwoSidedWindow.from_prefix(limit_prefix(d, 20000).word, origin=300)
        u, v = x.slice(-u_len, 0), x.slice(0, v_len)
        cut = return_words(x, u, v)
        uncut = return_words(x, Word.empty(x.alphabet), u + v)
        assert cut.complete and uncut.complete
        assert cut.size == uncut.size

    def test_oracle_agrees_on_random_windows(self):
        rng = random.Random(20240611)
        for _ in range(500):
            x = _window(rng)
            u, v = _context(rng, x)
            expected = brute_force_return_words(x, u, v)
            try:
                table = return_words(x, u, v)
            except InsufficientOccurrencesError:
                assert expected == set()
                continue
            assert set(table.returns) == expected
            assert len(table.returns) == len(expected)


class TestCoding:
    def test_encode_decode(self, fibonacci_window):
        a = Alphabet.of("ab")
        table = return_words(fibonacci_window, Word.empty(a), a.word("a"))
        code = encode(table, fibonacci_window, 0, 3)
        assert code.text == "121"
        assert decode(table, code).text == "abaab"

    def test_encode_needs_an_occurrence(self, fibonacci_window):
        a = Alphabet.of("ab")
        table = return_words(fibonacci_window, Word.empty(a), a.word("a"))
        with pytest.raises(ParameterError):
            encode(table, fibonacci_window, 1, 2)
        with pytest.raises(InsufficientOccurrencesError):
            encode(table, fibonacci_window, 0, 10)

    def test_decode_alphabet(self, fibonacci_window):
        a = Alphabet.of("ab")
        table = return_words(fibonacci_window, Word.empty(a), a.word("a"))
        with pytest.raises(AlphabetMismatchError):
            decode(table, Alphabet.numbered(3).word("3"))

    def test_segment_missing_from_the_table(self, golden):
        x = TwoSidedWindow.from_prefix(limit_prefix(golden, 2000).word, origin=100)
        table = return_words(x, x.slice(-1, 0), x.slice(0, 2))
        assert table.size >= 2
        tampered = ReturnWordTable(
            u=table.u,
            v=table.v,
            returns=table.returns[:-1],
            counts=table.counts[:-1],
            first_positions=table.first_positions[:-1],
            source_span=table.source_span,
            occurrences=table.occurrences,
            complete=table.complete
        )
        assert len(encode(table, x, -1, table.occurrences - 1)) == table.occurrences - 1
        with pytest.raises(FactorizationError):
            encode(tampered, x, -1, table.occurrences - 1)

    def test_round_trip_reproduces_slices(self, counterexample):
        word = limit_prefix(counterexample, 3000).word
        x = TwoSidedWindow.from_prefix(word, origin=200)
        rng = random.Random(7)
        for _ in range(50):
            p = rng.randint(2, 2000)
            u, v = x.slice(p - 2, p), x.slice(p, p + 2)
            table = return_words(x, u, v)
            start = p - 2
            count = rng.randint(1, 5)
            following = [q - x.origin for q in find_all(word.codes, (u + v).codes) if q - x.origin >= start]
            if len(following) <= count:
                continue
            code = encode(table, x, start, count)
            assert len(code) == count
            assert decode(table, code) == x.slice(p, following[count] + 2)

    @pytest.mark.parametrize("seed", [1, 2, 3, 4])
    def test_theta_is_injective(self, seed, counterexample, golden):
        rng = random.Random(seed)
        sources = [limit_prefix(counterexample, 4000).word, limit_prefix(golden, 4000).word]
        checked = 0
        while checked < 2500:
            word = rng.choice(sources)
            x = TwoSidedWindow.from_prefix(word, origin=100)
            p = rng.randint(0, 3000)
            table = return_words(x, x.slice(p - rng.randint(0, 3), p), x.slice(p, p + rng.randint(1, 3)))
            if table.size < 2:
                continue
            alphabet = table.code_alphabet
            for _ in range(50):
                first = Word.from_symbols(alphabet, [rng.randrange(table.size) for _ in range(rng.randint(1, 6))])
                second = Word.from_symbols(alphabet, [rng.randrange(table.size) for _ in range(rng.randint(1, 6))])
                if first == second:
                    continue
                assert decode(table, first) != decode(table, second)
                checked += 1


class TestDerivedTower:
    def test_alpha(self):
        assert tower_alpha(3) == 36

    def test_golden_tower(self, golden):
        tower = build_tower_from_directive(golden, K=3, levels=1)
        assert tower.size_bound == 48
        assert tower.length_bound == 324
        assert tower.bounds_ok
        assert tower.reconstruction_ok
        assert all(level.identity_ok for level in tower.levels)
        assert [level.size for level in tower.levels] == [2, 2]
        assert tower.levels[1].proper is not None
        assert tower.levels[1].positive
        assert tower.levels[1].morphism.name == "lambda1"

    @pytest.mark.slow
    def test_golden_tower_three_levels(self, golden):
        tower = build_tower_from_directive(golden, K=3, levels=2)
        assert tower.bounds_ok
        assert tower.reconstruction_ok
        for level in tower.levels:
            assert level.identity_ok
            assert level.size <= tower.size_bound
            if level.level > 0:
                assert level.max_image_length <= tower.length_bound
                assert level.proper is not None
                assert level.positive

    def test_derived_morphism_satisfies_theta_identity(self, golden):
        word = limit_prefix(golden, 2000).word
        x = TwoSidedWindow.from_prefix(word, origin=500)
        prev = return_words(x, x.slice(-1, 0), x.slice(0, 1))
        nxt = return_words(x, x.slice(-4, 0), x.slice(0, 4))
        lam = derived_morphism(prev, nxt)
        for b, image in enumerate(lam.images):
            assert decode(prev, image) == nxt.returns[b]

    def test_derived_morphism_needs_central_context(self, fibonacci_window):
        a = Alphabet.of("ab")
        prev = return_words(fibonacci_window, Word.empty(a), a.word("b"))
        nxt = return_words(fibonacci_window, Word.empty(a), a.word("a"))
        with pytest.raises(ParameterError):
            derived_morphism(prev, nxt)

    def test_small_K(self, fibonacci_window):
        with pytest.raises(ParameterError):
            build_tower(fibonacci_window, K=1, levels=1)

    def test_window_too_short(self):
        a = Alphabet.of("ab")
        x = TwoSidedWindow(word=a.word("abaababaabaab"), origin=6)
        with pytest.raises(IncompleteTableError):
            build_tower(x, K=2, levels=0)


class TestRatioProfile:
    def test_fibonacci(self, fibonacci_window):
        profile = lr_ratio_estimate(fibonacci_window, 3)
        ratios = {row.length: row.ratio for row in profile.rows}
        assert ratios == {1: Fraction(3), 2: Fraction(5, 2), 3: Fraction(5, 3)}
        assert profile.max_ratio == 3
        assert profile.omitted == []

    def test_lengths_without_repeats_are_omitted(self, fibonacci_window):
        profile = lr_ratio_estimate(fibonacci_window, 12)
        assert 12 in profile.omitted
        assert all(row.length != 12 for row in profile.rows)

    def test_golden_stays_bounded(self, golden):
        word = limit_prefix(golden, 5000).word
        profile = lr_ratio_estimate(TwoSidedWindow(word=word), 60)
        assert profile.max_ratio <= 4

    def test_unbounded_quotients_exceed_golden(self):
        report = contrast_profiles(
            SturmianSpec(quotients=(0, 1)),
            SturmianSpec(quotients=(1, 2), extend="linear"),
            window=5000,
            max_u_len=40
        )
        assert report.passed
        assert report.other_max > report.base_max

    def test_counterexample_ratio_at_the_pulled_back_length(self, counterexample):
        # rho_1(ca) has length 2 * 3^2 and returns of ratio at least 3^3 / 2
        word = limit_prefix(counterexample, 30000).word
        profile = lr_ratio_estimate(TwoSidedWindow(word=word), 18)
        row = next(r for r in profile.rows if r.length == 18)
        assert row.ratio >= Fraction(27, 2)
        assert row.max_return_length >= 243
