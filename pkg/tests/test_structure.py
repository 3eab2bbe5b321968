import pytest

from nivatlab.complexity import complexity
from nivatlab.configurations import Alphabet, DoublyPeriodic, WindowSample
from nivatlab.errors import GeometryError, HypothesisNotMet, InexactDataError
from nivatlab.geometry import Line, block, convex_hull
from nivatlab.structure import (
    GeneratingKind,
    StripLemmaStatus,
    audit_mlc_inequality,
    construct_balanced_set,
    directional_point_sets,
    expansive_witness,
    find_directional_generating_set,
    find_generating_set,
    find_mlc_set,
    is_generated,
    lemma_thickness_audit,
    m_classes,
    phi,
    remark_i_instance,
    thickness_ok,
    verify_strip_lemma,
)

from conftest import DIAGONAL, HORIZONTAL, VERTICAL


@pytest.fixture(scope="module")
def stripe():
    return DoublyPeriodic.from_rows(Alphabet(("a", "b")), ["aab"])


@pytest.fixture(scope="module")
def row_constant():
    return DoublyPeriodic.from_rows(Alphabet(("a", "b")), ["a", "b"])


class TestIsGenerated:
    def test_checkerboard_domino_top(self, checkerboard):
        assert is_generated(checkerboard, [(0, 0), (0, 1)], (0, 1))

    def test_strict_monotone_case(self, diagonal):
        # removing the unique extreme-delta corner of R_{3,4} loses a pattern
        assert not is_generated(diagonal, block(3, 4), (2, 0))
        assert is_generated(diagonal, block(3, 4), (0, 0))

    def test_refuses_lower_bound_data(self, ab):
        w = WindowSample(ab, (0, 0), ["ab" * 4] * 6)
        with pytest.raises(InexactDataError):
            is_generated(w, block(2, 2), (0, 0))


class TestFindGeneratingSet:
    def test_checkerboard_descends_to_domino(self, checkerboard):
        r = find_generating_set(checkerboard, block(2, 2))
        assert len(r.set) == 2
        assert r.kind is GeneratingKind.GENERATING
        assert all(c.generated for c in r.certificates)

    def test_stripe_keeps_horizontal_triple(self, stripe):
        r = find_generating_set(stripe, block(3, 1))
        assert sorted(r.set.points) == [(0, 0), (1, 0), (2, 0)]

    def test_row_constant_minimal_column(self, row_constant):
        r = find_generating_set(row_constant, block(1, 2))
        assert sorted(r.set.points) == [(0, 0), (0, 1)]

    def test_hypothesis_gate(self, one_defect):
        with pytest.raises(HypothesisNotMet):
            find_generating_set(one_defect, block(2, 2))


class TestDirectionalGeneratingSet:
    def test_checkerboard_horizontal(self, checkerboard):
        r = find_directional_generating_set(checkerboard, block(2, 2), HORIZONTAL)
        assert r.kind is GeneratingKind.DIRECTIONAL
        if r.remark_i is not None:
            drop, allowed = r.remark_i
            assert drop <= allowed
        assert all(c.generated for c in r.certificates)

    def test_checkerboard_vertical_symmetry(self, checkerboard):
        rh = find_directional_generating_set(checkerboard, block(2, 2), HORIZONTAL)
        rv = find_directional_generating_set(checkerboard, block(2, 2), VERTICAL)
        assert len(rh.set) == len(rv.set)

    def test_diagonal_frozen_result(self, diagonal):
        r = find_directional_generating_set(diagonal, block(3, 4), HORIZONTAL)
        assert sorted(r.set.points) == [(0, 2), (0, 3), (1, 3), (2, 3)]
        assert r.remark_i == (0, 0)
        assert r.peeling_trace == ((12, 7), (9, 6), (6, 5), (3, 4))
        # the peeled remainder is the start shape cut by a half plane
        assert r.half_plane_line is not None
        cut = {g for g in block(3, 4).points if r.half_plane_line.half_plane_contains(g)}
        assert cut == set(block(3, 4).points) & cut
        assert {g for g in r.set.points if r.half_plane_line.half_plane_contains(g)} == cut & set(r.set.points)


class TestFindMlcSet:
    def test_checkerboard_domino(self, checkerboard):
        r = find_mlc_set(checkerboard, block(2, 2))
        assert len(r.set) == 2
        assert r.bound_check.satisfied

    def test_diagonal_pair(self, diagonal):
        r = find_mlc_set(diagonal, block(3, 4))
        pts = sorted(r.set.points)
        assert len(pts) == 2
        (x0, y0), (x1, y1) = pts
        assert (x1 - x0, y1 - y0) == (1, 1)  # a period step
        assert not r.set.has_positive_area()

    def test_fixed_point_when_already_minimal(self, checkerboard):
        domino = convex_hull([(0, 0), (0, 1)])
        r = find_mlc_set(checkerboard, domino)
        assert set(r.set.points) == set(domino.points)

    def test_gate(self, one_defect):
        with pytest.raises(HypothesisNotMet):
            find_mlc_set(one_defect, block(2, 2))

    def test_inequality_audit(self, checkerboard, diagonal):
        for cfg, shape in ((checkerboard, block(2, 2)), (diagonal, block(3, 4))):
            r = find_mlc_set(cfg, shape)
            for audit in audit_mlc_inequality(cfg, r):
                assert audit.ok

    def test_remark_instances(self, diagonal):
        r = find_mlc_set(diagonal, block(3, 4))
        for line in (HORIZONTAL, VERTICAL, DIAGONAL):
            instance = remark_i_instance(diagonal, r, line)
            if instance is not None:
                drop, allowed = instance
                assert drop <= allowed

    def test_thickness_audit_paths(self, diagonal, checkerboard):
        r = find_mlc_set(diagonal, block(3, 4))
        audit = lemma_thickness_audit(r, DIAGONAL, aperiodic_certified=False)
        assert not audit.applicable and "aperiodic" in audit.reason
        audit2 = lemma_thickness_audit(r, DIAGONAL, aperiodic_certified=True)
        assert not audit2.applicable and "null-area" in audit2.reason
        g = find_generating_set(checkerboard, block(2, 2))
        assert not lemma_thickness_audit(g, DIAGONAL, True).applicable


class TestDirectionalPointSets:
    def test_square_rows(self):
        d = directional_point_sets(block(3, 3), HORIZONTAL, 2)
        assert set(d.initials) == {(0, 1), (0, 2)}
        assert set(d.finals) == {(2, 1), (2, 2)}

    def test_thick_requirement_empties(self):
        d = directional_point_sets(block(3, 3), HORIZONTAL, 4)
        assert d.initials == () and d.finals == ()

    def test_triangle(self):
        tri = convex_hull([(0, 0), (2, 0), (0, 2)])
        d = directional_point_sets(tri, HORIZONTAL, 2)
        assert set(d.initials) == {(0, 1)}

    def test_half_strip_truncation(self):
        d = directional_point_sets(block(3, 3), HORIZONTAL, 2)
        strip = d.half_strip(0, "+", 2)
        assert (0, 1) in strip and (2, 2) in strip
        assert (-1, 1) not in strip

    def test_backward_half_strip_uses_final_points(self):
        d = directional_point_sets(block(3, 3), HORIZONTAL, 2)
        strip = d.half_strip(0, "-", 2)
        assert (2, 1) in strip and (0, 2) in strip
        assert (3, 1) not in strip

    def test_two_sided_strip(self):
        d = directional_point_sets(block(3, 3), HORIZONTAL, 2)
        strip = d.strip(-1, 1)
        assert {(-1, 1), (0, 1), (1, 1), (-1, 2), (0, 2), (1, 2)} == strip

    def test_thickness_check(self):
        tri = convex_hull([(0, 0), (2, 0), (0, 2)])
        ok, witness = thickness_ok(tri, HORIZONTAL, 2)
        assert not ok  # the apex row has a single point
        ok2, _ = thickness_ok(block(3, 3), HORIZONTAL, 3)
        assert ok2


class TestBalancedSet:
    def test_diagonal_certificate(self, diagonal):
        w = expansive_witness(diagonal, HORIZONTAL, 1)
        cert = construct_balanced_set(
            diagonal, block(3, 4), HORIZONTAL, witness_absent=not w.found
        )
        assert sorted(cert.set.points) == [(0, 2), (0, 3), (1, 3), (2, 3)]
        assert cert.p == 0 and not cert.nonexpansive_regime
        assert cert.drop == 0 and cert.drop_bound == 0
        assert len(cert.support_section) <= len(cert.antiparallel_section)
        assert cert.half_plane_cut == tuple(sorted(block(3, 4).points))

    def test_checkerboard_certificate(self, checkerboard):
        cert = construct_balanced_set(checkerboard, block(2, 2), HORIZONTAL)
        assert cert.p >= 1
        assert cert.drop <= cert.drop_bound
        # independent thickness re-check matches the recorded witness
        assert all(size >= cert.p for _, size in cert.condition_i)

    def test_non_quasi_regular_rejected(self, checkerboard):
        tri = convex_hull([(0, 0), (2, 0), (0, 2)])
        with pytest.raises(GeometryError):
            construct_balanced_set(checkerboard, tri, HORIZONTAL)

    def test_hypothesis_gate(self, one_defect):
        with pytest.raises(HypothesisNotMet):
            construct_balanced_set(one_defect, block(2, 2), HORIZONTAL)


class TestPhi:
    def test_diagonal_constructed_set(self, diagonal):
        cert = construct_balanced_set(diagonal, block(3, 4), HORIZONTAL, witness_absent=False)
        rep = phi(diagonal, cert.set, HORIZONTAL, cert.p)
        assert rep.case == "complexity_difference"
        assert rep.value == 0
        # the halved-section budget from the constructed certificate
        assert 2 * rep.value <= 2 * ((len(cert.support_section) + 1) // 2) - 2 + 2

    def test_checkerboard_strip(self, checkerboard):
        cert = construct_balanced_set(checkerboard, block(2, 2), HORIZONTAL)
        rep = phi(checkerboard, cert.set, HORIZONTAL, cert.p)
        assert rep.value in (0, 1)

    def test_empty_classes_first_case(self, diagonal):
        rep = phi(diagonal, block(3, 4), HORIZONTAL, 2)
        assert rep.case == "complexity_difference"
        assert rep.value == 1  # P(3,4) - P(3,3)


class TestStripLemma:
    def test_diagonal_pass(self, diagonal):
        cert = construct_balanced_set(diagonal, block(3, 4), HORIZONTAL, witness_absent=False)
        rep = verify_strip_lemma(diagonal, cert.set, HORIZONTAL, cert.p, window=12)
        assert rep.status is StripLemmaStatus.PASS

    def test_checkerboard_pass(self, checkerboard):
        cert = construct_balanced_set(checkerboard, block(2, 2), HORIZONTAL)
        rep = verify_strip_lemma(checkerboard, cert.set, HORIZONTAL, max(cert.p, 1), window=10)
        assert rep.status is StripLemmaStatus.PASS

    def test_window_sample_never_fails(self, ab):
        w = WindowSample(ab, (0, 0), ["ab" * 5] * 10)
        rep = verify_strip_lemma(w, block(2, 2), HORIZONTAL, 1, window=4)
        assert rep.status in (StripLemmaStatus.PASS, StripLemmaStatus.INCONCLUSIVE)
        assert rep.status is not StripLemmaStatus.FAIL

    def test_phi_refuses_lower_bound_data(self, ab):
        w = WindowSample(ab, (0, 0), ["ab" * 5] * 10)
        with pytest.raises(InexactDataError):
            phi(w, block(2, 2), HORIZONTAL, 1)


@pytest.fixture(scope="module")
def ambiguous_rows():
    """An 8-coset configuration whose 2x2 language has a translate class where
    every directional base pattern extends two ways (found by random search,
    then frozen)."""
    table = {(-3, 5): "b", (-3, 6): "a", (-2, 3): "a", (-2, 4): "b",
             (-2, 5): "a", (-1, 2): "b", (-1, 3): "b", (0, 0): "a"}
    return DoublyPeriodic(Alphabet(("a", "b")), ((-3, 4), (-1, 4)), table)


class TestAmbiguousExtensionFixture:
    def test_phi_max_alphabet_branch(self, ambiguous_rows):
        rep = phi(ambiguous_rows, block(2, 2), HORIZONTAL, 2)
        assert rep.case == "max_alphabet_form"
        assert rep.value == 2 and rep.diff == 2

    def test_class_structure(self, ambiguous_rows):
        classes, diff = m_classes(ambiguous_rows, block(2, 2), HORIZONTAL, 2)
        assert diff == 2
        assert [x.alphabet_size for x in classes] == [2]

    def test_strip_lemma_nonvacuous_pass(self, ambiguous_rows):
        rep = verify_strip_lemma(ambiguous_rows, block(2, 2), HORIZONTAL, 2, window=20)
        assert rep.status is StripLemmaStatus.PASS and not rep.vacuous
        assert [o.status for o in rep.outcomes] == ["pass"]
        assert rep.outcomes[0].period == 2

    def test_phi_unbalanced_raises_no_claim(self, ambiguous_rows):
        # at p = 1 the ambiguous class has no p_x within the bound
        with pytest.raises(HypothesisNotMet):
            phi(ambiguous_rows, block(2, 2), HORIZONTAL, 1)


class TestExpansiveWitness:
    @pytest.mark.parametrize("line", [HORIZONTAL, VERTICAL, DIAGONAL, Line(-1, -1, 0)])
    def test_checkerboard_all_directions(self, checkerboard, line):
        rep = expansive_witness(checkerboard, line, 1)
        assert rep.found
        assert rep.point is not None
        assert is_generated(checkerboard, rep.witness, rep.point)

    @pytest.mark.parametrize("line", [DIAGONAL, Line(-1, -1, 0)])
    def test_diagonal_period_direction_has_no_witness(self, diagonal, line):
        rep = expansive_witness(diagonal, line, 1)
        assert not rep.found
        assert rep.sets_examined > 0

    def test_diagonal_horizontal_has_witness(self, diagonal):
        rep = expansive_witness(diagonal, HORIZONTAL, 1)
        assert rep.found

    def test_radius_zero(self, checkerboard):
        rep = expansive_witness(checkerboard, HORIZONTAL, 0)
        assert not rep.found and rep.sets_examined == 0


class TestMClasses:
    def test_diagonal_r34_horizontal_empty(self, diagonal):
        classes, diff = m_classes(diagonal, block(3, 4), HORIZONTAL, 2)
        assert diff == 1
        assert classes == ()  # the full language contains unique-extension patterns

    def test_checkerboard_row_all_qualify(self, checkerboard):
        row = convex_hull([(0, 0), (1, 0)])
        classes, diff = m_classes(checkerboard, row, HORIZONTAL, 1)
        assert diff == complexity(checkerboard, row).count - 1
        assert len(classes) == 1  # empty base extends ambiguously, one class
