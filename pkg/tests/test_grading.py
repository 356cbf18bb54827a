import pytest
from exceptions import HypothesisViolated, InvalidParams, MalformedBracket, NotVirasoroAtZero
from services import algebras
from services.algebras import VIRASORO_POLY, from_table
from services.exactpoly import D, LAM, const, re_part, scalar
from services.polyparse import parse_scalar
from services.grading import (
    SCAN_VALUE_BUDGET,
    a1_grid,
    check_constant_terms,
    jacobi_allows_vanishing,
    parse_grid,
    profile_from_table,
    scan_a1,
    split_weight_classes,
)

V_T9 = algebras.map_virasoro(algebras.truncated_polynomial_algebra(9), truncation=8)


def graded(table, grades=(0, 1, 2), truncation=None):
    gens = tuple(f"L{g}" for g in grades)
    return from_table("T", gens, {(0, 0): {0: VIRASORO_POLY}, **table}, tuple(grades), truncation, "L0")


class TestWeightClasses:
    @pytest.mark.parametrize("A", [algebras.block(1, 6), V_T9], ids=["B(1)", "V(T^9)"])
    def test_everything_in_one_class(self, A):
        I0, I1, report = split_weight_classes(A)
        assert I0 == list(range(len(A.gens)))
        assert I1 == []
        assert report.passed

    def test_decoupled_generator(self):
        A = graded({}, grades=(0, 1))
        I0, I1, report = split_weight_classes(A)
        assert (I0, I1) == ([0], [1])
        assert report.passed

    def test_bracket_across_classes_fails(self):
        A = graded(
            {(0, 1): {1: D + LAM}, (1, 0): {1: LAM}, (1, 2): {3: const(1)}, (2, 1): {3: const(-1)}},
            grades=(0, 1, 2, 3),
        )
        _, _, report = split_weight_classes(A)
        assert not report.passed
        assert "decoupled[L1,L2]" in [item.check_id for item in report.failed]

    def test_needs_virasoro_at_zero(self):
        A = from_table("T", ("L0",), {(0, 0): {0: D + 3 * LAM}}, (0,), None, "L0")
        with pytest.raises(NotVirasoroAtZero):
            split_weight_classes(A)

    def test_needs_a_grading(self):
        with pytest.raises(InvalidParams):
            split_weight_classes(algebras.virasoro())


class TestConstantTerms:
    @pytest.mark.parametrize("A", [algebras.block(1, 6), algebras.block(scalar("1/2"), 5), V_T9])
    def test_builtins(self, A):
        report = check_constant_terms(A)
        assert report.passed
        assert report.evaluated == len(A.gens)

    def test_mismatch(self):
        A = graded(
            {
                (0, 1): {1: D + LAM + 1},
                (1, 0): {1: LAM - 1},
                (0, 2): {2: D + LAM + 3},
                (1, 1): {2: const(1)},
            }
        )
        report = check_constant_terms(A)
        assert [item.check_id for item in report.failed] == ["b[2]"]
        assert report.failed[0].witnesses == ["3", "2"]

    def test_hypothesis_violations(self):
        with pytest.raises(HypothesisViolated):
            check_constant_terms(graded({(0, 1): {1: D + LAM}, (1, 0): {1: LAM}}))
        with pytest.raises(HypothesisViolated):
            check_constant_terms(graded({}, grades=(0,)))


class TestProfile:
    @pytest.mark.parametrize("p", [1, 2, "1/2"])
    def test_block(self, p):
        p = scalar(p)
        profile = profile_from_table(algebras.block(p, 6))
        assert profile.report.passed
        assert profile.a_seq == {i: (scalar(i) + p * 2) / p for i in range(7)}
        assert set(profile.b_seq.values()) == {scalar(0)}
        assert set(profile.deg_choices.values()) == {1}

    def test_map_virasoro(self):
        profile = profile_from_table(V_T9)
        assert profile.report.passed
        assert set(profile.a_seq.values()) == {scalar(2)}
        data = profile.as_data()
        assert data["a"]["3"] == "2"
        assert data["deg"]["1,2"] == 1

    def test_zero_brackets(self):
        profile = profile_from_table(graded({}, grades=(0, 1)))
        assert profile.deg_choices[(1, 1)] == "zero-bracket"
        assert profile.a_seq == {0: scalar(2)}

    def test_malformed(self):
        with pytest.raises(MalformedBracket):
            profile_from_table(graded({(0, 1): {1: D**2}}, grades=(0, 1)))


ADMISSIBLE = ["1", "2", "3/2", "5/3", "7/4", "9/5", "11/6", "4/3", "8/5"]
REJECTED = ["5/4", "6/5", "7/5", "7/6"]


class TestScan:
    def test_grid(self):
        grid = a1_grid(6, "1", "2")
        assert len(grid) == 13
        assert sorted(grid, key=re_part) == grid
        assert {scalar(x) for x in ADMISSIBLE + REJECTED} == set(grid)

    @pytest.mark.parametrize("a1", ADMISSIBLE)
    def test_admissible(self, a1):
        result = scan_a1(a1, 12)
        assert result.admissible, result.reason
        assert len(result.witness_sequence) == 12
        assert len(set(result.witness_sequence)) <= result.value_budget
        assert result.degree_choices[0] % 2 == 1

    @pytest.mark.parametrize("a1", REJECTED)
    def test_rejected(self, a1):
        result = scan_a1(a1, 12)
        assert not result.admissible
        assert result.witness_sequence is None
        assert result.reason

    @pytest.mark.parametrize("a1", ["3/2", "4/3"])
    def test_monotone_in_horizon(self, a1):
        assert all(scan_a1(a1, n).admissible for n in (2, 5, 8))

    def test_non_real(self):
        result = scan_a1("1+i")
        assert not result.admissible
        assert result.rejection_depth == 1

    def test_bad_horizon(self):
        with pytest.raises(InvalidParams):
            scan_a1("2", 0)

    def test_rejection_reasons_name_the_jacobi_instance(self):
        for a1 in REJECTED:
            reason = scan_a1(a1, 12).reason
            assert "must vanish" in reason
            assert "Jacobi identity on (L1, L(i-1), L(j0))" in reason

    def test_two_minus_two_sevenths(self):
        result = scan_a1("12/7", 12)
        assert result.admissible, result.reason
        assert result.value_budget == SCAN_VALUE_BUDGET
        assert not scan_a1("12/7", 12, value_budget=7).admissible

    def test_short_horizons_admit_the_whole_grid(self):
        assert all(scan_a1(a1, 4).admissible for a1 in a1_grid(6, "1", "2"))
        assert [scan_a1(a1, 12).admissible for a1 in ("5/4", "7/6")] == [False, False]

    @pytest.mark.parametrize(
        "a1,allowed",
        [("3/2", [2]), ("11/6", [6]), ("1", [1]), ("5/4", []), ("12/7", []), ("2", []), ("4/3", [])],
    )
    def test_jacobi_allows_vanishing(self, a1, allowed):
        a1 = parse_scalar(a1)
        assert [j0 for j0 in range(1, 13) if jacobi_allows_vanishing(a1, j0)] == allowed

    def test_parse_grid(self):
        assert parse_grid("1:2:2") == [scalar(1), scalar("3/2"), scalar(2)]
        assert parse_grid("5/4,2") == [scalar("5/4"), scalar(2)]
        with pytest.raises(InvalidParams):
            parse_grid("1:2:3:4")
