import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from exceptions import NotASolution
from services.exactpoly import D, LAM, ONE, ZERO, is_scalar_multiple, scalar, sorted_terms
from services.funceq import (
    SOLUTION_TABLE,
    FuncEqInstance,
    degree_offset,
    homogeneous_residual,
    intertwiner_residual,
    sample_points,
    solve_homogeneous,
    solve_intertwiner,
    solve_swapped_intertwiner,
    swapped_residual,
    unknown_monomials,
    verify_solution_table,
)
from services.linsolve import rank
from tests.strategies import scalars


def in_span(basis, f) -> bool:
    monomials = sorted({m for p in (*basis, f) for m in p.keys()})
    zero = scalar(0)
    rows = [[p.get(m, zero) for p in basis] for m in monomials]
    extended = [row + [f.get(m, zero)] for row, m in zip(rows, monomials)]
    return rank(rows, len(basis)) == rank(extended, len(basis) + 1)


def test_monomial_order():
    assert unknown_monomials(1) == [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 0)]
    assert unknown_monomials(5, 2) == [(2, 0, 0, 0), (1, 1, 0, 0), (0, 2, 0, 0)]


def test_adjoint_intertwiner():
    inst = FuncEqInstance.of(a=2, b=0, delta_i="3/2", c_i=1, delta_j="3/2", c_j=1, degree_bound=2)
    f = D + LAM * scalar("3/2") + 1
    assert not intertwiner_residual(inst, f)
    solution = solve_intertwiner(inst)
    assert in_span(solution.basis, f)
    assert all(not intertwiner_residual(inst, p) for p in solution.basis)
    offset = degree_offset(f, 2, "3/2", "3/2")
    assert offset.holds
    assert (offset.total_degree, offset.lambda_degree) == (1, 1)


def test_constant_solution_for_equal_weights():
    inst = FuncEqInstance.of(a=1, delta_i="2/5", delta_j="2/5", degree_bound=0)
    assert solve_intertwiner(inst).basis == (ONE,)


@given(scalars(), scalars(), scalars(), scalars(), scalars(), scalars())
@settings(max_examples=20, deadline=None)
def test_constant_mismatch_has_no_solution(a, b, di, ci, dj, cj):
    assume(b != ci - cj)
    inst = FuncEqInstance(a, b, di, ci, dj, cj, degree_bound=6)
    assert solve_intertwiner(inst).dimension == 0


@pytest.mark.parametrize("di", ["1", "-3/4", "2+i"])
def test_homogeneous_rows(di):
    di = scalar(di)
    a = scalar(4)
    found = solve_homogeneous(scalar(1), di, di + 2, 2)
    assert found.dimension == 1
    assert is_scalar_multiple(found.basis[0], LAM * (D - LAM * di))
    found = solve_homogeneous(a, di, di + 2 - a, 1)
    assert found.dimension == 1
    assert is_scalar_multiple(found.basis[0], D - LAM * (di / (1 - a)))


def test_cubic_row_at_a_equal_one():
    f = LAM * (D**2 + D * LAM * 3 + LAM**2 * 2)
    assert solve_homogeneous(scalar(1), scalar(-1), scalar(2), 3).dimension == 0
    found = solve_homogeneous(scalar(1), scalar(-2), scalar(1), 3)
    assert found.dimension == 1
    assert is_scalar_multiple(found.basis[0], f)
    offset = degree_offset(f, 1, -2, 1)
    assert offset.holds
    assert offset.lambda_degree == 3


def test_basis_is_normalized():
    found = solve_homogeneous(scalar(3), scalar(1), scalar(1), 2)
    lead_monomial, lead = sorted_terms(found.basis[0])[0]
    assert lead_monomial == (2, 0, 0, 0)
    assert lead == scalar(1)


def test_degree_offset_rejects_non_solutions():
    with pytest.raises(NotASolution):
        degree_offset(ZERO, 1, 1, 1)
    with pytest.raises(NotASolution):
        degree_offset(D, 1, 1, 1)


def test_negative_degree_bound():
    with pytest.raises(ValueError):
        FuncEqInstance.of(degree_bound=-1)


class TestSwappedOrientation:
    def test_constants_with_matching_parameters(self):
        inst = FuncEqInstance.of(a=1, delta_i=3, c_i="1/2", delta_j=3, c_j="1/2", degree_bound=0)
        assert not swapped_residual(inst, ONE)
        assert solve_swapped_intertwiner(inst).basis == (ONE,)

    def test_mismatched_constants(self):
        inst = FuncEqInstance.of(a=1, delta_i=3, c_i=0, delta_j=3, c_j=2, degree_bound=0)
        assert solve_swapped_intertwiner(inst).dimension == 0

    @given(scalars(), scalars(), scalars(), st.integers(min_value=0, max_value=3))
    @settings(max_examples=15, deadline=None)
    def test_soundness(self, a, di, dj, bound):
        inst = FuncEqInstance(a, scalar(0), di, scalar(0), dj, scalar(0), bound)
        for f in solve_swapped_intertwiner(inst).basis:
            assert not swapped_residual(inst, f)


class TestSolutionTable:
    def test_rows(self):
        assert [row.row_id for row in SOLUTION_TABLE] == ["1a", "1b", "1c", "1d", "2a", "2b", "2c", "2d"]

    def test_stated_solutions_solve(self):
        samples = [scalar(s) for s in ("3", "-1", "1/2", "5/2", "1+i")]
        for row in SOLUTION_TABLE:
            for point in sample_points(row, samples):
                a, di, dj = row.params(*point)
                assert not homogeneous_residual(a, di, dj, row.solution(*point)), row.row_id

    def test_sample_points_skip_inadmissible_values(self):
        points = sample_points(SOLUTION_TABLE[0], [scalar(1), scalar(2), scalar(0)])
        assert points == [(scalar(0), scalar(1))]
        assert sample_points(SOLUTION_TABLE[3], [scalar(1)]) == [()]

    def test_example_row_1c(self):
        row = SOLUTION_TABLE[2]
        f = row.solution(scalar(3))
        assert f == D**2 + D * LAM * scalar("3/2") + LAM**2 * scalar("1/2")
        assert solve_homogeneous(*row.params(scalar(3)), 2).dimension == 1

    def test_perturbed_row_2b(self):
        assert solve_homogeneous(scalar(1), scalar(2), scalar(2) + scalar("3/2"), 1).dimension == 0

    def test_verification_passes(self):
        result = verify_solution_table(["3", "1/2", "-2/3"], ["1/2", "i"])
        assert result.report.passed, result.report.failed
        assert {entry["row"] for entry in result.rows} == {row.row_id for row in SOLUTION_TABLE}
        assert all(
            entry["actual_dimension"] == entry["expected_dimension"] for entry in result.rows
        )
