import pytest
from hypothesis import given, settings
from exceptions import InvalidStructure, ParseError
from services.exactpoly import D, ZERO, const, render
from services.smith import (
    PolyMatrix,
    determinant,
    divide,
    is_unit,
    parse_matrix,
    smith_normal_form,
    torsion_split,
)
from tests.strategies import poly_matrices


def assert_smith_form(M: PolyMatrix):
    U, S, V = smith_normal_form(M)
    assert (U @ M) @ V == S
    assert is_unit(determinant(U))
    assert is_unit(determinant(V))
    for i in range(S.nrows):
        for j in range(S.ncols):
            if i != j:
                assert not S.rows[i][j]
    diagonal = S.diagonal()
    for first, second in zip(diagonal, diagonal[1:]):
        if not first:
            assert not second
        else:
            assert not divide(second, first)[1]
    return U, S, V


def test_jordan_block():
    _, S, _ = assert_smith_form(parse_matrix("[[d, 1], [0, d]]"))
    assert S.render() == [["1", "0"], ["0", "d^2"]]


def test_coprime_diagonal_merges():
    _, S, _ = assert_smith_form(parse_matrix("[[d, 0], [0, d + 1]]"))
    assert [render(p) for p in S.diagonal()] == ["1", "d^2 + d"]


def test_invariants_are_monic():
    _, S, _ = assert_smith_form(parse_matrix("[[2*d + 4]]"))
    assert render(S.rows[0][0]) == "d + 2"


def test_rectangular_and_zero():
    assert_smith_form(parse_matrix("[[d, d^2, 1 + d]]"))
    _, S, _ = assert_smith_form(PolyMatrix.of([[ZERO, ZERO], [ZERO, ZERO]]))
    assert S.diagonal() == [ZERO, ZERO]


def test_torsion_split():
    assert torsion_split(parse_matrix("[[d, 1], [0, d]]")) == (0, [D**2])
    assert torsion_split(parse_matrix("[[d - 1, 0], [0, 0], [0, 0]]")) == (2, [D - 1])
    assert torsion_split(parse_matrix("[[1, 0], [0, 1]]")) == (0, [])


def test_rejects_bivariate_entries():
    with pytest.raises(InvalidStructure):
        parse_matrix("[[d*l]]")


def test_rejects_ragged_rows():
    with pytest.raises(InvalidStructure):
        parse_matrix("[[d, 1], [0]]")


def test_rejects_non_lists():
    with pytest.raises(ParseError):
        parse_matrix("d")


def test_determinant():
    M = parse_matrix("[[d, 1], [2, d]]")
    assert determinant(M) == D**2 - const(2)


@given(poly_matrices())
@settings(max_examples=100, deadline=None)
def test_random_matrices(M):
    assert_smith_form(M)


def test_presentation_examples():
    assert torsion_split(parse_matrix("[[1, 0, 0], [0, 1, 0], [0, 0, 0]]")) == (1, [])
    assert torsion_split(parse_matrix("[[d + 1]]")) == (0, [D + 1])
    _, S, _ = assert_smith_form(parse_matrix("[[d, 0], [0, d^2]]"))
    assert S.diagonal() == [D, D**2]
