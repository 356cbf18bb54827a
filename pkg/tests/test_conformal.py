import pytest
from hypothesis import given, settings
from exceptions import InvalidStructure, TruncationExceeded
from services import algebras
from services.conformal import (
    AlgebraElement,
    bracket,
    check_jacobi,
    check_skew,
    jth_product,
    rescale_generator,
)
from services.algebras import from_table, normalize_virasoro
from services.exactpoly import D, LAM, MU, const, scalar
from tests.strategies import polys


def builtin_algebras():
    yield algebras.virasoro()
    yield algebras.current(algebras.sl2(), name="Cur(sl2)")
    yield algebras.vir_semidirect_current(1, algebras.sl2())
    yield algebras.vir_semidirect_current(0, algebras.abelian(["x", "y"]))
    for p in (1, 2, "1/2"):
        yield algebras.block(scalar(p), 8)
    yield algebras.map_virasoro(algebras.truncated_polynomial_algebra(9), truncation=8)
    yield algebras.graded_weight_line(scalar(3, 1))


@pytest.mark.parametrize("A", list(builtin_algebras()), ids=lambda A: A.name)
def test_builtins_are_lie_conformal(A):
    skew, jacobi = check_skew(A), check_jacobi(A)
    assert skew.passed, skew.failed
    assert jacobi.passed, jacobi.failed


def test_block_skips_pairs_beyond_truncation():
    report = check_jacobi(algebras.block(1, 4))
    assert report.passed
    assert report.skipped
    assert all(item.status == "skipped" for item in report.items)


def test_nonabelian_current_needs_a_equal_one():
    report = check_jacobi(algebras.vir_semidirect_current(0, algebras.two_dim_nonabelian()))
    assert not report.passed
    assert all(item.witnesses for item in report.failed)
    assert check_jacobi(algebras.vir_semidirect_current(1, algebras.two_dim_nonabelian())).passed


def test_virasoro_brackets():
    A = algebras.virasoro()
    L = AlgebraElement.of(0)
    assert bracket(A, L, L) == {0: D + 2 * LAM}
    assert bracket(A, L.times(D), L) == {0: -LAM * (D + 2 * LAM)}
    assert jth_product(A, L, L, 0).coords == {0: D}
    assert jth_product(A, L, L, 1).coords == {0: const(2)}
    assert jth_product(A, L, L, 5).coords == {}
    with pytest.raises(ValueError):
        jth_product(A, L, L, -1)


def test_block_bracket():
    A = algebras.block(1, 8)
    assert bracket(A, AlgebraElement.of(1), AlgebraElement.of(2)) == {3: 2 * D + 5 * LAM}
    with pytest.raises(TruncationExceeded):
        bracket(A, AlgebraElement.of(5), AlgebraElement.of(4))


def test_broken_skew_symmetry_is_reported():
    A = from_table("bad", ("x", "y"), {(0, 1): {1: D}, (1, 0): {1: D}})
    report = check_skew(A)
    assert [item.check_id for item in report.failed] == ["skew[x,y]"]
    assert report.failed[0].witnesses == ["(2*d)*y"]


def test_current_brackets_are_lambda_free():
    A = algebras.current(algebras.sl2())
    for vec in A.table.values():
        for poly in vec.values():
            assert all(monom[1] == 0 and monom[0] == 0 for monom in poly.keys())


def test_map_virasoro_two_generators():
    A = algebras.map_virasoro(algebras.truncated_polynomial_algebra(2))
    assert A.gens == ("L[1]", "L[T]")
    assert A.entry(0, 1) == {1: D + 2 * LAM}
    assert A.entry(1, 1) == {}


def test_block_normalizes_to_virasoro():
    A = normalize_virasoro(algebras.block(2, 3))
    assert A.pair_poly(0, 0) == D + 2 * LAM
    assert check_jacobi(A).passed


def test_rescaling_keeps_the_axioms():
    A = rescale_generator(algebras.vir_semidirect_current(1, algebras.sl2()), "e", 3)
    assert check_skew(A).passed
    assert check_jacobi(A).passed


@pytest.mark.parametrize(
    "make",
    [
        lambda: algebras.block(0, 3),
        lambda: algebras.truncated_polynomial_algebra(0),
        lambda: algebras.current(algebras.LieStructure(("x", "y"), {("x", "y"): {"y": scalar(1)}})),
        lambda: from_table("bad", ("x", "x"), {}),
        lambda: from_table("bad", ("x",), {(0, 0): {0: MU}}),
    ],
)
def test_invalid_structures(make):
    with pytest.raises(InvalidStructure):
        make()


@given(polys(variables=1), polys(variables=1))
@settings(max_examples=30, deadline=None)
def test_sesquilinearity(f, h):
    A = algebras.vir_semidirect_current(1, algebras.sl2())
    x, y = AlgebraElement.of(0, f), AlgebraElement.of(2, h)
    base = bracket(A, x, y)
    assert bracket(A, x.times(D), y) == {k: -LAM * p for k, p in base.items()}
    assert bracket(A, x, y.times(D)) == {k: (D + LAM) * p for k, p in base.items()}
