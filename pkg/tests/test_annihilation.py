import pytest
from exceptions import InvalidParams, TruncationExceeded
from services import algebras
from services.annihilation import (
    DERIVATION,
    AnnihAlgebra,
    annih_bracket,
    check_annih_lie,
    check_correspondence,
    check_weight_bound,
    module_action_n,
    weight_ladder_check,
    weight_spaces,
)
from services.conformal import ConformalAlgebra
from services.exactpoly import D, LAM, ZERO, const, scalar
from services.linsolve import gaussian_roots
from services.modules import ConformalModule, check_module, direct_sum, rank_one_vir, trivial_module
from services.polyparse import parse_scalar

VIR = algebras.virasoro()
I = parse_scalar("i")


class TestBrackets:
    @pytest.mark.parametrize("m,n", [(0, 1), (1, 1), (2, 1), (3, 0), (2, 3)])
    def test_witt_relations(self, m, n):
        X = AnnihAlgebra(VIR, depth=6)
        expected = {(0, m + n - 1): scalar(m - n)} if m != n and m + n >= 1 else {}
        assert annih_bracket(X, (0, m), (0, n)) == expected

    def test_witt_relations_on_every_pair(self):
        X = AnnihAlgebra(VIR, depth=6)
        for m in range(7):
            for n in range(7):
                if m + n - 1 > X.depth:
                    with pytest.raises(TruncationExceeded):
                        annih_bracket(X, (0, m), (0, n))
                    continue
                expected = {(0, m + n - 1): scalar(m - n)} if m != n else {}
                assert annih_bracket(X, (0, m), (0, n)) == expected, (m, n)

    def test_map_virasoro(self):
        A = algebras.map_virasoro(algebras.truncated_polynomial_algebra(3))
        X = AnnihAlgebra(A, depth=4)
        assert annih_bracket(X, (1, 1), (1, 2)) == {(2, 2): scalar(-1)}

    def test_depth_is_enforced(self):
        X = AnnihAlgebra(VIR, depth=3)
        with pytest.raises(TruncationExceeded):
            annih_bracket(X, (0, 3), (0, 2))
        with pytest.raises(TruncationExceeded):
            annih_bracket(X, (0, 4), (0, 0))

    def test_derivation(self):
        X = AnnihAlgebra(VIR, depth=4, extended=True)
        assert annih_bracket(X, DERIVATION, (0, 3)) == {(0, 2): scalar(-3)}
        assert annih_bracket(X, (0, 3), DERIVATION) == {(0, 2): scalar(3)}
        assert annih_bracket(X, DERIVATION, (0, 0)) == {}
        with pytest.raises(InvalidParams):
            annih_bracket(AnnihAlgebra(VIR, depth=4), DERIVATION, (0, 1))


class TestLieProperty:
    @pytest.mark.parametrize(
        "A,depth,extended",
        [
            (VIR, 6, False),
            (VIR, 4, True),
            (algebras.block(1, 6), 5, False),
            (algebras.vir_semidirect_current(1, algebras.sl2()), 3, True),
        ],
    )
    def test_passes(self, A, depth, extended):
        report = check_annih_lie(AnnihAlgebra(A, depth, extended))
        assert report.passed, report.failed
        assert report.evaluated > 0

    def test_out_of_depth_triples_are_skipped(self):
        report = check_annih_lie(AnnihAlgebra(VIR, 3))
        assert report.skipped

    def test_corrupted_table_fails(self):
        corrupted = ConformalAlgebra(name="Vir'", gens=("L",), table={(0, 0): {0: D + 3 * LAM}})
        report = check_annih_lie(AnnihAlgebra(corrupted, 4))
        assert not report.passed
        assert all(item.witnesses for item in report.failed)

    def test_diagonal_cells_are_checked(self):
        report = check_annih_lie(AnnihAlgebra(VIR, 2))
        assert "antisym[L_(2),L_(2)]" in [item.check_id for item in report.skipped]
        constant = ConformalAlgebra(name="C", gens=("L",), table={(0, 0): {0: const(1)}})
        report = check_annih_lie(AnnihAlgebra(constant, 2))
        failed = [item.check_id for item in report.failed]
        assert "antisym[L_(0),L_(0)]" in failed


class TestModuleSide:
    def test_rank_one_action(self):
        M = rank_one_vir(2, 3)
        v = M.basis_vector(0)
        assert module_action_n(M, "L", 1, v) == [const(2)]
        assert module_action_n(M, "L", 0, v) == [D + 3]
        assert module_action_n(M, "L", 3, v) == [ZERO]

    @pytest.mark.parametrize(
        "M", [rank_one_vir(2, 3), direct_sum(rank_one_vir(1, 0), rank_one_vir("1/2", "i"))], ids=lambda M: M.name
    )
    def test_correspondence(self, M):
        assert check_correspondence(VIR, M).passed

    @pytest.mark.parametrize(
        "a,b,degree", [("1/2", 3, 4), (2, 0, 5), (1, 3, 5), ("1/2", -1, 5)]
    )
    def test_rank_one_weights(self, a, b, degree):
        spaces = weight_spaces(rank_one_vir(a, b), degree)
        assert [w.weight for w in spaces] == [scalar(k) + parse_scalar(a) for k in range(degree + 1)]
        for k, wr in enumerate(spaces):
            assert wr.dimension == 1
            assert wr.basis[0] == [(D + b) ** k]

    def test_gaussian_weights(self):
        M = ConformalModule(name="rotation", basis=("v1", "v2"), actions={"L": [[D, -LAM], [LAM, D]]})
        assert check_module(VIR, M).passed
        spaces = weight_spaces(M, 2)
        assert [w.weight for w in spaces] == [scalar(e) + s * I for e in range(3) for s in (-1, 1)]
        for wr in spaces:
            assert wr.dimension == 1
            u = wr.basis[0]
            assert module_action_n(M, "L", 1, u) == [p.mul_ground(wr.weight) for p in u]
        assert weight_ladder_check(M, spaces).passed

    @pytest.mark.parametrize(
        "coeffs,roots",
        [
            ([1, 0, 1], ["-i", "i"]),
            ([1, 0, -2], []),
            ([1, "-1-i", "i"], ["i", "1"]),
            ([2, -1], ["1/2"]),
        ],
    )
    def test_gaussian_roots(self, coeffs, roots):
        assert gaussian_roots([parse_scalar(c) for c in coeffs]) == [parse_scalar(r) for r in roots]

    def test_trivial_module_has_one_weight(self):
        spaces = weight_spaces(trivial_module(VIR), 2)
        assert len(spaces) == 1
        assert spaces[0].weight == scalar(0)
        assert spaces[0].dimension == 3

    def test_direct_sum_saturates_the_bound(self):
        M = direct_sum(rank_one_vir(2, 1), rank_one_vir(2, 1))
        spaces = weight_spaces(M, 3)
        assert [w.dimension for w in spaces] == [2, 2, 2, 2]
        assert check_weight_bound(M, spaces).passed
        assert weight_ladder_check(M, spaces).passed

    def test_bound_fails_on_trivial_module(self):
        M = trivial_module(VIR)
        assert not check_weight_bound(M, weight_spaces(M, 2)).passed

    def test_ladder(self):
        M = rank_one_vir(3, -2)
        report = weight_ladder_check(M, weight_spaces(M, 3), max_index=3)
        assert report.passed
        assert report.evaluated == 4 * 4
