"""Local-operator action and the exact transformation identities."""

from __future__ import annotations

import random

import pytest

from sloccrank.coeffmatrix import QubitPermutation, coefficient_matrix, enumerate_sigmas
from sloccrank.rank import ShapeError, exact_det, exact_rank
from sloccrank.scalar import Scalar
from sloccrank.slocc import (
    LocalOperator,
    apply_local,
    kron_chain,
    load_operators,
    operators_from_json,
    operators_to_json,
    random_invertible_ops,
    random_local_ops,
    save_operators,
    verify_det_relation,
    verify_matrix_equation,
)
from sloccrank.states import PureState, ghz_state, ladder_state

from conftest import random_singular_operator, random_state

X = LocalOperator(((0, 1), (1, 0)))
P0 = LocalOperator(((1, 0), (0, 0)))


def identity_ops(n):
    return [LocalOperator.identity() for _ in range(n)]


class TestLocalOperator:
    def test_shape_validated(self):
        with pytest.raises(ValueError):
            LocalOperator(((1, 0, 0), (0, 1, 0)))

    def test_det_and_invertibility(self):
        assert X.det() == Scalar(-1)
        assert X.is_invertible
        assert P0.det() == Scalar(0)
        assert not P0.is_invertible


class TestApplyLocal:
    def test_identity_acts_trivially(self):
        state = ladder_state(5, 2)
        assert apply_local(state, identity_ops(5)) == state

    def test_bit_flip_on_first_qubit(self):
        result = apply_local(ghz_state(3), [X] + identity_ops(2))
        assert set(result.amps) == {4, 3}
        assert result.amps[4] == Scalar(1)
        assert result.amps[3] == Scalar(1)

    def test_projector_kills_branch(self):
        result = apply_local(ghz_state(3), [P0] + identity_ops(2))
        assert dict(result.amps) == {0: Scalar(1)}

    def test_can_annihilate_entirely(self):
        raising = LocalOperator(((0, 1), (0, 0)))
        result = apply_local(PureState(2, {0: 1}), [raising, LocalOperator.identity()])
        assert result.is_zero
        assert exact_rank(coefficient_matrix(result)).rank == 0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            apply_local(ghz_state(3), identity_ops(2))


class TestKron:
    def test_identity_pair(self):
        grid = kron_chain(identity_ops(2))
        for i in range(4):
            for j in range(4):
                assert grid[i][j] == (Scalar(1) if i == j else Scalar(0))

    def test_projector_with_flip(self):
        grid = kron_chain([P0, X])
        nonzero = {(i, j) for i in range(4) for j in range(4) if grid[i][j]}
        assert nonzero == {(0, 1), (1, 0)}

    def test_single_operator(self):
        assert kron_chain([X]) == X.entries

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            kron_chain([])


class TestMatrixEquation:
    def test_identity_ops_any_sigma(self):
        state = ladder_state(4, 2)
        for sigma in enumerate_sigmas(4):
            assert verify_matrix_equation(state, identity_ops(4), sigma)

    def test_random_singular_ops_default_split(self):
        rng = random.Random(101)
        for _ in range(10):
            state = random_state(rng, 4)
            ops = random_local_ops(4, rng.randrange(2**32))
            ops[rng.randrange(4)] = random_singular_operator(rng)
            assert verify_matrix_equation(state, ops)

    def test_random_invertible_ops_with_swap(self):
        rng = random.Random(103)
        sigma = QubitPermutation(((1, 4),))
        for _ in range(10):
            state = random_state(rng, 5)
            ops = random_invertible_ops(5, rng.randrange(2**32))
            assert verify_matrix_equation(state, ops, sigma)

    def test_every_enumerated_sigma_on_small_states(self):
        rng = random.Random(107)
        for n in (2, 3, 4):
            for _ in range(3):
                state = random_state(rng, n)
                ops = random_local_ops(n, rng.randrange(2**32))
                for sigma in enumerate_sigmas(n):
                    assert verify_matrix_equation(state, ops, sigma)

    def test_single_qubit_edge_case(self):
        state = PureState(1, {0: 1, 1: Scalar(-2)})
        ops = [LocalOperator(((1, 2), (3, 4)))]
        assert verify_matrix_equation(state, ops)


class TestDetRelation:
    def test_identity_ops_keep_det(self):
        state = ladder_state(4, 2)
        assert verify_det_relation(state, identity_ops(4))

    def test_scaling_exponent(self):
        # doubling one qubit's operator scales the det by det(2*Id)^2 = 16
        state = ladder_state(4, 2)
        double = LocalOperator(((2, 0), (0, 2)))
        ops = [double] + identity_ops(3)
        before = exact_det(coefficient_matrix(state))
        after = exact_det(coefficient_matrix(apply_local(state, ops)))
        assert after == before * Scalar(16)
        assert verify_det_relation(state, ops)

    def test_random_ops_six_qubits(self):
        rng = random.Random(109)
        state = ladder_state(6, 2)
        for _ in range(5):
            ops = random_local_ops(6, rng.randrange(2**32))
            assert verify_det_relation(state, ops)

    def test_odd_n_rejected(self):
        with pytest.raises(ShapeError):
            verify_det_relation(ghz_state(5), identity_ops(5))


class TestRandomOperators:
    def test_reproducible(self):
        assert random_invertible_ops(3, 42) == random_invertible_ops(3, 42)
        assert random_local_ops(4, 7) == random_local_ops(4, 7)

    def test_all_invertible(self):
        for seed in range(10):
            for op in random_invertible_ops(4, seed):
                assert op.is_invertible

    def test_seeds_differ(self):
        assert random_invertible_ops(3, 42) != random_invertible_ops(3, 43)

    def test_pool_bounds(self):
        with pytest.raises(ValueError):
            random_invertible_ops(3, 0, pool=2)
        with pytest.raises(ValueError):
            random_local_ops(3, 0, pool=0)


class TestRankUnderOperators:
    def test_invariance_under_invertible_ops(self):
        rng = random.Random(113)
        for trial in range(30):
            n = 3 + trial % 4
            state = random_state(rng, n)
            sigmas = enumerate_sigmas(n)
            before = [exact_rank(coefficient_matrix(state, s)).rank for s in sigmas]
            transformed = apply_local(state, random_invertible_ops(n, rng.randrange(2**32)))
            after = [exact_rank(coefficient_matrix(transformed, s)).rank for s in sigmas]
            assert before == after

    def test_monotone_under_arbitrary_ops(self):
        rng = random.Random(127)
        for trial in range(30):
            n = 3 + trial % 4
            state = random_state(rng, n)
            ops = random_local_ops(n, rng.randrange(2**32))
            if trial % 3 == 0:
                ops[rng.randrange(n)] = random_singular_operator(rng)
            sigmas = enumerate_sigmas(n)
            transformed = apply_local(state, ops)
            for sigma in sigmas:
                before = exact_rank(coefficient_matrix(state, sigma)).rank
                after = exact_rank(coefficient_matrix(transformed, sigma)).rank
                assert after <= before


class TestOperatorFiles:
    def test_json_round_trip(self):
        ops = random_invertible_ops(3, 5)
        assert operators_from_json(operators_to_json(ops)) == ops

    def test_file_round_trip(self, tmp_path):
        ops = random_local_ops(4, 9)
        path = tmp_path / "ops.json"
        save_operators(ops, path)
        assert load_operators(path) == ops

    @pytest.mark.parametrize(
        "payload",
        [
            {},
            {"ops": []},
            {"ops": [[["1", "0"], ["0"]]]},
            {"ops": [[["1", "0"], ["0", "bad+"]]]},
            {"ops": [[[1, 0], [0, 1]]]},
            {"ops": "nope"},
        ],
    )
    def test_malformed_payloads(self, payload):
        with pytest.raises(ValueError):
            operators_from_json(payload)
