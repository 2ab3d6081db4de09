"""Bipartition enumeration, qubit relabeling, and matrix construction."""

from __future__ import annotations

import random
from itertools import combinations
from math import comb

import numpy as np
import pytest

from sloccrank.coeffmatrix import (
    BitSplit,
    IDENTITY,
    QubitPermutation,
    coefficient_matrix,
    enumerate_sigmas,
    permute_state,
    split_for,
    split_matrix,
)
from sloccrank.rank import exact_rank, to_complex_array
from sloccrank.scalar import Scalar
from sloccrank.states import PureState, basis_state, dicke_state, family_state, ghz_state

from conftest import random_state


class TestQubitPermutation:
    def test_pairs_are_normalized_and_sorted(self):
        sigma = QubitPermutation(((4, 1), (2, 5)))
        assert sigma.transpositions == ((1, 4), (2, 5))

    def test_identity(self):
        assert IDENTITY.is_identity
        assert IDENTITY.to_text() == ""
        assert QubitPermutation.from_text("") == IDENTITY

    def test_image(self):
        sigma = QubitPermutation(((1, 4),))
        assert sigma.image(1) == 4
        assert sigma.image(4) == 1
        assert sigma.image(2) == 2

    def test_text_round_trip(self):
        sigma = QubitPermutation(((1, 4), (2, 5)))
        assert QubitPermutation.from_text(sigma.to_text()) == sigma
        assert QubitPermutation.from_text("1:4,2:5") == sigma

    @pytest.mark.parametrize("text", ["1", "1:", "x:2", "1:2,1:3"])
    def test_bad_text(self, text):
        with pytest.raises(ValueError):
            QubitPermutation.from_text(text)

    def test_overlapping_labels_rejected(self):
        with pytest.raises(ValueError):
            QubitPermutation(((1, 2), (2, 3)))
        with pytest.raises(ValueError):
            QubitPermutation(((2, 2),))


class TestEnumeration:
    def test_counts_match_binomials(self):
        for n in range(2, 11):
            expected = comb(n, n // 2) // (2 if n % 2 == 0 else 1)
            assert len(enumerate_sigmas(n)) == expected

    def test_small_listings(self):
        assert [s.to_text() for s in enumerate_sigmas(3)] == ["", "1:2", "1:3"]
        assert [s.to_text() for s in enumerate_sigmas(4)] == ["", "1:3", "1:4"]
        assert len(enumerate_sigmas(5)) == 10

    def test_identity_first_and_ordering_by_size(self):
        for n in range(2, 9):
            sigmas = enumerate_sigmas(n)
            assert sigmas[0] == IDENTITY
            sizes = [len(s) for s in sigmas]
            assert sizes == sorted(sizes)

    def test_row_bit_sets_distinct_and_never_complementary(self):
        for n in range(2, 9):
            seen = set()
            for sigma in enumerate_sigmas(n):
                row_set = frozenset(split_for(sigma, n).row_bits)
                assert row_set not in seen
                if n % 2 == 0:
                    complement = frozenset(range(1, n + 1)) - row_set
                    assert complement not in seen
                seen.add(row_set)

    def test_matches_subset_quotient_model(self):
        # independent construction: pick the row-bit subset directly, keep
        # one representative per complementary pair for even n
        for n in range(2, 9):
            half = n // 2
            default_rows = set(range(1, half + 1))
            expected = set()
            for subset in combinations(range(1, n + 1), half):
                chosen = set(subset)
                if n % 2 == 0 and half not in chosen:
                    continue  # the complementary representative is kept instead
                outgoing = sorted(default_rows - chosen)
                incoming = sorted(chosen - default_rows)
                expected.add(tuple(zip(outgoing, incoming)))
            produced = {s.transpositions for s in enumerate_sigmas(n)}
            assert produced == expected

    def test_too_few_qubits(self):
        with pytest.raises(ValueError):
            enumerate_sigmas(1)


class TestPermuteState:
    def test_identity_returns_same_state(self):
        state = ghz_state(4)
        assert permute_state(state, IDENTITY) is state

    def test_swap_example(self):
        state = basis_state(4, 0b1100)
        swapped = permute_state(state, QubitPermutation(((1, 4),)))
        assert set(swapped.amps) == {0b0101}

    def test_involution(self):
        rng = random.Random(11)
        for n in (3, 4, 5):
            sigmas = enumerate_sigmas(n)
            for _ in range(10):
                state = random_state(rng, n)
                sigma = sigmas[rng.randrange(len(sigmas))]
                assert permute_state(permute_state(state, sigma), sigma) == state

    def test_label_out_of_range(self):
        with pytest.raises(ValueError):
            permute_state(ghz_state(3), QubitPermutation(((1, 4),)))

    def test_zero_state_passes_through(self):
        zero = PureState.zero(4)
        assert permute_state(zero, QubitPermutation(((1, 4),))).is_zero


class TestCoefficientMatrix:
    def test_three_qubit_layout(self):
        state = PureState(3, {i: i + 1 for i in range(8)})
        matrix = coefficient_matrix(state)
        expected = (
            tuple(Scalar(v) for v in (1, 2, 3, 4)),
            tuple(Scalar(v) for v in (5, 6, 7, 8)),
        )
        assert matrix.entries == expected

    def test_ghz4_matrix(self):
        matrix = coefficient_matrix(ghz_state(4))
        assert matrix.rows == matrix.cols == 4
        for i in range(4):
            for j in range(4):
                expected = Scalar(1) if (i, j) in ((0, 0), (3, 3)) else Scalar(0)
                assert matrix.entry(i, j) == expected

    def test_span_family_swap_gives_diagonal(self):
        # derived by hand: swapping qubits 1 and 4 sends the four kets to
        # indices 0, 5, 10, 15, one per diagonal slot
        state = family_state("span_0kPsi", alpha=2, beta=3)
        matrix = coefficient_matrix(state, QubitPermutation(((1, 4),)))
        diag = [Scalar(1), Scalar(1), Scalar(2), Scalar(3)]
        for i in range(4):
            for j in range(4):
                assert matrix.entry(i, j) == (diag[i] if i == j else Scalar(0))

    def test_split_metadata(self):
        matrix = coefficient_matrix(ghz_state(5), QubitPermutation(((1, 4),)))
        assert matrix.split.row_bits == (4, 2)
        assert matrix.split.col_bits == (3, 1, 5)

    def test_agrees_with_direct_split_extraction(self):
        rng = random.Random(23)
        for n in (4, 5):
            for _ in range(5):
                state = random_state(rng, n)
                for sigma in enumerate_sigmas(n):
                    direct = split_matrix(state, split_for(sigma, n))
                    assert coefficient_matrix(state, sigma) == direct

    def test_zero_state_maps_to_zero_matrix(self):
        matrix = coefficient_matrix(PureState.zero(3))
        assert all(not e for row in matrix.entries for e in row)

    def test_frobenius_norm_matches_state_norm(self):
        rng = random.Random(31)
        for n in (3, 4, 5):
            state = random_state(rng, n)
            norm_sq = sum(abs(complex(a)) ** 2 for a in state.amps.values())
            for sigma in enumerate_sigmas(n):
                array = to_complex_array(coefficient_matrix(state, sigma))
                assert abs((np.abs(array) ** 2).sum() - norm_sq) < 1e-12


class TestBipartitionCompleteness:
    def test_excluded_splits_are_transposes_with_equal_rank(self):
        rng = random.Random(47)
        n = 4
        all_labels = frozenset(range(1, n + 1))
        for _ in range(10):
            state = random_state(rng, n)
            for sigma in enumerate_sigmas(n):
                rows = frozenset(split_for(sigma, n).row_bits)
                cols = sorted(all_labels - rows)
                included = split_matrix(state, BitSplit(sorted(rows), cols))
                excluded = split_matrix(state, BitSplit(cols, sorted(rows)))
                transposed = tuple(zip(*included.entries))
                assert excluded.entries == transposed
                rank = exact_rank(coefficient_matrix(state, sigma)).rank
                assert exact_rank(included).rank == rank
                assert exact_rank(excluded).rank == rank


class TestBitSplit:
    def test_partition_validated(self):
        with pytest.raises(ValueError):
            BitSplit((1, 2), (2, 3))
        with pytest.raises(ValueError):
            BitSplit((1, 2, 3), (4,))

    def test_dicke_matrix_row_count(self):
        matrix = coefficient_matrix(dicke_state(6, 2))
        assert (matrix.rows, matrix.cols) == (8, 8)
