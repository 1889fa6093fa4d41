from __future__ import annotations

import math
import random
import struct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forage.errors import CodecError, NotSquare, OutOfRange, TooLarge, UnknownTask
from forage.workloads import (
    REGISTRY,
    TASK_MATRIX_DETERMINANT,
    TASK_NTH_PRIME,
    decode_determinant,
    decode_matrix,
    decode_prime_input,
    decode_prime_output,
    encode_determinant,
    encode_matrix,
    encode_prime_input,
    encode_prime_output,
    get_task,
    matrix_determinant,
    nth_prime,
)

from oracles import lu_determinant, sieve_primes, trial_division_nth_prime


class TestNthPrime:
    def test_first_prime_is_two(self):
        assert nth_prime(1) == 2

    def test_25th(self):
        assert nth_prime(25) == 97

    def test_10000th(self):
        assert nth_prime(10_000) == 104_729

    def test_agrees_with_sieve_oracle_up_to_10000(self):
        primes = sieve_primes(104_729)
        assert len(primes) == 10_000
        for n in [1, 2, 3, 4, 5, 6, 10, 99, 500, 1229, 5000, 9_999, 10_000]:
            assert nth_prime(n) == primes[n - 1]

    @given(n=st.integers(min_value=1, max_value=400))
    @settings(max_examples=60, deadline=None)
    def test_agrees_with_trial_division(self, n):
        assert nth_prime(n) == trial_division_nth_prime(n)

    @pytest.mark.parametrize("bad", [0, -5, 10_000_001, 1.5, "7", None, True])
    def test_out_of_range(self, bad):
        with pytest.raises(OutOfRange):
            nth_prime(bad)

    def test_configurable_cap(self):
        assert nth_prime(50, max_index=50) == 229
        with pytest.raises(OutOfRange):
            nth_prime(51, max_index=50)


class TestMatrixDeterminant:
    def test_identity(self):
        eye = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        assert matrix_determinant(eye) == 1.0

    def test_two_by_two(self):
        assert matrix_determinant([[1, 2], [3, 4]]) == -2.0

    def test_single_entry(self):
        assert matrix_determinant([[7.5]]) == 7.5

    def test_singular(self):
        assert matrix_determinant([[1, 2], [2, 4]]) == 0.0

    def test_permutation_sign(self):
        assert matrix_determinant([[0, 1], [1, 0]]) == -1.0

    @pytest.mark.parametrize("n", range(2, 9))
    def test_matches_lu_oracle(self, n):
        rng = random.Random(1000 + n)
        for _ in range(5):
            rows = [[rng.uniform(-1, 1) for _ in range(n)] for _ in range(n)]
            got = matrix_determinant(rows)
            want = lu_determinant(rows)
            assert got == pytest.approx(want, rel=1e-9, abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(NotSquare):
            matrix_determinant([])

    def test_ragged_rejected(self):
        with pytest.raises(NotSquare):
            matrix_determinant([[1, 2], [3]])

    def test_non_square_rejected(self):
        with pytest.raises(NotSquare):
            matrix_determinant([[1, 2, 3], [4, 5, 6]])

    def test_size_cap(self):
        big = [[1.0] * 12 for _ in range(12)]
        with pytest.raises(TooLarge):
            matrix_determinant(big)
        assert matrix_determinant([[1.0]], max_size=1) == 1.0
        with pytest.raises(TooLarge):
            matrix_determinant([[1.0, 0.0], [0.0, 1.0]], max_size=1)

    def test_scaling_one_row_scales_determinant(self):
        rng = random.Random(42)
        rows = [[rng.uniform(-1, 1) for _ in range(5)] for _ in range(5)]
        base = matrix_determinant(rows)
        scaled = [list(rows[0])] + [list(r) for r in rows[1:]]
        scaled[0] = [2.0 * x for x in scaled[0]]
        assert matrix_determinant(scaled) == pytest.approx(2.0 * base, rel=1e-9, abs=1e-12)


class TestCodecs:
    def test_prime_round_trip(self):
        assert decode_prime_input(encode_prime_input(10_000)) == 10_000
        assert len(encode_prime_input(10_000)) == 8
        assert decode_prime_output(encode_prime_output(104_729)) == 104_729

    def test_prime_big_endian_layout(self):
        assert encode_prime_input(1) == b"\x00\x00\x00\x00\x00\x00\x00\x01"

    @given(n=st.integers(min_value=0, max_value=2**64 - 1))
    def test_prime_round_trip_property(self, n):
        assert decode_prime_input(encode_prime_input(n)) == n

    @pytest.mark.parametrize("bad", [-1, 2**64, 1.0, "x"])
    def test_prime_encode_rejects(self, bad):
        with pytest.raises(CodecError):
            encode_prime_input(bad)

    @pytest.mark.parametrize("payload", [b"", b"\x00" * 7, b"\x00" * 9])
    def test_prime_decode_rejects_wrong_length(self, payload):
        with pytest.raises(CodecError):
            decode_prime_input(payload)

    def test_matrix_round_trip(self):
        rows = [[1.5, -2.25], [0.0, 4.0]]
        payload = encode_matrix(rows)
        assert len(payload) == 4 + 4 * 8
        assert payload[:4] == struct.pack(">I", 2)
        assert decode_matrix(payload) == rows

    @given(
        n=st.integers(min_value=1, max_value=6),
        data=st.data(),
    )
    def test_matrix_round_trip_property(self, n, data):
        entries = st.floats(allow_nan=False, allow_infinity=False, width=64)
        rows = [[data.draw(entries) for _ in range(n)] for _ in range(n)]
        assert decode_matrix(encode_matrix(rows)) == rows

    def test_matrix_encode_rejects_ragged(self):
        with pytest.raises(NotSquare):
            encode_matrix([[1.0], [2.0, 3.0]])
        with pytest.raises(NotSquare):
            encode_matrix([])

    @pytest.mark.parametrize(
        "payload",
        [
            b"",
            b"\x00\x00",
            struct.pack(">I", 2) + b"\x00" * 8,  # truncated entries
            struct.pack(">I", 0),  # zero size header
            struct.pack(">I", 1) + b"\x00" * 16,  # trailing bytes
        ],
    )
    def test_matrix_decode_rejects(self, payload):
        with pytest.raises(CodecError):
            decode_matrix(payload)

    def test_determinant_round_trip(self):
        assert decode_determinant(encode_determinant(-2.0)) == -2.0
        with pytest.raises(CodecError):
            decode_determinant(b"\x00")


class TestRegistry:
    def test_known_tasks(self):
        assert set(REGISTRY) == {TASK_NTH_PRIME, TASK_MATRIX_DETERMINANT}
        assert get_task(TASK_NTH_PRIME).name == "Nth Prime Number"
        assert get_task(TASK_MATRIX_DETERMINANT).name == "Matrix Determinant"

    def test_unknown_task(self):
        with pytest.raises(UnknownTask):
            get_task("Speech Recognition")

    def test_prime_task_end_to_end(self):
        task = get_task(TASK_NTH_PRIME)
        out = task.run(task.make_input(25))
        assert decode_prime_output(out) == 97

    def test_det_task_end_to_end(self):
        task = get_task(TASK_MATRIX_DETERMINANT)
        payload = encode_matrix([[2.0, 0.0], [0.0, 3.0]])
        assert decode_determinant(task.run(payload)) == 6.0

    def test_det_task_make_input_is_deterministic(self):
        task = get_task(TASK_MATRIX_DETERMINANT)
        assert task.make_input(6) == task.make_input(6)
        assert task.make_input(6) != task.make_input(7)
        assert decode_matrix(task.make_input(6))  # well-formed

    def test_task_run_rejects_bad_payload(self):
        with pytest.raises(CodecError):
            get_task(TASK_NTH_PRIME).run(b"\x01\x02")

    def test_determinism_across_calls(self):
        task = get_task(TASK_MATRIX_DETERMINANT)
        payload = task.make_input(7)
        assert task.run(payload) == task.run(payload)
