import numpy as np
import pytest

from baselines import HashDrbg, Lcg48, hashdrbg_next, lcg_low_bit_stream, lcg_next, scramble_seed, sha1_digest
from generator import fill_bitstream


def test_lcg_golden_outputs_for_seed_zero():
    rng = Lcg48(0)
    assert rng.next_block() == 0xBB20B460
    assert rng.next_block() == 0xD4D95138


def test_lcg_signed_view():
    rng = Lcg48(0)
    assert [rng.next_int(), rng.next_int()] == [-1155484576, -723955400]


def test_lcg_first_state():
    state, word = lcg_next(scramble_seed(0))
    assert state == 205749139540596
    assert word == state >> 16


def test_lcg_state_parity_alternates():
    state = scramble_seed(12345)
    parities = []
    for _ in range(10):
        state, _ = lcg_next(state)
        parities.append(state & 1)
    assert all(a != b for a, b in zip(parities, parities[1:]))


def test_lcg_state_must_fit_48_bits():
    with pytest.raises(ValueError):
        lcg_next(1 << 48)


def test_lcg_low_bit_stream_period():
    bits = lcg_low_bit_stream(7, (1 << 17) + 64).bits
    assert np.array_equal(bits[:64], bits[1 << 17:])


def test_sha1_published_vector():
    assert sha1_digest(b"abc").hex() == "a9993e364706816aba3e25717850c26c9cd0d89d"


def test_hashdrbg_words_follow_counter_blocks():
    drbg = HashDrbg(99)
    words = [hashdrbg_next(drbg) for _ in range(10)]
    expected = HashDrbg(99).block(0) + HashDrbg(99).block(1)
    assert b"".join(w.to_bytes(4, "big") for w in words) == expected
    assert drbg.counter == 2


def test_hashdrbg_block_is_pure():
    assert HashDrbg(5).block(3) == HashDrbg(5).block(3)
    assert HashDrbg(5).block(3) != HashDrbg(5).block(4)


@pytest.mark.parametrize("make", [Lcg48, HashDrbg])
def test_baselines_are_deterministic(make):
    assert fill_bitstream(make(2024), 4096) == fill_bitstream(make(2024), 4096)


def test_hashdrbg_avalanche():
    a = fill_bitstream(HashDrbg(0b1010), 160).bits
    b = fill_bitstream(HashDrbg(0b1011), 160).bits
    assert np.count_nonzero(a != b) >= 40


def test_hashdrbg_rejects_negative_seed():
    with pytest.raises(ValueError):
        HashDrbg(-1)
