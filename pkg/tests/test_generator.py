import math

import numpy as np
import pytest
from pydantic import ValidationError

from generator import (
    ASCII,
    RAW,
    Bitstream,
    BitstreamFormatError,
    GenerationMode,
    GeneratorConfig,
    PendulumRng,
    SplitMix64,
    extract_bits,
    fill_bitstream,
    next_block,
    read_bitstream,
    seed_expand,
    write_bitstream,
)
from dynamics import PendulumState

# Short conditioning keeps the pendulum tests fast without changing the code path
FAST = GeneratorConfig(condition_steps=50, stir_steps=16)


def test_splitmix_golden_outputs():
    mixer = SplitMix64(0)
    assert [mixer.next() for _ in range(4)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
        0xF88BB8A8724C81EC,
    ]
    assert mixer.state == 0x78DDE6E5FD29F054


def test_splitmix_integer_stays_in_closed_range():
    mixer = SplitMix64(7)
    draws = [mixer.integer(1000, 1002) for _ in range(300)]
    assert set(draws) == {1000, 1001, 1002}


def test_seed_expand_golden_vector():
    params, state, mixer_state = seed_expand(0, GeneratorConfig())
    assert params.m1 == pytest.approx(265.109931655879, rel=1e-12)
    assert params.m2 == pytest.approx(130.026871117504, rel=1e-12)
    assert state.theta1 == pytest.approx(0.166088285283951, rel=1e-12)
    assert state.theta2 == pytest.approx(6.10023138014159, rel=1e-12)
    assert state.omega1 == 0.0 and state.omega2 == 0.0
    assert mixer_state == 0x78DDE6E5FD29F054


def test_seed_expand_is_deterministic_and_seed_sensitive():
    config = GeneratorConfig()
    assert seed_expand(5, config) == seed_expand(5, config)
    assert seed_expand(0, config)[:2] != seed_expand(1, config)[:2]


def test_seed_expand_rejects_out_of_range_seed():
    with pytest.raises(ValueError):
        seed_expand(-1, GeneratorConfig())
    with pytest.raises(ValueError):
        seed_expand(1 << 64, GeneratorConfig())


@pytest.mark.parametrize("kwargs", [
    {"mass_range": (0.0, 10.0)},
    {"mass_range": (5.0, 1.0)},
    {"loop_range": (0, 10)},
    {"loop_range": (10, 2_000_000)},
    {"stir_steps": 0},
])
def test_config_validation(kwargs):
    with pytest.raises(ValidationError):
        GeneratorConfig(**kwargs)


def test_step_default_from_environment(monkeypatch):
    monkeypatch.setenv("PRNG_STEP", "0.0005")
    assert GeneratorConfig().h == 0.0005


@pytest.mark.parametrize("theta,expected", [
    (0.0, 0x00000000),
    (math.pi, 0x00000000),
    (2 * math.pi / 3, 0x55555555),
])
def test_extract_bits(theta, expected):
    assert extract_bits(PendulumState(theta1=theta, theta2=theta)) == expected


def test_extract_bits_normalizes_negative_angles():
    s = PendulumState(theta1=-4 * math.pi / 3, theta2=2 * math.pi / 3 + 2 * math.pi)
    assert extract_bits(s) == 0x55555555


def test_rng_determinism():
    a = PendulumRng(42, FAST)
    b = PendulumRng(42, FAST)
    assert [next_block(a) for _ in range(5)] == [next_block(b) for _ in range(5)]


def test_stir_steps_change_output():
    a = PendulumRng(3, FAST)
    b = PendulumRng(3, FAST.model_copy(update={"stir_steps": 17}))
    assert [a.next_block() for _ in range(4)] != [b.next_block() for _ in range(4)]


def test_paper_mode_with_fixed_loops_matches_streaming():
    paper = GeneratorConfig(mode=GenerationMode.PAPER_FAITHFUL, loop_range=(200, 200))
    streaming = GeneratorConfig(mode=GenerationMode.STREAMING, loop_range=(200, 200), stir_steps=200)
    assert PendulumRng(9, paper).next_block() == PendulumRng(9, streaming).next_block()


def test_paper_mode_draws_loop_counts_from_mixer():
    config = GeneratorConfig(mode=GenerationMode.PAPER_FAITHFUL, loop_range=(20, 40), condition_steps=10)
    rng = PendulumRng(1, config)
    before = rng.mixer_state
    rng.next_block()
    assert rng.mixer_state != before
    assert rng.blocks_emitted == 1


def _longest_repeat(words) -> int:
    longest, current = 1, 1
    for prev, word in zip(words, words[1:]):
        current = current + 1 if word == prev else 1
        longest = max(longest, current)
    return longest


def test_no_long_repeats_of_words():
    rng = PendulumRng(1, FAST)
    assert _longest_repeat([rng.next_block() for _ in range(2000)]) <= 3


@pytest.mark.slow
def test_no_long_repeats_with_default_config():
    rng = PendulumRng.from_seed(1, GeneratorConfig())
    assert _longest_repeat([rng.next_block() for _ in range(10_000)]) <= 3


def test_from_seed_matches_constructor():
    a = PendulumRng.from_seed(11, FAST)
    b = PendulumRng(11, FAST)
    assert a.params == b.params
    assert [a.next_block() for _ in range(3)] == [b.next_block() for _ in range(3)]


def test_fill_bitstream_truncates_and_concatenates():
    assert fill_bitstream(PendulumRng(4, FAST), 1).n == 1

    rng = PendulumRng(4, FAST)
    expected = Bitstream.from_words([rng.next_block(), rng.next_block()])
    assert fill_bitstream(PendulumRng(4, FAST), 64) == expected


def test_fill_bitstream_rejects_empty():
    with pytest.raises(ValueError):
        fill_bitstream(PendulumRng(4, FAST), 0)


def test_adjacent_seeds_decorrelate():
    a = fill_bitstream(PendulumRng(100, FAST), 10_000).bits
    b = fill_bitstream(PendulumRng(101, FAST), 10_000).bits
    assert np.count_nonzero(a != b) >= 3000


@pytest.mark.slow
def test_bit_positions_are_balanced():
    rng = PendulumRng(1)
    words = np.array([rng.next_block() for _ in range(100_000)], dtype=np.uint64)
    for bit in range(32):
        ones = np.count_nonzero((words >> np.uint64(bit)) & np.uint64(1)) / words.size
        assert 0.48 <= ones <= 0.52


def test_bitstream_from_words_msb_first():
    assert Bitstream.from_words([0x80000001]).to_string() == "1" + "0" * 30 + "1"


def test_ascii_ignores_whitespace():
    assert Bitstream.from_string("10 1\n\t01\r\n") == Bitstream([1, 0, 1, 0, 1])


def test_ascii_reports_bad_character_position():
    with pytest.raises(BitstreamFormatError) as info:
        Bitstream.from_string("0101\n01x1")
    assert info.value.position == 7
    assert info.value.line == 2
    assert info.value.column == 3


def test_bitstream_rejects_non_binary():
    with pytest.raises(ValueError):
        Bitstream([0, 1, 2])


def test_bitstream_helpers():
    s = Bitstream.from_string("0011")
    assert s.ones() == 2
    assert s.complement().to_string() == "1100"
    assert s.concat(s).n == 8
    assert len(s) == 4


def test_file_formats(tmp_path):
    stream = Bitstream.from_string("1011001110001")

    ascii_path = tmp_path / "bits.txt"
    write_bitstream(ascii_path, stream, ASCII)
    assert read_bitstream(ascii_path, ASCII) == stream

    raw_path = tmp_path / "bits.bin"
    write_bitstream(raw_path, stream, RAW)
    assert raw_path.read_bytes() == bytes([0b10110011, 0b10001000])
    assert read_bitstream(raw_path, RAW, stream.n) == stream
    assert read_bitstream(raw_path, RAW).n == 16


def test_raw_bit_count_must_fit(tmp_path):
    path = tmp_path / "bits.bin"
    path.write_bytes(b"\xff")
    with pytest.raises(BitstreamFormatError):
        read_bitstream(path, RAW, 9)
