"""Shared fixtures and the published reference tables used by the tests."""

from __future__ import annotations

import math
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bjengine import Rules, new_deck  # noqa: E402


def cut(x: float, digits: int) -> float:
    """Truncate toward zero with a dust nudge, as the CLI tables print."""
    scale = 10 ** digits
    return math.copysign(int(abs(x) * scale + 1e-9) / scale, x)


def rounded(x: float, digits: int) -> float:
    return round(x + 0.0, digits)


# One-deck dealer table under the no-natural measure, stand on soft 17,
# as published (5 digits). Three cells are known print defects; see
# KNOWN_DEALER_TABLE_DEFECTS and the acceptance test that pins the exact
# values for them.
DEALER_TABLE_1DECK = {
    2: (0.13897, 0.13176, 0.13181, 0.12394, 0.12052, 0.35297),
    3: (0.13030, 0.13094, 0.12376, 0.12334, 0.11604, 0.37559),
    4: (0.13097, 0.11416, 0.12067, 0.11628, 0.11509, 0.40280),
    5: (0.11968, 0.12348, 0.11690, 0.10469, 0.10632, 0.42890),
    6: (0.16694, 0.10645, 0.10719, 0.10070, 0.09787, 0.42082),
    7: (0.37234, 0.13858, 0.07733, 0.07889, 0.07298, 0.25985),
    8: (0.13085, 0.36298, 0.12944, 0.06828, 0.06979, 0.23862),
    9: (0.12188, 0.10392, 0.35739, 0.12225, 0.06110, 0.23344),
    10: (0.12415, 0.12248, 0.12442, 0.35686, 0.03956, 0.23249),
    1: (0.18378, 0.19089, 0.18868, 0.19169, 0.07513, 0.16981),
}

# (upcard, column-index): the published digits disagree with the exact
# rational value; the exact values are asserted in the acceptance test.
KNOWN_DEALER_TABLE_DEFECTS = {
    (3, 0): 0.130313184832,   # printed 0.13030
    (3, 5): 0.375587948959,   # printed 0.37559 (complement of the above)
    (1, 2): 0.188679899346,   # printed 0.18868; exact cuts to 0.18867
}

# Two decks, stand soft 17, das/rsa/rsp on, upcard 6 (published, 6 digits,
# rounded; magnitudes >= 1 carry 5 digits plus a padded zero).
EV_TABLE = {
    (2, 10): (-0.156818, -0.165123, -0.330246, None, "stand"),
    (3, 10): (-0.155641, -0.232503, -0.465006, None, "stand"),
    (4, 10): (-0.154544, -0.304424, -0.608848, None, "stand"),
    (5, 10): (-0.153729, -0.376364, -0.752728, None, "stand"),
    (6, 10): (-0.165609, -0.414113, -0.828226, None, "stand"),
    (7, 10): (0.001024, -0.496273, -0.992546, None, "stand"),
    (8, 10): (0.276027, -0.597068, -1.194140, None, "stand"),
    (9, 10): (0.490271, -0.714945, -1.429890, None, "stand"),
    (10, 10): (0.700605, -0.849453, -1.698910, 0.569494, "stand"),
    (1, 1): (-0.129268, 0.192311, 0.213109, 0.836235, "split"),
    (1, 2): (-0.134355, 0.164810, 0.204564, None, "double"),
    (1, 3): (-0.133179, 0.142659, 0.200079, None, "double"),
    (1, 4): (-0.132096, 0.118918, 0.189631, None, "double"),
    (1, 5): (-0.131183, 0.107088, 0.197579, None, "double"),
    (1, 6): (0.012003, 0.131284, 0.262569, None, "double"),
    (1, 7): (0.273910, 0.192289, 0.384579, None, "double"),
    (1, 8): (0.489571, 0.240709, 0.481418, None, "stand"),
    (1, 9): (0.699584, 0.284227, 0.568454, None, "stand"),
    (1, 10): (1.500000, 0.337395, 0.674791, None, "stand"),
}

# The two split cells whose published digits are irreproducible from the
# published algorithm; engine values verified against the exhaustive
# oracle and the publication's own whole-game aggregates.
KNOWN_EV_TABLE_DEFECTS = {
    (1, 1): 0.812968223450975,    # printed 0.836235
    (10, 10): 0.549495436373917,  # printed 0.569494
}

# Whole-game expected win in percent: {(decks or None for infinite, option
# bits): value}. Published at 4 decimals.
EXPECTED_WIN_TABLE = {
    (None, "000"): -.6901, (None, "001"): -.6569, (None, "010"): -.6223,
    (None, "011"): -.5891, (None, "100"): -.5702, (None, "101"): -.5186,
    (None, "110"): -.5025, (None, "111"): -.4509,
    (1, "000"): -.6747, (1, "111"): -.4934,
    (2, "000"): -.6876, (2, "111"): -.4776,
    (8, "000"): -.6902, (8, "111"): -.4583,
}

# Removal effects in percent, das/rsa/rsp on: {decks: {value: effect}}.
REMOVAL_TABLE = {
    1: {1: -.656, 2: .363, 3: .427, 4: .564, 5: .733,
        6: .415, 7: .267, 8: -.013, 9: -.181, 10: -.444},
    2: {1: -.316, 2: .187, 3: .216, 4: .289, 5: .373,
        6: .209, 7: .134, 8: -.010, 9: -.097, 10: -.236},
}

# Worked estimate example: two decks, das/rsa/rsp on.
EXAMPLE_REMOVED = [1, 1, 2, 2, 3, 4, 4, 4, 5, 5, 5, 7, 7, 8, 10]
EXAMPLE_EXACT = 0.018249
EXAMPLE_ESTIMATE = 0.01965


@pytest.fixture(scope="session")
def rules111_2d() -> Rules:
    return Rules(n_decks=2, das=True, rsa=True, rsp=True)


@pytest.fixture(scope="session")
def rules111_1d() -> Rules:
    return Rules(n_decks=1, das=True, rsa=True, rsp=True)


@pytest.fixture()
def deck1():
    return new_deck(1)


def random_tiny_decks(seed: int, n: int, t_min: int, t_max: int,
                      max_per_rank: int = 3):
    """Deterministic corpus of small deck compositions."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        counts = [rng.randint(0, max_per_rank) for _ in range(10)]
        if t_min <= sum(counts) <= t_max:
            out.append(counts)
    return out
