import cmath
import math
from pathlib import Path

from quditops.state import DIGITS, QuditState, ket


FIXTURES = Path(__file__).parent

PARTIAL_ONE_JSON = str(FIXTURES / 'partial_one.json')
PARTIAL_TWO_JSON = str(FIXTURES / 'partial_two.json')
FULL_FOUR_JSON = str(FIXTURES / 'full_four.json')
BELL = str(FIXTURES / 'bell.json')
EMPTY = str(FIXTURES / 'empty.json')
BAD_GATE = str(FIXTURES / 'bad_gate.json')

# Gate parameters of the radix-4 partial (one and two gates) and full generators
PARTIAL_ONE = ((3, 1),)
PARTIAL_TWO = ((3, 1), (2, 2))
FULL_FOUR = ((3, 1), (2, 2), (1, 3))

# Outputs for input |00> of the three radix-4 generators
PARTIAL_ONE_00 = ket(4, {'00': 0.5, '10': 0.5, '20': 0.5, '31': 0.5})
PARTIAL_TWO_00 = ket(4, {'00': 0.5, '10': 0.5, '22': 0.5, '31': 0.5})
FULL_FOUR_00 = ket(4, {'00': 0.5, '13': 0.5, '22': 0.5, '31': 0.5})


def generator_output(r: int, pairs, x: int, z: int) -> QuditState:
    """
    Closed form of C_r on wire 0 followed by A_{h,k} gates, for input |xz>:
    sum_a w^(a x) / sqrt(r) |a, (z + k_a) mod r>, where k_a is the addend
    controlled by a (0 if none).
    """
    addends = dict(pairs)
    terms = {}
    for a in range(r):
        phase = cmath.exp(2j * math.pi * ((a * x) % r) / r)
        target = (z + addends.get(a, 0)) % r
        terms[f'{DIGITS[a]}{DIGITS[target]}'] = phase / math.sqrt(r)
    return ket(r, terms)
