"""
Radix-r qudit state vectors over the computational basis.

Index convention: the leftmost digit of a ket is wire 0 and the most
significant digit of the linear index, so |31_4> lives at index 3*4 + 1.
"""

from dataclasses import dataclass, field
import math
from typing import Iterable, Sequence

import numpy as np

from quditops.errors import DomainError, ZeroProbabilityError


STATE_EPS = 1e-9

# Digit alphabet for kets and the CLI, limits radix to 36
DIGITS = '0123456789abcdefghijklmnopqrstuvwxyz'

DigitString = tuple[int, ...]


@dataclass(frozen=True)
class Tolerance:
    """
    Numerical tolerance for comparisons.

    Arguments:
        eps: Largest absolute deviation that still counts as equal.
            Defaults to 1e-9, which is what state comparisons use.
    """
    eps: float = STATE_EPS

    def __post_init__(self):
        if not self.eps > 0 or not math.isfinite(self.eps):
            raise DomainError(f'tolerance must be positive and finite, got {self.eps}')


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True, eq=False)
class QuditState:
    """
    Pure state of `wires` radix-r qudits.

    Arguments:
        radix: Number of levels per qudit, at least 2.
        wires: Number of qudits, at least 1.
        amplitudes: Complex amplitudes in linear index order. Length must be
            radix**wires and the vector must be normalized. The array is
            copied and frozen on construction.
    """
    radix: int
    wires: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_shape(self.radix, self.wires)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.radix ** self.wires:
            raise DomainError(f'state of {self.wires} radix-{self.radix} wires needs '
                              f'{self.radix ** self.wires} amplitudes, got {amps.size}')
        if not np.all(np.isfinite(amps)):
            raise DomainError('amplitudes must be finite')
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1) > STATE_EPS:
            raise DomainError(f'state is not normalized (sum of |a|^2 = {norm})')
        amps.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __str__(self):
        # Local import, _render depends on this module
        from quditops import _render
        return _render.format_ket(self)


def _check_shape(radix: int, wires: int):
    if not isinstance(radix, (int, np.integer)) or radix < 2:
        raise DomainError(f'radix must be an integer >= 2, got {radix}')
    if not isinstance(wires, (int, np.integer)) or wires < 1:
        raise DomainError(f'wires must be an integer >= 1, got {wires}')


def digits_to_index(digits: Sequence[int], radix: int) -> int:
    """
    Linear index of a digit string, most significant digit first.
    """
    index = 0
    for d in digits:
        if not 0 <= d < radix:
            raise DomainError(f'digit {d} out of range for radix {radix}')
        index = index * radix + d
    return index


def index_to_digits(index: int, radix: int, wires: int) -> DigitString:
    if not 0 <= index < radix ** wires:
        raise DomainError(f'index {index} out of range for {wires} radix-{radix} wires')
    digits = []
    for _ in range(wires):
        index, d = divmod(index, radix)
        digits.append(d)
    return tuple(reversed(digits))


def parse_digits(text: str, radix: int) -> DigitString:
    """
    Parses a ket label such as '31' (or '3a' for radix > 10) into digits.
    """
    if not text:
        raise DomainError('empty digit string')
    digits = []
    for ch in text.lower():
        d = DIGITS.find(ch)
        if d < 0 or d >= radix:
            raise DomainError(f'digit {ch!r} out of range for radix {radix}')
        digits.append(d)
    return tuple(digits)


def format_digits(digits: Iterable[int]) -> str:
    return ''.join(DIGITS[d] for d in digits)


def basis_state(radix: int, wires: int, digits: Sequence[int]) -> QuditState:
    """
    Computational basis state |digits>.

    Arguments:
        radix: Levels per qudit.
        wires: Number of qudits. Must equal len(digits).
        digits: Basis label, wire 0 first.
    """
    _check_shape(radix, wires)
    if len(digits) != wires:
        raise DomainError(f'{len(digits)} digits given for {wires} wires')
    amps = np.zeros(radix ** wires, dtype=np.complex128)
    amps[digits_to_index(digits, radix)] = 1
    return QuditState(radix, wires, amps)


def maximally_superposed_state(radix: int) -> QuditState:
    """
    Single qudit in equal superposition of all basis states, 1/sqrt(r) each.
    """
    _check_shape(radix, 1)
    return QuditState(radix, 1, np.full(radix, 1 / math.sqrt(radix), dtype=np.complex128))


def tensor_product(a: QuditState, b: QuditState) -> QuditState:
    """
    Kronecker product a (x) b. Wires of a come first.
    """
    if a.radix != b.radix:
        raise DomainError(f'radix mismatch: {a.radix} vs {b.radix}')
    return QuditState(a.radix, a.wires + b.wires, np.kron(a.amplitudes, b.amplitudes))


def probabilities(s: QuditState) -> np.ndarray:
    """
    Measurement probabilities |a_i|^2 in linear index order.
    """
    return np.abs(s.amplitudes) ** 2


def conditional_state(s: QuditState, wire: int, outcome: int, tol: Tolerance = DEFAULT_TOL) -> QuditState:
    """
    State of the other qudit of a pair after `wire` was measured as `outcome`.

    Arguments:
        s: Two-qudit state.
        wire: Measured wire, 0 or 1.
        outcome: Observed basis value of the measured wire.
        tol: Outcomes with probability below tol.eps are treated as impossible
            and raise ZeroProbabilityError.
    """
    if s.wires != 2:
        raise DomainError(f'conditioning needs a two-qudit state, got {s.wires} wires')
    if wire not in (0, 1):
        raise DomainError(f'wire must be 0 or 1, got {wire}')
    if not 0 <= outcome < s.radix:
        raise DomainError(f'outcome {outcome} out of range for radix {s.radix}')

    coeffs = s.amplitudes.reshape(s.radix, s.radix)
    residual = coeffs[outcome, :] if wire == 0 else coeffs[:, outcome]
    prob = float(np.sum(np.abs(residual) ** 2))
    if prob < tol.eps:
        raise ZeroProbabilityError(f'wire {wire} cannot read {outcome} (probability {prob:.3g})')
    return QuditState(s.radix, 1, residual / math.sqrt(prob))


def states_equal(a: QuditState, b: QuditState, tol: Tolerance = DEFAULT_TOL) -> bool:
    """
    Entrywise comparison. Global phase is NOT factored out.
    """
    if a.radix != b.radix or a.wires != b.wires:
        raise DomainError(f'cannot compare {a.wires}x radix-{a.radix} state '
                          f'with {b.wires}x radix-{b.radix} state')
    return bool(np.max(np.abs(a.amplitudes - b.amplitudes)) <= tol.eps)


def ket(radix: int, terms: dict[str, complex]) -> QuditState:
    """
    Builds a state from labelled terms, e.g. ket(4, {'00': 0.5, '31': 0.5j, ...}).
    All labels must have the same length.
    """
    if not terms:
        raise DomainError('no terms given')
    labels = [parse_digits(label, radix) for label in terms]
    wires = len(labels[0])
    if any(len(label) != wires for label in labels):
        raise DomainError('ket labels have different lengths')
    amps = np.zeros(radix ** wires, dtype=np.complex128)
    for label, value in zip(labels, terms.values()):
        amps[digits_to_index(label, radix)] += value
    return QuditState(radix, wires, amps)
