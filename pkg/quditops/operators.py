"""
Unitary operators: roots of unity, Chrestenson gates, modulo-add gates and
controlled modulo-add gates, plus the primitives to combine them.

Two-qudit gates always use wire 0 as control and wire 1 as target, so the
outer block index of a controlled gate is the control digit.
"""

from dataclasses import dataclass, field
import math
from typing import Sequence

import numpy as np

from quditops.errors import DomainError
from quditops.state import QuditState


UNITARY_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """
    Square complex matrix that is unitary within UNITARY_EPS.

    Arguments:
        entries: dim x dim matrix, row-major. Copied and frozen on
            construction.
    """
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] == 0:
            raise DomainError(f'operator must be a non-empty square matrix, got shape {entries.shape}')
        if not np.all(np.isfinite(entries)):
            raise DomainError('operator entries must be finite')
        if not is_unitary(entries):
            raise DomainError('operator is not unitary')
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __repr__(self):
        return f'OperatorMatrix(dim={self.dim})'


@dataclass(frozen=True, eq=False)
class RootsOfUnity:
    """
    The r-th roots of unity w_k = exp(i 2 pi k / r), in index order.
    """
    radix: int
    values: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class GateParams:
    """
    Parameters of a controlled modulo-add gate A_{h,k}.

    Arguments:
        h: Control value. The target is modified only when the control
            qudit is in |h>.
        k: Addend applied to the target, modulo radix. k=0 is the identity.
    """
    h: int
    k: int

    def validate(self, radix: int):
        if not 0 <= self.h < radix:
            raise DomainError(f'control value h={self.h} out of range for radix {radix}')
        if not 0 <= self.k < radix:
            raise DomainError(f'addend k={self.k} out of range for radix {radix}')


def is_unitary(entries: np.ndarray, eps: float = UNITARY_EPS) -> bool:
    """
    Checks max|U^dagger U - I| <= eps.
    """
    entries = np.asarray(entries)
    product = entries.conj().T @ entries
    return bool(np.max(np.abs(product - np.eye(entries.shape[0]))) <= eps)


def identity(dim: int) -> OperatorMatrix:
    if dim < 1:
        raise DomainError(f'identity needs dim >= 1, got {dim}')
    return OperatorMatrix(np.eye(dim, dtype=np.complex128))


def _check_radix(r: int):
    if not isinstance(r, (int, np.integer)) or r < 2:
        raise DomainError(f'radix must be an integer >= 2, got {r}')


def roots_of_unity(r: int) -> RootsOfUnity:
    _check_radix(r)
    # Closed form per k, repeated multiplication drifts at larger r
    values = np.exp(2j * np.pi * np.arange(r) / r)
    values[0] = 1
    values.setflags(write=False)
    return RootsOfUnity(r, values)


def chrestenson(r: int) -> OperatorMatrix:
    """
    Radix-r Chrestenson gate C_r. Entry (k, j) is w_k^j / sqrt(r); for r=2
    this is the Hadamard gate.
    """
    roots = roots_of_unity(r).values
    k = np.arange(r)
    # w_k^j = w_{kj mod r}, which avoids computing powers
    return OperatorMatrix(roots[np.outer(k, k) % r] / math.sqrt(r))


def mod_add(r: int, k: int) -> OperatorMatrix:
    """
    Modulo-add gate M_k: |x> -> |(x + k) mod r>. M_0 is the identity.
    """
    _check_radix(r)
    if not 0 <= k < r:
        raise DomainError(f'addend k={k} out of range for radix {r}')
    return OperatorMatrix(np.roll(np.eye(r, dtype=np.complex128), k, axis=0))


def controlled_mod_add(r: int, params: GateParams) -> OperatorMatrix:
    """
    Controlled modulo-add gate A_{h,k}: block diagonal with D_h = M_k and
    D_i = I_r for every other control value i.
    """
    _check_radix(r)
    params.validate(r)
    return controlled_mod_add_multi(r, [params])


def controlled_mod_add_multi(r: int, pairs: Sequence[GateParams]) -> OperatorMatrix:
    """
    Combined gate A_{(h1,h2,...),(k1,k2,...)}: block D_h = M_k for each
    given pair, identity blocks elsewhere. Control values must be distinct.
    When they are, this equals the product of the individual A_{h,k} gates
    in any order.
    """
    _check_radix(r)
    blocks = [0] * r
    seen = set()
    for params in pairs:
        params.validate(r)
        if params.h in seen:
            raise DomainError(f'control value h={params.h} used twice')
        seen.add(params.h)
        blocks[params.h] = params.k

    entries = np.zeros((r * r, r * r), dtype=np.complex128)
    for h, k in enumerate(blocks):
        entries[h * r:(h + 1) * r, h * r:(h + 1) * r] = np.roll(np.eye(r), k, axis=0)
    return OperatorMatrix(entries)


def compose(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """
    Matrix product a * b, i.e. b is applied first.
    """
    if a.dim != b.dim:
        raise DomainError(f'cannot compose {a.dim}x{a.dim} with {b.dim}x{b.dim}')
    return OperatorMatrix(a.entries @ b.entries)


def matrix_tensor(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """
    Kronecker product a (x) b, a acting on the more significant wires.
    """
    return OperatorMatrix(np.kron(a.entries, b.entries))


def apply(u: OperatorMatrix, s: QuditState) -> QuditState:
    if u.dim != s.dim:
        raise DomainError(f'{u.dim}x{u.dim} operator cannot act on a state of dimension {s.dim}')
    return QuditState(s.radix, s.wires, u.entries @ s.amplitudes)
