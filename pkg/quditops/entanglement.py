"""
Entanglement analysis of two-qudit pure states.

A two-qudit state sum_ij M[i][j] |ij> is classified from the singular values
of its coefficient matrix M (its Schmidt values):

* ProductState: exactly one nonzero Schmidt value.
* MaximallyEntangled: all r Schmidt values equal 1/sqrt(r).
* PartiallyEntangled: 1 < rank < r and every nonzero amplitude of the state
  has the same magnitude. Some measurement outcomes of one qudit pin the
  other to a basis state, others leave it in a superposition.
* NonMaximallyEntangled: any other entangled state, typically one with
  imbalanced amplitudes.
"""

from dataclasses import dataclass, field
import enum
import math

import numpy as np

from quditops.errors import DomainError
from quditops.state import DEFAULT_TOL, QuditState, Tolerance, conditional_state, probabilities


# Singular values in every supported flow are either exactly 0 or >= 1/r,
# anything between 1e-9 and this is a numerical failure
RANK_TOL = 1e-7


class EntanglementClass(enum.Enum):
    PRODUCT = 'ProductState'
    PARTIAL = 'PartiallyEntangled'
    MAXIMAL = 'MaximallyEntangled'
    NON_MAXIMAL = 'NonMaximallyEntangled'


@dataclass(frozen=True, eq=False)
class CoefficientMatrix:
    """
    r x r matrix M with state = sum_ij M[i][j] |ij>. Row index is wire 0.
    """
    radix: int
    entries: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class SchmidtData:
    """
    Arguments:
        singular_values: Schmidt values, non-increasing, one per level.
        rank: Number of Schmidt values above RANK_TOL.
    """
    singular_values: tuple[float, ...]
    rank: int


@dataclass(frozen=True)
class Classification:
    tag: EntanglementClass
    schmidt: SchmidtData


@dataclass(frozen=True)
class CorrelationEntry:
    """
    One possible measurement outcome of the measured wire.

    Arguments:
        outcome: Basis value read on the measured wire.
        probability: Probability of reading it.
        conditional: State of the other qudit after that reading.
        pinned: Whether the conditional state is a single basis state, i.e.
            the reading fully determines the other qudit.
    """
    outcome: int
    probability: float
    conditional: QuditState
    pinned: bool


@dataclass(frozen=True)
class CorrelationReport:
    wire: int
    entries: tuple[CorrelationEntry, ...]

    @property
    def pinned_count(self) -> int:
        return sum(1 for e in self.entries if e.pinned)

    @property
    def unpinned_count(self) -> int:
        return sum(1 for e in self.entries if not e.pinned)


@dataclass(frozen=True)
class EntanglementReport:
    """
    Everything the analysis knows about a two-qudit state.

    Arguments:
        classification: Tag plus Schmidt data.
        correlation: Per-outcome measurement report of one wire.
        reduced_density_wire0: Partial trace over wire 1.
        reduced_density_wire1: Partial trace over wire 0.
        factorable_terms: Number of basis terms sharing their wire-1 value
            with another term.
    """
    classification: Classification
    correlation: CorrelationReport
    reduced_density_wire0: np.ndarray = field(repr=False)
    reduced_density_wire1: np.ndarray = field(repr=False)
    factorable_terms: int = 0


def _require_pair(s: QuditState):
    if s.wires != 2:
        raise DomainError(f'entanglement analysis needs a two-qudit state, got {s.wires} wire(s)')


def coefficient_matrix(s: QuditState) -> CoefficientMatrix:
    _require_pair(s)
    return CoefficientMatrix(s.radix, s.amplitudes.reshape(s.radix, s.radix))


def schmidt_data(s: QuditState, tol: Tolerance = DEFAULT_TOL) -> SchmidtData:
    """
    Schmidt values from the eigenvalues of M M^dagger.
    """
    m = coefficient_matrix(s).entries
    eigenvalues = np.linalg.eigvalsh(m @ m.conj().T)
    values = np.sqrt(np.clip(eigenvalues, 0, None))[::-1]
    rank = int(np.sum(values > RANK_TOL))
    return SchmidtData(tuple(float(v) for v in values), max(rank, 1))


def classify(s: QuditState, tol: Tolerance = DEFAULT_TOL) -> Classification:
    schmidt = schmidt_data(s, tol)
    r = s.radix
    if schmidt.rank == 1:
        tag = EntanglementClass.PRODUCT
    elif all(abs(v - 1 / math.sqrt(r)) <= tol.eps for v in schmidt.singular_values):
        tag = EntanglementClass.MAXIMAL
    elif schmidt.rank < r and _uniform_amplitudes(s, tol):
        tag = EntanglementClass.PARTIAL
    else:
        tag = EntanglementClass.NON_MAXIMAL
    return Classification(tag, schmidt)


def _uniform_amplitudes(s: QuditState, tol: Tolerance) -> bool:
    magnitudes = np.abs(s.amplitudes)
    nonzero = magnitudes[magnitudes > tol.eps]
    return bool(np.max(nonzero) - np.min(nonzero) <= tol.eps)


def reduced_density(s: QuditState, wire: int) -> np.ndarray:
    """
    Reduced density matrix of `wire`, tracing out the other qudit.
    """
    if wire not in (0, 1):
        raise DomainError(f'wire must be 0 or 1, got {wire}')
    m = coefficient_matrix(s).entries
    if wire == 0:
        return m @ m.conj().T
    return m.T @ m.conj()


def correlation_report(s: QuditState, tol: Tolerance = DEFAULT_TOL, wire: int = 1) -> CorrelationReport:
    """
    For each possible reading of `wire`, the state the other qudit is left in
    and whether that state is pinned to a single basis value.
    """
    if wire not in (0, 1):
        raise DomainError(f'wire must be 0 or 1, got {wire}')
    coeffs = coefficient_matrix(s).entries
    outcome_probs = np.sum(np.abs(coeffs) ** 2, axis=1 if wire == 0 else 0)
    entries = []
    for outcome, probability in enumerate(outcome_probs.tolist()):
        if probability < tol.eps:
            continue
        conditional = conditional_state(s, wire, outcome, tol)
        pinned = bool(np.max(probabilities(conditional)) >= 1 - tol.eps)
        entries.append(CorrelationEntry(outcome, probability, conditional, pinned))
    return CorrelationReport(wire, tuple(entries))


def factorable_terms(s: QuditState, tol: Tolerance = DEFAULT_TOL) -> int:
    """
    Counts the basis terms whose wire-1 value is shared with another term.
    Those terms factor as (sum of wire-0 states) (x) |j>; for the
    A_{3,1} generator output (|00> + |10> + |20> + |31>)/2 this is 3.
    """
    m = np.abs(coefficient_matrix(s).entries) > tol.eps
    per_column = m.sum(axis=0)
    return int(per_column[per_column > 1].sum())


def is_maximally_superposed(s: QuditState, tol: Tolerance = DEFAULT_TOL) -> bool:
    """
    True if every basis state of a single qudit has probability 1/r.
    """
    if s.wires != 1:
        raise DomainError(f'superposition check needs a single qudit, got {s.wires} wires')
    return bool(np.all(np.abs(probabilities(s) - 1 / s.radix) <= tol.eps))


def analyze(s: QuditState, tol: Tolerance = DEFAULT_TOL, wire: int = 1) -> EntanglementReport:
    return EntanglementReport(
        classification=classify(s, tol),
        correlation=correlation_report(s, tol, wire),
        reduced_density_wire0=reduced_density(s, 0),
        reduced_density_wire1=reduced_density(s, 1),
        factorable_terms=factorable_terms(s, tol),
    )
