"""
Exhaustive enumeration of full entanglement generators.

A full generator for radix r is C_r on wire 0 followed by r-1 gates A_{h,k}
with distinct control values h and distinct nonzero addends k. There are
prod_{i=2..r} (i^2 - i) = r! (r-1)! such circuits when gate order counts.
Because A gates with distinct controls commute, only r! distinct transfer
matrices exist. This module enumerates both and checks the numbers by brute
force.
"""

from dataclasses import dataclass, field
import itertools
import logging
import math
from multiprocessing import Pool
from typing import Optional

import numpy as np

from quditops import circuits, operators
from quditops.circuits import Circuit, ControlledModAdd, GeneratorSpec
from quditops.entanglement import EntanglementClass, classify
from quditops.errors import DomainError, VerificationError
from quditops.operators import GateParams
from quditops.state import QuditState, Tolerance, format_digits, index_to_digits

logger = logging.getLogger(__name__)

# Entrywise equality of transfer matrices
DEDUP_EPS = 1e-12
# Hash grid for bucketing transfer matrices before exact comparison
DEDUP_GRID = 1e-10


@dataclass(frozen=True)
class VerifyConfig:
    """
    Brute-force verification settings.

    Arguments:
        max_radix: Largest radix brute-forced by default. At r=6 there are
            already 86400 circuit forms over 36x36 matrices.
        allow_large_radix: Brute-force even above max_radix.
        workers: Number of processes computing transfer matrices. 1 computes
            them in this process.
        tol: Tolerance for the maximal entanglement check of outputs.
    """
    max_radix: int = 6
    allow_large_radix: bool = False
    workers: int = 1
    tol: Tolerance = field(default_factory=Tolerance)


@dataclass(frozen=True)
class VerificationFailure:
    """
    Arguments:
        kind: 'count', 'group' or 'non_maximal'.
        detail: Human-readable description.
        spec: (h, k) pairs of the offending generator, in circuit order.
        input: Basis input that produced a bad output, as a digit string.
    """
    kind: str
    detail: str
    spec: Optional[tuple[tuple[int, int], ...]] = None
    input: Optional[str] = None


@dataclass
class EnumerationReport:
    """
    Result of verify_counts. Counts that were not brute-forced are None.
    """
    radix: int
    circuit_form_count: Optional[int]
    unique_transfer_count: Optional[int]
    formula_circuit_count: int
    formula_unique_count: int
    all_maximal: Optional[bool]
    failures: list[VerificationFailure] = field(default_factory=list)
    brute_forced: bool = True
    skipped_reason: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.brute_forced and not self.failures

    def require_passed(self):
        if not self.passed:
            raise VerificationError(self)


def _check_radix(r: int):
    if not isinstance(r, int) or r < 2:
        raise DomainError(f'radix must be an integer >= 2, got {r}')


def formula_circuit_count(r: int) -> int:
    """
    Number of full generator circuits when gate order matters.
    """
    _check_radix(r)
    return math.prod(i * i - i for i in range(2, r + 1))


def formula_unique_count(r: int) -> int:
    """
    Number of distinct full generator transfer matrices, r!.
    """
    _check_radix(r)
    return math.factorial(r)


def enumerate_generator_sets(r: int) -> list[GeneratorSpec]:
    """
    All full generators up to gate order: r-1 of the r control values, each
    assigned one of the addends 1..r-1. Pairs within a set are sorted by h and
    the sets are sorted lexicographically.
    """
    _check_radix(r)
    specs = []
    for controls in itertools.combinations(range(r), r - 1):
        for addends in itertools.permutations(range(1, r)):
            specs.append(tuple(zip(controls, addends)))
    specs.sort()
    return [GeneratorSpec(pairs) for pairs in specs]


def enumerate_circuit_forms(r: int) -> list[Circuit]:
    """
    Every gate ordering of every generator set, grouped by set in canonical
    order.
    """
    return [circuits.entanglement_generator(r, GeneratorSpec(order))
            for spec in enumerate_generator_sets(r)
            for order in itertools.permutations(spec.pairs)]


def _transfer_entries(c: Circuit) -> np.ndarray:
    return circuits.transfer_matrix(c).entries


def _quantize(m: np.ndarray) -> bytes:
    grid = np.round(np.stack([m.real, m.imag]) / DEDUP_GRID).astype(np.int64)
    return grid.tobytes()


def _spec_of(c: Circuit) -> tuple[tuple[int, int], ...]:
    return tuple((g.h, g.k) for g in c.gates if isinstance(g, ControlledModAdd))


def transfer_groups(r: int, workers: int = 1) -> list[tuple[np.ndarray, list[Circuit]]]:
    """
    Groups all circuit forms by transfer matrix. Returns one
    (transfer matrix, circuits) pair per distinct matrix, in order of first
    appearance.
    """
    forms = enumerate_circuit_forms(r)
    if workers > 1:
        with Pool(workers) as pool:
            matrices = pool.map(_transfer_entries, forms)
    else:
        matrices = [_transfer_entries(c) for c in forms]

    buckets: dict[bytes, list[int]] = {}
    groups: list[tuple[np.ndarray, list[Circuit]]] = []
    for c, m in zip(forms, matrices):
        bucket = buckets.setdefault(_quantize(m), [])
        for g in bucket:
            if np.max(np.abs(groups[g][0] - m)) <= DEDUP_EPS:
                groups[g][1].append(c)
                break
        else:
            bucket.append(len(groups))
            groups.append((m, [c]))
    logger.debug('radix %d: %d forms in %d buckets, %d distinct transfers',
                 r, len(forms), len(buckets), len(groups))
    return groups


def _maximal_failures(r: int, transfer: np.ndarray, c: Circuit, tol: Tolerance) -> list[VerificationFailure]:
    failures = []
    for index in range(r * r):
        # Column j of the transfer matrix is the output for basis input j
        output = QuditState(r, 2, transfer[:, index])
        tag = classify(output, tol).tag
        if tag != EntanglementClass.MAXIMAL:
            failures.append(VerificationFailure(
                kind='non_maximal',
                detail=f'output is {tag.value}',
                spec=_spec_of(c),
                input=format_digits(index_to_digits(index, r, 2)),
            ))
    return failures


def verify_counts(r: int, config: VerifyConfig = VerifyConfig()) -> EnumerationReport:
    """
    Brute-forces all full generators of radix r and checks them against the
    counting formulas, and that every one of them maximally entangles every
    basis input.

    Forms sharing a transfer matrix produce identical outputs, so the
    entanglement check runs once per distinct transfer matrix.
    """
    _check_radix(r)
    report = EnumerationReport(
        radix=r,
        circuit_form_count=None,
        unique_transfer_count=None,
        formula_circuit_count=formula_circuit_count(r),
        formula_unique_count=formula_unique_count(r),
        all_maximal=None,
    )
    if r > config.max_radix and not config.allow_large_radix:
        report.brute_forced = False
        report.skipped_reason = f'radix {r} exceeds max_radix {config.max_radix}'
        logger.info('radix %d: formulas only, %s', r, report.skipped_reason)
        return report

    groups = transfer_groups(r, config.workers)
    report.circuit_form_count = sum(len(members) for _, members in groups)
    report.unique_transfer_count = len(groups)

    if report.circuit_form_count != report.formula_circuit_count:
        report.failures.append(VerificationFailure(
            kind='count',
            detail=f'{report.circuit_form_count} circuit forms, formula gives {report.formula_circuit_count}',
        ))
    if report.unique_transfer_count != report.formula_unique_count:
        report.failures.append(VerificationFailure(
            kind='count',
            detail=f'{report.unique_transfer_count} distinct transfers, formula gives {report.formula_unique_count}',
        ))

    orderings = math.factorial(r - 1)
    maximal_failures = []
    for transfer, members in groups:
        if len(members) != orderings:
            report.failures.append(VerificationFailure(
                kind='group',
                detail=f'transfer shared by {len(members)} circuit forms, expected {orderings}',
                spec=_spec_of(members[0]),
            ))
        maximal_failures += _maximal_failures(r, transfer, members[0], config.tol)
    report.all_maximal = not maximal_failures
    report.failures += maximal_failures

    logger.info('radix %d: %d circuit forms, %d distinct transfers, %d failure(s)',
                r, report.circuit_form_count, report.unique_transfer_count, len(report.failures))
    return report


def verify_commutativity(r: int) -> bool:
    """
    Checks A_{h1,k1} A_{h2,k2} = A_{h2,k2} A_{h1,k1} for all h1 != h2 and
    nonzero k1, k2. The matrices are 0/1 permutations, so equality is exact.
    """
    _check_radix(r)
    gates = {(h, k): operators.controlled_mod_add(r, GateParams(h, k)).entries
             for h in range(r) for k in range(1, r)}
    for (h1, k1), a in gates.items():
        for (h2, k2), b in gates.items():
            if h1 == h2:
                continue
            if not np.array_equal(a @ b, b @ a):
                logger.info('radix %d: A_{%d,%d} and A_{%d,%d} do not commute', r, h1, k1, h2, k2)
                return False
    return True
