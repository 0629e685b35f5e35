"""
Pretty printing and JSON codecs for states, operators and reports.
"""

import json
import math
from typing import Optional

import numpy as np

from quditops.entanglement import EntanglementReport
from quditops.enumeration import EnumerationReport
from quditops.errors import DomainError
from quditops.operators import UNITARY_EPS, OperatorMatrix
from quditops.state import STATE_EPS, QuditState, format_digits, index_to_digits


_KET_SYMBOLS = [
    (1, '1'),
    (1j, 'i'),
    (0.5, '1/2'),
    (0.5j, 'i/2'),
    (1 / math.sqrt(2), '1/√2'),
]


def _symbol(value: complex, symbols: list[tuple[complex, str]], eps: float) -> Optional[tuple[bool, str]]:
    """
    Returns (negative, text) if value is within eps of a symbol or its
    negation, else None.
    """
    for target, text in symbols:
        if abs(value - target) <= eps:
            return False, text
        if abs(value + target) <= eps:
            return True, text
    return None


def _decimal(value: complex) -> str:
    return f'({value.real:.6f}{value.imag:+.6f}i)'


def format_ket(s: QuditState, eps: float = STATE_EPS) -> str:
    """
    Renders a state as e.g. '1/2|00> + i/2|13> - 1/2|22> - i/2|31>'.
    Terms with |a| <= eps are dropped.
    """
    out = ''
    for index, amplitude in enumerate(s.amplitudes.tolist()):
        if abs(amplitude) <= eps:
            continue
        label = format_digits(index_to_digits(index, s.radix, s.wires))
        symbol = _symbol(amplitude, _KET_SYMBOLS, eps)
        negative, text = symbol if symbol else (False, _decimal(amplitude))
        if not out:
            out = f'{"-" if negative else ""}{text}|{label}>'
        else:
            out += f' {"-" if negative else "+"} {text}|{label}>'
    return out


def format_matrix(u: OperatorMatrix, radix: Optional[int] = None, eps: float = UNITARY_EPS) -> str:
    """
    Renders an operator one row per line. Entries that are 0, 1, i, 1/2,
    1/sqrt(2) or 1/sqrt(radix) (times a sign or i) are printed symbolically.
    """
    symbols = _KET_SYMBOLS + [(1j / math.sqrt(2), 'i/√2')]
    if radix is not None:
        symbols += [(1 / math.sqrt(radix), f'1/√{radix}'), (1j / math.sqrt(radix), f'i/√{radix}')]

    cells = []
    for row in u.entries.tolist():
        line = []
        for value in row:
            if abs(value) <= eps:
                line.append('0')
                continue
            symbol = _symbol(value, symbols, eps)
            line.append(f'{"-" if symbol[0] else ""}{symbol[1]}' if symbol else _decimal(value))
        cells.append(line)
    width = max(len(cell) for line in cells for cell in line)
    return '\n'.join('  '.join(cell.rjust(width) for cell in line) for line in cells)


def _complex_to_dict(value: complex) -> dict:
    return {'re': float(value.real), 'im': float(value.imag)}


def _complex_from_dict(data) -> complex:
    try:
        return complex(float(data['re']), float(data['im']))
    except (KeyError, TypeError, ValueError) as e:
        raise DomainError(f'invalid complex value {data!r}') from e


def _matrix_to_list(m: np.ndarray) -> list:
    return [[_complex_to_dict(v) for v in row] for row in m.tolist()]


def state_to_dict(s: QuditState) -> dict:
    return {
        'radix': s.radix,
        'wires': s.wires,
        'amplitudes': [_complex_to_dict(a) for a in s.amplitudes.tolist()],
    }


def state_from_dict(data: dict) -> QuditState:
    amplitudes = [_complex_from_dict(a) for a in data['amplitudes']]
    return QuditState(int(data['radix']), int(data['wires']), np.array(amplitudes, dtype=np.complex128))


def operator_to_dict(u: OperatorMatrix) -> dict:
    return {'dim': u.dim, 'entries': _matrix_to_list(u.entries)}


def operator_from_dict(data: dict) -> OperatorMatrix:
    entries = [[_complex_from_dict(v) for v in row] for row in data['entries']]
    u = OperatorMatrix(np.array(entries, dtype=np.complex128))
    if u.dim != int(data['dim']):
        raise DomainError(f'operator declares dim {data["dim"]} but has {u.dim} rows')
    return u


def entanglement_report_to_dict(report: EntanglementReport) -> dict:
    schmidt = report.classification.schmidt
    correlation = report.correlation
    return {
        'classification': report.classification.tag.value,
        'schmidt_values': list(schmidt.singular_values),
        'schmidt_rank': schmidt.rank,
        'measured_wire': correlation.wire,
        'pinned': [{
            'outcome': e.outcome,
            'prob': e.probability,
            'conditional': state_to_dict(e.conditional),
            'pinned': e.pinned,
        } for e in correlation.entries],
        'pinned_count': correlation.pinned_count,
        'unpinned_count': correlation.unpinned_count,
        'factorable_terms': report.factorable_terms,
        'reduced_density_wire0': _matrix_to_list(report.reduced_density_wire0),
        'reduced_density_wire1': _matrix_to_list(report.reduced_density_wire1),
    }


def enumeration_report_to_dict(report: EnumerationReport) -> dict:
    data = {
        'radix': report.radix,
        'circuit_forms': report.circuit_form_count,
        'unique_transfers': report.unique_transfer_count,
        'formula_circuit_count': report.formula_circuit_count,
        'formula_unique_count': report.formula_unique_count,
        'all_maximal': report.all_maximal,
        'failures': [{
            'kind': f.kind,
            'detail': f.detail,
            'spec': [list(pair) for pair in f.spec] if f.spec is not None else None,
            'input': f.input,
        } for f in report.failures],
    }
    if not report.brute_forced:
        data['skipped_reason'] = report.skipped_reason
    return data


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)
