import itertools
import json

import numpy as np
import pytest

from quditops import circuits
from quditops.circuits import ChrestensonOnWire, Circuit, ControlledModAdd, GeneratorSpec
from quditops.errors import CircuitParseError, DomainError
from quditops.operators import chrestenson, controlled_mod_add_multi, GateParams, identity, matrix_tensor
from quditops.state import basis_state, ket, states_equal
from tests.common import (
    FULL_FOUR,
    FULL_FOUR_00,
    FULL_FOUR_JSON,
    PARTIAL_ONE,
    PARTIAL_ONE_00,
    PARTIAL_ONE_JSON,
    PARTIAL_TWO,
    PARTIAL_TWO_00,
    generator_output,
)

# Rows of the radix-4 generator tables that carry +-i phases
TABLE_ROWS = [
    (PARTIAL_ONE, '20', {'00': 0.5, '10': -0.5, '20': 0.5, '31': -0.5}),
    (PARTIAL_ONE, '13', {'03': 0.5, '13': 0.5j, '23': -0.5, '30': -0.5j}),
    (PARTIAL_ONE, '31', {'01': 0.5, '11': -0.5j, '21': -0.5, '32': 0.5j}),
    (PARTIAL_TWO, '11', {'01': 0.5, '11': 0.5j, '23': -0.5, '32': -0.5j}),
    (FULL_FOUR, '32', {'02': 0.5, '11': -0.5j, '20': -0.5, '33': 0.5j}),
    (FULL_FOUR, '00', {'00': 0.5, '13': 0.5, '22': 0.5, '31': 0.5}),
]


def test_generator_structure():
    c = circuits.entanglement_generator(4, GeneratorSpec(FULL_FOUR))
    assert c.gates == (ChrestensonOnWire(0), ControlledModAdd(3, 1), ControlledModAdd(2, 2), ControlledModAdd(1, 3))
    assert c.wires == 2


@pytest.mark.parametrize('pairs', [
    (),
    ((3, 1), (2, 1)),
    ((3, 1), (3, 2)),
    ((3, 0),),
    ((0, 1), (1, 2), (2, 3), (3, 1)),
    ((4, 1),),
])
def test_generator_spec_invalid(pairs):
    with pytest.raises(DomainError):
        circuits.entanglement_generator(4, GeneratorSpec(pairs))


def test_partial_and_full_generator():
    assert len(circuits.partial_generator(4, GeneratorSpec(PARTIAL_TWO)).gates) == 3
    assert len(circuits.full_generator(4, GeneratorSpec(FULL_FOUR)).gates) == 4
    with pytest.raises(DomainError):
        circuits.partial_generator(4, GeneratorSpec(FULL_FOUR))
    with pytest.raises(DomainError):
        circuits.full_generator(4, GeneratorSpec(PARTIAL_ONE))


def test_circuit_radix_range():
    with pytest.raises(DomainError):
        Circuit(1)
    with pytest.raises(DomainError):
        Circuit(37)


def test_transfer_matrix_empty_is_identity():
    np.testing.assert_array_equal(circuits.transfer_matrix(Circuit(3)).entries, np.eye(9))


def test_transfer_matrix_partial():
    u = circuits.transfer_matrix(circuits.entanglement_generator(4, GeneratorSpec(PARTIAL_ONE)))
    expected = controlled_mod_add_multi(4, [GateParams(3, 1)]).entries @ matrix_tensor(chrestenson(4), identity(4)).entries
    np.testing.assert_allclose(u.entries, expected, atol=1e-12)
    assert states_equal(circuits.run(circuits.entanglement_generator(4, GeneratorSpec(PARTIAL_ONE)),
                                     basis_state(4, 2, (0, 0))), PARTIAL_ONE_00)


def test_transfer_matrix_order_irrelevant():
    forward = circuits.transfer_matrix(circuits.entanglement_generator(4, GeneratorSpec(FULL_FOUR)))
    backward = circuits.transfer_matrix(circuits.entanglement_generator(4, GeneratorSpec(FULL_FOUR[::-1])))
    np.testing.assert_array_equal(forward.entries, backward.entries)


@pytest.mark.parametrize('pairs, expected', [
    (PARTIAL_ONE, PARTIAL_ONE_00),
    (PARTIAL_TWO, PARTIAL_TWO_00),
    (FULL_FOUR, FULL_FOUR_00),
])
def test_run_from_zero(pairs, expected):
    c = circuits.entanglement_generator(4, GeneratorSpec(pairs))
    assert states_equal(circuits.run(c, basis_state(4, 2, (0, 0))), expected)


@pytest.mark.parametrize('pairs, label, terms', TABLE_ROWS)
def test_run_table_rows(pairs, label, terms):
    c = circuits.entanglement_generator(4, GeneratorSpec(pairs))
    digits = (int(label[0]), int(label[1]))
    assert states_equal(circuits.run(c, basis_state(4, 2, digits)), ket(4, terms))


@pytest.mark.parametrize('pairs', [PARTIAL_ONE, PARTIAL_TWO, FULL_FOUR])
def test_table_outputs_all_rows(pairs):
    c = circuits.entanglement_generator(4, GeneratorSpec(pairs))
    rows = circuits.table_outputs(c)
    assert [digits for digits, _ in rows] == list(itertools.product(range(4), repeat=2))
    for (x, z), output in rows:
        assert states_equal(output, generator_output(4, pairs, x, z))


def test_run_rejects_wrong_radix():
    c = circuits.entanglement_generator(4, GeneratorSpec(PARTIAL_ONE))
    with pytest.raises(DomainError):
        circuits.run(c, basis_state(3, 2, (0, 0)))


def test_bell_generator_outputs():
    rows = circuits.table_outputs(circuits.bell_generator())
    for (x, z), output in rows:
        assert states_equal(output, circuits.bell_state(x, z))
    assert states_equal(circuits.bell_state(0, 1), ket(2, {'01': 2 ** -0.5, '10': 2 ** -0.5}))
    assert states_equal(circuits.bell_state(1, 1), ket(2, {'01': 2 ** -0.5, '10': -2 ** -0.5}))


def test_bell_state_index_range():
    with pytest.raises(DomainError):
        circuits.bell_state(2, 0)


def test_load_circuit_fixture():
    c = circuits.load_circuit(FULL_FOUR_JSON)
    assert c.radix == 4
    assert c == circuits.entanglement_generator(4, GeneratorSpec(FULL_FOUR))
    assert circuits.load_circuit(PARTIAL_ONE_JSON).gates[1] == ControlledModAdd(3, 1)


def test_json_round_trip():
    c = circuits.entanglement_generator(5, GeneratorSpec(((0, 2), (4, 1))))
    text = circuits.circuit_to_json(c)
    assert circuits.circuit_from_json(text) == c
    assert circuits.circuit_to_json(circuits.circuit_from_json(text)) == text


def test_parse_error_names_gate():
    data = {'radix': 4, 'gates': [{'type': 'chrestenson', 'wire': 0}, {'type': 'cmodadd', 'h': 4, 'k': 1}]}
    with pytest.raises(CircuitParseError, match='gate 1') as info:
        circuits.circuit_from_dict(data)
    assert info.value.gate_index == 1


@pytest.mark.parametrize('text, index', [
    ('{"radix": 4, "gates": [{"type": "swap"}]}', 0),
    ('{"radix": 4, "gates": [{"type": "cmodadd", "h": "3", "k": 1}]}', 0),
    ('{"radix": 4, "gates": [{"type": "chrestenson", "wire": 0}, {"type": "chrestenson", "wire": 2}]}', 1),
    ('{"radix": 4, "gates": [{"type": "chrestenson", "wire": 0}, 7]}', 1),
])
def test_parse_error_gate_index(text, index):
    with pytest.raises(CircuitParseError) as info:
        circuits.circuit_from_json(text)
    assert info.value.gate_index == index


def test_load_circuit_bytes(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_bytes(b'{"radix": 4, "gates": []}\xff')
    with pytest.raises(CircuitParseError, match='UTF-8') as info:
        circuits.load_circuit(str(path))
    assert info.value.gate_index is None

    assert circuits.circuit_from_json(b'{"radix": 4, "gates": []}').gates == ()


@pytest.mark.parametrize('text', ['not json', '[]', '{"radix": 1}', '{"radix": true}', '{"radix": 4, "gates": {}}'])
def test_parse_error_circuit(text):
    with pytest.raises(CircuitParseError) as info:
        circuits.circuit_from_json(text)
    assert info.value.gate_index is None


def test_circuit_to_dict_format():
    c = circuits.bell_generator()
    assert circuits.circuit_to_dict(c) == {
        'radix': 2,
        'gates': [{'type': 'chrestenson', 'wire': 0}, {'type': 'cmodadd', 'h': 1, 'k': 1}],
    }
    assert json.loads(circuits.circuit_to_json(c))['radix'] == 2
