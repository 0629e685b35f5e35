"""
Two-qudit circuits built from Chrestenson and controlled modulo-add gates,
and the partial/full entanglement generators made of them.

Gates are listed in diagram order (leftmost applied first). Controlled
gates always control on wire 0 and target wire 1.
"""

from dataclasses import dataclass, field
import itertools
import json
import logging
import math
from typing import Union

from quditops import operators
from quditops.errors import CircuitParseError, DomainError
from quditops.operators import GateParams, OperatorMatrix
from quditops.state import DigitString, QuditState, basis_state, ket

logger = logging.getLogger(__name__)

# Digit alphabet of the CLI caps radix here
MAX_RADIX = 36


@dataclass(frozen=True)
class ChrestensonOnWire:
    """
    Chrestenson gate C_r on a single wire, identity on the other.
    """
    wire: int

    def validate(self, radix: int):
        if self.wire not in (0, 1):
            raise DomainError(f'Chrestenson wire must be 0 or 1, got {self.wire}')

    def matrix(self, radix: int) -> OperatorMatrix:
        c = operators.chrestenson(radix)
        i = operators.identity(radix)
        return operators.matrix_tensor(c, i) if self.wire == 0 else operators.matrix_tensor(i, c)


@dataclass(frozen=True)
class ControlledModAdd:
    """
    Controlled modulo-add gate A_{h,k}, control on wire 0, target on wire 1.
    """
    h: int
    k: int

    @property
    def params(self) -> GateParams:
        return GateParams(self.h, self.k)

    def validate(self, radix: int):
        self.params.validate(radix)

    def matrix(self, radix: int) -> OperatorMatrix:
        return operators.controlled_mod_add(radix, self.params)


GateSpec = Union[ChrestensonOnWire, ControlledModAdd]


@dataclass(frozen=True)
class Circuit:
    """
    Ordered gate list over two qudit wires.

    Arguments:
        radix: Levels per qudit.
        gates: Gates in diagram order, i.e. gates[0] acts first.
    """
    radix: int
    gates: tuple[GateSpec, ...] = ()
    wires: int = field(default=2, init=False)

    def __post_init__(self):
        if not isinstance(self.radix, int) or not 2 <= self.radix <= MAX_RADIX:
            raise DomainError(f'radix must be in [2, {MAX_RADIX}], got {self.radix}')
        object.__setattr__(self, 'gates', tuple(self.gates))
        for gate in self.gates:
            gate.validate(self.radix)


@dataclass(frozen=True)
class GeneratorSpec:
    """
    Controlled modulo-add gates that follow the Chrestenson gate of an
    entanglement generator.

    Arguments:
        pairs: (h, k) parameters in circuit order. Plain (h, k) tuples are
            accepted and converted. Control values must be pairwise distinct,
            addends pairwise distinct and nonzero; at most radix-1 pairs.
    """
    pairs: tuple[GateParams, ...]

    def __post_init__(self):
        pairs = tuple(p if isinstance(p, GateParams) else GateParams(*p) for p in self.pairs)
        object.__setattr__(self, 'pairs', pairs)

    def validate(self, radix: int):
        if not 1 <= len(self.pairs) <= radix - 1:
            raise DomainError(f'generator needs 1 to {radix - 1} gates for radix {radix}, got {len(self.pairs)}')
        for params in self.pairs:
            params.validate(radix)
            if params.k == 0:
                raise DomainError(f'generator gate with h={params.h} has k=0')
        hs = [p.h for p in self.pairs]
        ks = [p.k for p in self.pairs]
        if len(set(hs)) != len(hs):
            raise DomainError(f'generator control values must differ, got {hs}')
        if len(set(ks)) != len(ks):
            raise DomainError(f'generator addends must differ, got {ks}')

    def is_full(self, radix: int) -> bool:
        return len(self.pairs) == radix - 1


def entanglement_generator(r: int, spec: GeneratorSpec) -> Circuit:
    """
    C_r on wire 0 followed by one A_{h,k} per pair of spec. With r-1 pairs
    this is a full (maximal) entanglement generator, with fewer it is a
    partial one.
    """
    spec.validate(r)
    gates = [ChrestensonOnWire(0)] + [ControlledModAdd(p.h, p.k) for p in spec.pairs]
    return Circuit(r, tuple(gates))


def partial_generator(r: int, spec: GeneratorSpec) -> Circuit:
    if spec.is_full(r):
        raise DomainError(f'{len(spec.pairs)} gates make a full generator for radix {r}')
    return entanglement_generator(r, spec)


def full_generator(r: int, spec: GeneratorSpec) -> Circuit:
    if not spec.is_full(r):
        raise DomainError(f'full generator for radix {r} needs {r - 1} gates, got {len(spec.pairs)}')
    return entanglement_generator(r, spec)


def bell_generator() -> Circuit:
    """
    Hadamard on wire 0, then CNOT: the r=2 entanglement generator.
    """
    return entanglement_generator(2, GeneratorSpec(((1, 1),)))


def bell_state(x: int, z: int) -> QuditState:
    """
    Bell state |B_xz>, i.e. the Bell generator's output for input |xz>:
    |B_00> = (|00> + |11>)/sqrt(2), |B_01> = (|01> + |10>)/sqrt(2),
    |B_10> = (|00> - |11>)/sqrt(2), |B_11> = (|01> - |10>)/sqrt(2).
    """
    if x not in (0, 1) or z not in (0, 1):
        raise DomainError(f'Bell state index must be binary, got {x}{z}')
    a = 1 / math.sqrt(2)
    sign = -a if x else a
    if z == 0:
        return ket(2, {'00': a, '11': sign})
    return ket(2, {'01': a, '10': sign})


def transfer_matrix(c: Circuit) -> OperatorMatrix:
    """
    Overall unitary of a circuit: the product of its gate matrices, last gate
    leftmost. An empty circuit gives the identity.
    """
    result = operators.identity(c.radix ** 2)
    for gate in c.gates:
        result = operators.compose(gate.matrix(c.radix), result)
    logger.debug('compiled %d gate(s) at radix %d', len(c.gates), c.radix)
    return result


def run(c: Circuit, initial: QuditState) -> QuditState:
    if initial.radix != c.radix or initial.wires != 2:
        raise DomainError(f'circuit expects 2 radix-{c.radix} wires, '
                          f'got {initial.wires} radix-{initial.radix} wire(s)')
    return operators.apply(transfer_matrix(c), initial)


def table_outputs(c: Circuit) -> list[tuple[DigitString, QuditState]]:
    """
    Runs every basis input through the circuit, in lexicographic order
    |00>, |01>, ... of the inputs.
    """
    u = transfer_matrix(c)
    return [(digits, operators.apply(u, basis_state(c.radix, 2, digits)))
            for digits in itertools.product(range(c.radix), repeat=2)]


def circuit_to_dict(c: Circuit) -> dict:
    gates = []
    for gate in c.gates:
        if isinstance(gate, ChrestensonOnWire):
            gates.append({'type': 'chrestenson', 'wire': gate.wire})
        else:
            gates.append({'type': 'cmodadd', 'h': gate.h, 'k': gate.k})
    return {'radix': c.radix, 'gates': gates}


def circuit_from_dict(data) -> Circuit:
    """
    Parses the circuit format:
    {"radix": 4, "gates": [{"type": "chrestenson", "wire": 0},
                           {"type": "cmodadd", "h": 3, "k": 1}]}

    Raises CircuitParseError naming the gate index on bad gates.
    """
    if not isinstance(data, dict):
        raise CircuitParseError('circuit must be a JSON object')
    radix = data.get('radix')
    if not isinstance(radix, int) or isinstance(radix, bool) or not 2 <= radix <= MAX_RADIX:
        raise CircuitParseError(f'radix must be an integer in [2, {MAX_RADIX}], got {radix!r}')
    raw_gates = data.get('gates', [])
    if not isinstance(raw_gates, list):
        raise CircuitParseError('gates must be a list')

    gates = []
    for index, raw in enumerate(raw_gates):
        if not isinstance(raw, dict):
            raise CircuitParseError('gate must be a JSON object', index)
        kind = raw.get('type')
        try:
            if kind == 'chrestenson':
                gate = ChrestensonOnWire(_int_field(raw, 'wire', index))
            elif kind == 'cmodadd':
                gate = ControlledModAdd(_int_field(raw, 'h', index), _int_field(raw, 'k', index))
            else:
                raise CircuitParseError(f'unknown gate type {kind!r}', index)
            gate.validate(radix)
        except DomainError as e:
            raise CircuitParseError(str(e), index) from e
        gates.append(gate)
    return Circuit(radix, tuple(gates))


def _int_field(raw: dict, name: str, index: int) -> int:
    value = raw.get(name)
    if not isinstance(value, int) or isinstance(value, bool):
        raise CircuitParseError(f'field {name!r} must be an integer, got {value!r}', index)
    return value


def circuit_to_json(c: Circuit) -> str:
    return json.dumps(circuit_to_dict(c), indent=2, sort_keys=True)


def circuit_from_json(text: str | bytes) -> Circuit:
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as e:
            raise CircuitParseError(f'not UTF-8: {e.reason} at byte {e.start}') from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CircuitParseError(f'invalid JSON: {e}') from e
    return circuit_from_dict(data)


def load_circuit(path: str) -> Circuit:
    with open(path, 'rb') as f:
        return circuit_from_json(f.read())
