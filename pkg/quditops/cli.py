"""
Command-line front end.

Data goes to stdout (JSON, or pretty kets/matrices for humans), diagnostics
to stderr. Exit codes: 0 success, 1 verification failure, 2 usage or parse
error.
"""

import argparse
import json
import logging
import sys
from typing import Optional

from quditops import _render, circuits, entanglement, enumeration, operators
from quditops.circuits import MAX_RADIX, Circuit
from quditops.errors import CircuitParseError, DomainError
from quditops.operators import GateParams
from quditops.state import basis_state, format_digits, parse_digits

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Raised for bad command-line input, maps to exit code 2."""
    pass


def _radix_arg(text: str) -> int:
    try:
        radix = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'radix must be an integer, got {text!r}')
    if not 2 <= radix <= MAX_RADIX:
        raise argparse.ArgumentTypeError(f'radix must be in [2, {MAX_RADIX}], got {radix}')
    return radix


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='quditops', description='Radix-r qudit entanglement generator toolkit.')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='Log more to stderr (repeat for debug).')
    sub = parser.add_subparsers(dest='command', required=True)

    gate = sub.add_parser('gate', help='Print a gate matrix.')
    gate.add_argument('kind', choices=['chrestenson', 'modadd', 'cmodadd'])
    gate.add_argument('--radix', '-r', type=_radix_arg, required=True)
    gate.add_argument('--h', type=int, help='Control value of cmodadd.')
    gate.add_argument('--k', type=int, help='Addend of modadd/cmodadd.')
    gate.add_argument('--format', choices=['json', 'pretty'], default='pretty')

    run = sub.add_parser('run', help='Evolve a basis input through a circuit.')
    run.add_argument('--circuit', required=True, help='Circuit JSON file, or - for stdin.')
    run.add_argument('--input', required=True, help='Basis input digits, e.g. 00.')
    run.add_argument('--format', choices=['json', 'pretty'], default='pretty')

    table = sub.add_parser('table', help='Outputs of a circuit for every basis input.')
    table.add_argument('--circuit', required=True, help='Circuit JSON file, or - for stdin.')
    table.add_argument('--format', choices=['json', 'tsv', 'pretty'], default='pretty')

    classify = sub.add_parser('classify', help='Entanglement report of a circuit output.')
    classify.add_argument('--circuit', required=True, help='Circuit JSON file, or - for stdin.')
    classify.add_argument('--input', required=True, help='Basis input digits, e.g. 00.')
    classify.add_argument('--wire', type=int, choices=[0, 1], default=1, help='Wire measured in the correlation report.')

    enumerate_ = sub.add_parser('enumerate', help='List full entanglement generators as circuit JSON lines.')
    enumerate_.add_argument('--radix', '-r', type=_radix_arg, required=True)
    enumerate_.add_argument('--forms', action='store_true', help='List every gate ordering, not just the sets.')
    enumerate_.add_argument('--max-radix-override', action='store_true',
                            help=f'Allow listing above radix {enumeration.VerifyConfig.max_radix}.')

    verify = sub.add_parser('verify', help='Brute-force the generator counting formulas.')
    verify.add_argument('--radix', '-r', type=_radix_arg, required=True)
    verify.add_argument('--max-radix-override', action='store_true',
                        help=f'Allow brute force above radix {enumeration.VerifyConfig.max_radix}.')
    verify.add_argument('--workers', type=int, default=1, help='Processes computing transfer matrices.')
    return parser


def _read_circuit(path: str) -> Circuit:
    if path == '-':
        return circuits.circuit_from_json(getattr(sys.stdin, 'buffer', sys.stdin).read())
    try:
        return circuits.load_circuit(path)
    except OSError as e:
        raise UsageError(f'--circuit: cannot read {path}: {e.strerror}') from e


def _input_state(c: Circuit, text: str):
    try:
        digits = parse_digits(text, c.radix)
    except DomainError as e:
        raise UsageError(f'--input: {e}') from e
    if len(digits) != 2:
        raise UsageError(f'--input: expected 2 digits, got {text!r}')
    return basis_state(c.radix, 2, digits)


def _require_param(value: Optional[int], flag: str, radix: int, kind: str) -> int:
    if value is None:
        raise UsageError(f'{flag} is required for {kind}')
    if not 0 <= value < radix:
        raise UsageError(f'{flag} {value} out of range for radix {radix}')
    return value


def cmd_gate(args) -> int:
    r = args.radix
    if args.kind == 'chrestenson':
        u = operators.chrestenson(r)
    elif args.kind == 'modadd':
        u = operators.mod_add(r, _require_param(args.k, '--k', r, args.kind))
    else:
        h = _require_param(args.h, '--h', r, args.kind)
        k = _require_param(args.k, '--k', r, args.kind)
        u = operators.controlled_mod_add(r, GateParams(h, k))

    if args.format == 'json':
        print(_render.dumps(_render.operator_to_dict(u)))
    else:
        print(_render.format_matrix(u, r))
    return EXIT_OK


def cmd_run(args) -> int:
    c = _read_circuit(args.circuit)
    output = circuits.run(c, _input_state(c, args.input))
    if args.format == 'json':
        print(_render.dumps(_render.state_to_dict(output)))
    else:
        print(_render.format_ket(output))
    return EXIT_OK


def cmd_table(args) -> int:
    c = _read_circuit(args.circuit)
    rows = circuits.table_outputs(c)
    if args.format == 'json':
        print(_render.dumps([{'input': format_digits(digits), 'output': _render.state_to_dict(s)}
                             for digits, s in rows]))
    elif args.format == 'tsv':
        print('input\toutput')
        for digits, s in rows:
            print(f'{format_digits(digits)}\t{_render.format_ket(s)}')
    else:
        for digits, s in rows:
            print(f'|{format_digits(digits)}> -> {_render.format_ket(s)}')
    return EXIT_OK


def cmd_classify(args) -> int:
    c = _read_circuit(args.circuit)
    output = circuits.run(c, _input_state(c, args.input))
    report = entanglement.analyze(output, wire=args.wire)
    print(_render.dumps(_render.entanglement_report_to_dict(report)))
    return EXIT_OK


def _check_radix_cap(radix: int, config: enumeration.VerifyConfig):
    if radix > config.max_radix and not config.allow_large_radix:
        raise UsageError(f'--radix {radix} exceeds {config.max_radix}, pass --max-radix-override to go beyond it')


def cmd_enumerate(args) -> int:
    r = args.radix
    _check_radix_cap(r, enumeration.VerifyConfig(allow_large_radix=args.max_radix_override))
    if args.forms:
        found = enumeration.enumerate_circuit_forms(r)
    else:
        found = [circuits.entanglement_generator(r, spec) for spec in enumeration.enumerate_generator_sets(r)]
    for c in found:
        print(json.dumps(circuits.circuit_to_dict(c)))
    logger.info('radix %d: %d circuit(s)', r, len(found))
    return EXIT_OK


def cmd_verify(args) -> int:
    config = enumeration.VerifyConfig(allow_large_radix=args.max_radix_override, workers=args.workers)
    _check_radix_cap(args.radix, config)
    if args.workers < 1:
        raise UsageError(f'--workers must be at least 1, got {args.workers}')

    report = enumeration.verify_counts(args.radix, config)
    commutative = enumeration.verify_commutativity(args.radix)
    data = _render.enumeration_report_to_dict(report)
    data['commutative'] = commutative
    print(_render.dumps(data))
    if not report.passed or not commutative:
        print(f'error: verification failed for radix {args.radix}', file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


COMMANDS = {
    'gate': cmd_gate,
    'run': cmd_run,
    'table': cmd_table,
    'classify': cmd_classify,
    'enumerate': cmd_enumerate,
    'verify': cmd_verify,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')

    try:
        return COMMANDS[args.command](args)
    except (UsageError, CircuitParseError, DomainError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
