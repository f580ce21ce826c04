"""Command-line front end for `tatesub`.

Every command builds a `Report` and prints it either as ASCII text or as
JSON with sorted keys, so identical invocations give identical bytes. Logs go
to stderr only.

Contents:
    Report: command output with a pass/fail status for verification.
    cmd_series, cmd_torsion, cmd_subgroups, cmd_verify, cmd_pullback,
        cmd_rings: build the `Report` for one command.
    build_parser: the `argparse` parser.
    main: parses arguments, runs a command, and returns the exit code.

To Do:


"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from typing import TYPE_CHECKING, Any

from . import (
    __version__,
    configuration,
    power,
    qseries,
    rings,
    setup,
    subgroups,
    torsion,
    utilities)

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

_EXIT_OK = 0
_EXIT_FAILED = 1
_EXIT_USAGE = 2
_MULTIPLICATIVITY_MAX = 6
_VERBOSITY = {0: logging.WARNING, 1: logging.INFO}


class UsageError(ValueError):
    """Arguments are outside what a command accepts."""


@dataclasses.dataclass(frozen = True)
class Report:
    """Output of one command.

    Args:
        command: the subcommand name.
        parameters: the resolved arguments.
        payload: command-specific JSON-ready data.
        lines: the text rendering, one entry per line.
        status: 'pass' or 'fail' for verification output, else None.

    """

    command: str
    parameters: dict[str, Any]
    payload: Any
    lines: tuple[str, ...] = ()
    status: str | None = None

    @property
    def exit_code(self) -> int:
        """1 for a failed verification, otherwise 0."""
        return _EXIT_FAILED if self.status == 'fail' else _EXIT_OK

    def to_json(self) -> str:
        """Returns the report as indented JSON with sorted keys."""
        document = {
            'command': self.command,
            'parameters': self.parameters,
            'payload': self.payload,
            'status': self.status}
        return json.dumps(document, indent = 2, sort_keys = True) + '\n'

    def to_text(self) -> str:
        """Returns the text lines joined with newlines."""
        return '\n'.join(self.lines) + '\n'


def cmd_series(kinds: Sequence[str], order: int) -> Report:
    """Returns the requested q-expansions below q^order.

    Raises:
        UsageError: if a kind is unknown or `order` is below 2.

    """
    unknown = [kind for kind in kinds if kind not in setup._SERIES_KINDS]
    if unknown:
        message = (
            f'unknown series {unknown[0]}, expected one of '
            f'{", ".join(setup._SERIES_KINDS)}')
        raise UsageError(message)
    if order < 2:
        message = f'--order must be at least 2, got {order}'
        raise UsageError(message)
    expansions = {kind: qseries.compute(kind, order) for kind in kinds}
    if len(kinds) == 1:
        lines = [expansions[kinds[0]].to_text()]
    else:
        lines = [f'{kind}: {expansions[kind].to_text()}' for kind in kinds]
    return Report(
        'series',
        {'kinds': list(kinds), 'order': order},
        {kind: series.to_json() for kind, series in expansions.items()},
        tuple(lines))

def cmd_torsion(N: int) -> Report:
    """Returns T[N] in coordinate order with b_N and the pairing table."""
    points = torsion.enumerate_torsion(N)
    table = torsion.pairing_table(N)
    rows = []
    lines = [f'T[{N}]: {len(points)} points']
    for point in points:
        i, j = torsion.coordinates_of(point, N)
        component = torsion.b_N(point, N)
        rows.append({
            'coordinates': [i, j],
            'point': point.to_json(),
            'b_N': component})
        lines.append(f'({i}, {j}) {point.to_text()} b_N={component}')
    lines.append(f'pairing exponents of zeta_{N}:')
    lines.extend(' '.join(str(value) for value in row) for row in table)
    return Report(
        'torsion',
        {'N': N},
        {'N': N, 'points': rows, 'pairing': table},
        tuple(lines))

def cmd_subgroups(N: int) -> Report:
    """Returns the classified order-N subgroups of T[N]."""
    report = subgroups.classification_report(N)
    lines = [f'N = {N}, sigma = {report["sigma"]}']
    for record in report['records']:
        (a, b), (_, c) = record['hermite']
        lines.append(
            f'd={record["d"]} e={record["e"]} q\'={record["qprime_text"]} '
            f'hermite=[[{a}, {b}], [0, {c}]]')
    roundtrip = report['roundtrip']
    lines.append(f'roundtrip: {roundtrip if roundtrip == "pass" else "fail"}')
    return Report(
        'subgroups',
        {'N': N},
        report,
        tuple(lines),
        'pass' if roundtrip == 'pass' else 'fail')

def cmd_pullback(N: int) -> Report:
    """Returns every psi* table for N with the closed-formula comparison."""
    report = power.power_report(N)
    comparison = report['comparison']
    statuses = {
        (item['d'], item['e'], item['k']): item['status']
        for item in comparison['tables']}
    lines = []
    for table in report['tables']:
        text = power.pullback_xk_pointwise(
            N, table['d'], table['e'], table['k']).to_text()
        lines.append(f'{text}  {statuses[(table["d"], table["e"], table["k"])]}')
    lines.extend(comparison['discrepancies'])
    for reading in comparison['q_readings']:
        lines.append(
            f'd={reading["d"]} e={reading["e"]}: '
            f'q -> q\' {_flag(reading["q_to_qprime"])}, '
            f'q^N -> q\' {_flag(reading["qN_to_qprime"])}')
    return Report(
        'pullback',
        {'N': N},
        report,
        tuple(lines),
        comparison['status'])

def cmd_rings(N: int) -> Report:
    """Returns the ranks of the product rings and the sigma(N) duality."""
    products = {
        'O_T': rings.build_O_TN(N),
        'O_Sub': rings.build_O_Sub(N),
        's_star': rings.build_O_sStar(N),
        't_star': rings.build_O_tStar(N)}
    payload: dict[str, Any] = {'N': N}
    lines = []
    for key, product in products.items():
        payload[key] = {
            'name': product.name,
            'rank': product.rank(),
            'factors': [factor.to_json() for factor in product.factors]}
        lines.append(
            f'{product.name}: {len(product.factors)} factors, '
            f'rank {product.rank()}')
    check = subgroups.check_rank_duality(N)
    payload['duality'] = check.to_json()
    lines.append(f'rank O_Sub = sigma({N}): {_flag(check.passed)}')
    return Report(
        'rings',
        {'N': N},
        payload,
        tuple(lines),
        'pass' if check.passed else 'fail')

def _checks_for(N: int) -> list[setup.CheckResult]:
    checks = [
        torsion.check_group_structure(N),
        torsion.check_exactness(N),
        torsion.check_pairing(N),
        torsion.check_characters(N),
        torsion.check_dual_character(N),
        subgroups.check_enumeration(N),
        subgroups.check_rank_duality(N)]
    certificate = subgroups.verify_universal_bijection(N)
    checks.append(setup.CheckResult(
        'roundtrip',
        certificate.passed,
        certificate.failure or f'{certificate.subgroups} subgroups'))
    comparison = power.compare_formula_vs_pointwise(N)
    checks.append(setup.CheckResult(
        'closed_formula',
        comparison.passed,
        comparison.discrepancies[0] if comparison.discrepancies
        else f'{len(comparison.tables)} tables'))
    hom = power.verify_psi_star_hom(N)
    checks.append(setup.CheckResult(
        'psi_star_hom',
        hom.passed,
        hom.failure or f'{hom.factors} factors'))
    checks.append(setup.CheckResult(
        'qprime_image', power.qprime_image_check(N), "q -> q'"))
    checks.extend([
        power.check_support(N),
        power.check_degree(N),
        power.check_diagram(N)])
    if N <= _MULTIPLICATIVITY_MAX:
        checks.append(power.check_multiplicativity(N))
    return checks

def cmd_verify(N_max: int, order: int) -> Report:
    """Runs the verification suite for every N up to `N_max`.

    Raises:
        UsageError: if `N_max` is below 1 or `order` below 2.

    """
    if N_max < 1:
        message = f'N_max must be at least 1, got {N_max}'
        raise UsageError(message)
    if order < 2:
        message = f'--order must be at least 2, got {order}'
        raise UsageError(message)
    series_check = qseries.check_series(order)
    failures = [] if series_check.passed else [f'series: {series_check.detail}']
    lines = [f'series: {_flag(series_check.passed)} ({series_check.detail})']
    sections = []
    for N in range(1, N_max + 1):
        logger.info('verifying N=%d', N)
        checks = _checks_for(N)
        roundtrip = next(c for c in checks if c.name == 'roundtrip')
        sections.append({
            'N': N,
            'sigma': utilities.sigma(N),
            'roundtrip': 'pass' if roundtrip.passed else 'fail',
            'checks': [check.to_json() for check in checks]})
        lines.append(
            f'N={N} sigma={utilities.sigma(N)} '
            f'roundtrip={_flag(roundtrip.passed)}')
        for check in checks:
            lines.append(f'  {check.name}: {_flag(check.passed)} ({check.detail})')
            if not check.passed:
                failures.append(f'N={N} {check.name}: {check.detail}')
    status = 'fail' if failures else 'pass'
    lines.append(f'FAIL: {failures[0]}' if failures else 'PASS')
    return Report(
        'verify',
        {'N_max': N_max, 'order': order},
        {'series': series_check.to_json(),
         'sections': sections,
         'first_failure': failures[0] if failures else None},
        tuple(lines),
        status)

def _flag(passed: bool) -> str:
    return 'pass' if passed else 'fail'

def build_parser() -> argparse.ArgumentParser:
    """Returns the parser for all `tatesub` commands."""
    parser = argparse.ArgumentParser(
        prog = 'tatesub',
        description = (
            'Exact computations on Tate curve torsion, its order-N '
            'subgroups, and the power operation on the point.'))
    parser.add_argument(
        '--version', action = 'version', version = f'%(prog)s {__version__}')
    parser.add_argument(
        '--settings',
        metavar = 'PATH',
        help = 'settings file (ini, json, py, toml, yaml)')
    parser.add_argument(
        '-v', '--verbose',
        action = 'count',
        default = 0,
        help = 'log progress to stderr (repeat for debug output)')
    commands = parser.add_subparsers(dest = 'command', required = True)
    series = commands.add_parser('series', help = 'Tate curve q-expansions')
    series.add_argument(
        'kinds',
        nargs = '*',
        metavar = 'KIND',
        help = f'one of {", ".join(setup._SERIES_KINDS)}; defaults to series.kinds')
    series.add_argument('--order', type = int, help = 'truncation order')
    _add_json_flag(series)
    for name, text in (
            ('torsion', 'points of T[N] and the pairing table'),
            ('subgroups', 'classified order-N subgroups'),
            ('pullback', 'psi* tables and the closed-formula comparison'),
            ('rings', 'ranks of the coordinate rings')):
        command = commands.add_parser(name, help = text)
        command.add_argument('N', type = int)
        command.add_argument('--max', type = int, help = 'largest N accepted')
        _add_json_flag(command)
    verify = commands.add_parser('verify', help = 'run the verification suite')
    verify.add_argument('N_max', type = int, nargs = '?')
    verify.add_argument('--max', type = int, help = 'N_max when not given')
    verify.add_argument('--order', type = int, help = 'series check order')
    _add_json_flag(verify)
    return parser

def _add_json_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        '--json',
        action = argparse.BooleanOptionalAction,
        default = None,
        help = 'emit JSON instead of text')
    return

def _settings(path: str | None) -> configuration.Settings:
    if path is None:
        return configuration.Settings()
    try:
        settings = configuration.Settings.create(path)
        for option in (
                'series_order',
                'series_kinds',
                'subgroup_bound',
                'verify_max',
                'json_output'):
            getattr(settings, option)
    except (FileNotFoundError, TypeError, ValueError) as error:
        raise UsageError(str(error)) from error
    return settings

def _bounded(N: int, bound: int) -> int:
    if not 1 <= N <= bound:
        message = f'N must satisfy 1 <= N <= {bound}, got {N}'
        raise UsageError(message)
    return N

def _first(*values: Any) -> Any:
    return next(value for value in values if value is not None)

def _run(
    args: argparse.Namespace,
    settings: configuration.Settings) -> Report:
    if args.command == 'series':
        return cmd_series(
            args.kinds or settings.series_kinds,
            _first(args.order, settings.series_order))
    if args.command == 'verify':
        N_max = _first(args.N_max, args.max, settings.verify_max)
        return cmd_verify(N_max, _first(args.order, settings.series_order))
    N = _bounded(args.N, _first(args.max, settings.subgroup_bound))
    handlers = {
        'torsion': cmd_torsion,
        'subgroups': cmd_subgroups,
        'pullback': cmd_pullback,
        'rings': cmd_rings}
    return handlers[args.command](N)

def main(argv: Sequence[str] | None = None) -> int:
    """Runs one `tatesub` command.

    Args:
        argv: arguments without the program name. Defaults to `sys.argv`.

    Returns:
        0 on success, 1 when a verification fails, 2 on a usage error.

    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return int(error.code or 0)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(setup._LOG_FORMAT))
    package_logger = logging.getLogger('tatesub')
    package_logger.addHandler(handler)
    package_logger.setLevel(_VERBOSITY.get(args.verbose, logging.DEBUG))
    try:
        settings = _settings(args.settings)
        report = _run(args, settings)
    except UsageError as error:
        sys.stderr.write(f'tatesub: error: {error}\n')
        return _EXIT_USAGE
    finally:
        package_logger.removeHandler(handler)
    as_json = _first(args.json, settings.json_output)
    sys.stdout.write(report.to_json() if as_json else report.to_text())
    return report.exit_code
