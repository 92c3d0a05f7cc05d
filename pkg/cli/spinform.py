"""
Extendability queries, invariant spin structures and exhaustive checks for
periodic maps of closed surfaces, given by their action on H_1(F_g; Z_2).

A map is either a model family (tau, v, eta, wiman) at a genus, or a matrix
file:

  # tau_1
  genus 1
  0 1
  1 1

where row i lists the image of x_i in the basis x_1..x_{2g}.

Example runs:

  uv run python -m cli.spinform extendable --family wiman --genus 4
  uv run python -m cli.spinform survey --family v --genus-to 12 --format csv
  uv run python -m cli.spinform invariants --matrix tau1.mat --arf 1
  uv run python -m cli.spinform verify --check all --output report.json
  uv run python -m cli.spinform primes --check-divisor 3 --genus-to 20
"""

import argparse
import csv
import io
import json
import logging
import sys

from src import utils
from src.spinform import config
from src.spinform import errors
from src.spinform import matrix_file
from src.spinform import mcg_action
from src.spinform import number_theory
from src.spinform import spin_structures
from src.spinform import surface_families
from src.spinform import theorem_harness
from src.spinform.spin_types import ArfClass, FamilyId, HomologyMap

logger = logging.getLogger(__name__)

SURVEY_COLUMNS = (
  'genus',
  'homology_order',
  'surface_order',
  'fixed_bounded',
  'fixed_unbounded',
  'extendable',
  'expected',
)

##############################################################################
# Subcommands


def cmd_extendable(args, settings: config.Settings) -> int:
  f = _load_map(args)
  report = mcg_action.invariant_structures(
    f,
    cutoff=settings.enumeration_cutoff,
    order_cap=settings.map_order_cap,
  )
  problems = []
  if args.conjugates:
    problems = mcg_action.stress_conjugates(
      f,
      args.conjugates,
      seed=settings.seed,
      cutoff=settings.enumeration_cutoff,
    )

  if args.format == 'json':
    entry = report.to_json()
    entry['witness'] = str(report.witness) if report.witness else None
    if args.conjugates:
      entry['conjugates'] = {'checked': args.conjugates, 'problems': problems}
    print(json.dumps(entry, indent=2))
  else:
    if report.extendable:
      print(f'extendable: true, witness {report.witness}')
    else:
      print('extendable: false')
    print(f'homology order: {report.map_order or "over cap"}')
    if args.conjugates:
      print(
        f'conjugates: {args.conjugates} checked, {len(problems)} disagree'
      )
      for problem in problems:
        print(f'  {problem}')
  return 1 if problems else 0


def cmd_survey(args, settings: config.Settings) -> int:
  kind = surface_families.parse_family(args.family)
  rows = []
  for g in range(args.genus_from, args.genus_to + 1):
    family = FamilyId(kind, g)
    report = mcg_action.invariant_structures(
      surface_families.build(family),
      cutoff=settings.enumeration_cutoff,
      order_cap=settings.map_order_cap,
    )
    logger.debug('survey %s done', family)
    rows.append(
      {
        'genus': g,
        'homology_order': report.map_order,
        'surface_order': surface_families.surface_order(family),
        'fixed_bounded': len(report.fixed_bounded),
        'fixed_unbounded': len(report.fixed_unbounded),
        'extendable': report.extendable,
        'expected': surface_families.expected_extendable(family),
      }
    )

  match args.format:
    case 'json':
      print(json.dumps(rows, indent=2))
    case 'csv':
      buffer = io.StringIO()
      writer = csv.DictWriter(
        buffer, fieldnames=SURVEY_COLUMNS, lineterminator='\n'
      )
      writer.writeheader()
      for row in rows:
        writer.writerow({k: _csv_value(v) for k, v in row.items()})
      print(buffer.getvalue(), end='')
    case _:
      print(' '.join(f'{c:>15}' for c in SURVEY_COLUMNS))
      for row in rows:
        print(' '.join(f'{_csv_value(v):>15}' for v in row.values()))
  return 0


def cmd_invariants(args, settings: config.Settings) -> int:
  f = _load_map(args)
  report = mcg_action.invariant_structures(
    f,
    method=args.method,
    cutoff=settings.enumeration_cutoff,
    order_cap=settings.map_order_cap,
  )
  structures = sorted(
    [(q, ArfClass.BOUNDED) for q in report.fixed_bounded]
    + [(q, ArfClass.UNBOUNDED) for q in report.fixed_unbounded],
    key=lambda entry: entry[0].basis_values,
  )
  if args.arf is not None:
    structures = [(q, a) for q, a in structures if a == args.arf]

  if args.format == 'json':
    entries = [
      {'q': spin_structures.to_hex(q), 'arf': int(a)} for q, a in structures
    ]
    print(json.dumps(entries, indent=2))
  else:
    for q, a in structures:
      print(f'{spin_structures.to_hex(q)} arf={int(a)}')
  return 0


def cmd_verify(args, settings: config.Settings) -> int:
  del settings
  check_ids = None if 'all' in args.check else args.check
  reports = theorem_harness.run_all(
    g_max=args.genus_to,
    output_path=args.output,
    check_ids=check_ids,
    g_min=args.genus_from,
  )
  if args.format == 'json':
    print(json.dumps([r.to_json() for r in reports], indent=2))
  else:
    for r in reports:
      lo, hi = r.genus_range
      line = (
        f'{r.check_id:<14} {r.status.value}  g={lo}..{hi}  '
        f'{len(r.mismatches)} mismatches  {r.elapsed_ms:.0f} ms'
      )
      if r.note:
        line += f'  ({r.note})'
      print(line)
      for m in r.mismatches:
        print(f'  g={m.genus}: expected {m.expected}, got {m.observed}')
  if args.output:
    print(f'Report written to "{args.output}"')
  return 0 if all(r.passed for r in reports) else 1


def cmd_primes(args, settings: config.Settings) -> int:
  del settings
  if args.check_divisor is not None:
    p = args.check_divisor
    rows = [
      {'genus': g, 'divides_bg': number_theory.divides_bg(p, g)}
      for g in range(1, args.genus_to + 1)
    ]
    if args.format == 'json':
      print(json.dumps({'p': p, 'scan': rows}, indent=2))
    else:
      for row in rows:
        divides = str(row['divides_bg']).lower()
        print(f'p={p} g={row["genus"]} divides_bg={divides}')
    return 0

  verdicts = [
    number_theory.prime_verdict(p)
    for p in number_theory.primes_8k7(args.limit)
  ]
  if args.format == 'json':
    entries = [
      {
        'p': v.p,
        '8k7': v.is_8k7,
        'ord2': v.order_of_two,
        'never_divides_bg': v.never_divides_bg,
      }
      for v in verdicts
    ]
    print(json.dumps(entries, indent=2))
  else:
    for v in verdicts:
      print(v)
  return 0


##############################################################################
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
  parser = argparse.ArgumentParser(
    prog='spinform',
    description=__doc__,
    formatter_class=argparse.RawDescriptionHelpFormatter,
  )
  parser.add_argument(
    '--threads', type=int, help='Worker threads (default: SPINFORM_THREADS).'
  )
  parser.add_argument(
    '--cutoff', type=int, help='Largest genus for full enumerations.'
  )
  parser.add_argument(
    '--seed', type=int, help='Seed for random conjugates (default 0).'
  )
  parser.add_argument('-v', '--verbose', action='store_true')
  parser.add_argument('--debug', action='store_true')
  subparsers = parser.add_subparsers(dest='command', required=True)

  extendable = subparsers.add_parser(
    'extendable', help='Is there a bounded invariant spin structure?'
  )
  _add_map_arguments(extendable)
  extendable.add_argument(
    '--conjugates',
    type=int,
    default=0,
    help='Also compare against this many random symplectic conjugates.',
  )
  extendable.add_argument('--format', choices=('text', 'json'), default='text')
  extendable.set_defaults(handler=cmd_extendable)

  survey = subparsers.add_parser(
    'survey', help='Per-genus verdicts for one model family.'
  )
  survey.add_argument('--family', required=True, help='tau, v, eta or wiman.')
  survey.add_argument('--genus-from', type=int, default=1)
  survey.add_argument('--genus-to', type=int, required=True)
  survey.add_argument(
    '--format', choices=('text', 'json', 'csv'), default='text'
  )
  survey.set_defaults(handler=cmd_survey)

  invariants = subparsers.add_parser(
    'invariants', help='List the invariant spin structures.'
  )
  _add_map_arguments(invariants)
  invariants.add_argument(
    '--arf', type=int, choices=(0, 1), help='Keep one Arf class only.'
  )
  invariants.add_argument(
    '--method', choices=('affine', 'scan'), default='affine'
  )
  invariants.add_argument('--format', choices=('text', 'json'), default='text')
  invariants.set_defaults(handler=cmd_invariants)

  verify = subparsers.add_parser(
    'verify', help='Run the exhaustive checks and report pass/fail.'
  )
  verify.add_argument(
    '--check',
    nargs='+',
    choices=('all', *theorem_harness.CHECKS),
    default=['all'],
  )
  verify.add_argument('--genus-from', type=int, default=1)
  verify.add_argument(
    '--genus-to', type=int, help='Default: each check runs up to its cap.'
  )
  verify.add_argument('--output', help='Write the JSON report to this path.')
  verify.add_argument('--format', choices=('text', 'json'), default='text')
  verify.set_defaults(handler=cmd_verify)

  primes = subparsers.add_parser(
    'primes', help='Primes 7 mod 8, or a divisibility scan of |B_g|.'
  )
  primes.add_argument(
    '--limit', type=int, default=theorem_harness.DEFAULT_PRIME_LIMIT
  )
  primes.add_argument(
    '--check-divisor', type=int, help='Scan p | |B_g| for g = 1..genus-to.'
  )
  primes.add_argument('--genus-to', type=int, default=40)
  primes.add_argument('--format', choices=('text', 'json'), default='text')
  primes.set_defaults(handler=cmd_primes)
  return parser


def main(argv: list[str] | None = None) -> int:
  parser = build_parser()
  try:
    args = parser.parse_args(argv)
  except SystemExit as e:
    return 0 if e.code is None else int(e.code)

  level = logging.WARNING
  if args.verbose:
    level = logging.INFO
  if args.debug:
    level = logging.DEBUG
  logging.basicConfig(
    level=level, format='%(levelname)s %(name)s: %(message)s'
  )

  try:
    settings = config.Settings.from_env().replace(
      threads=args.threads, enumeration_cutoff=args.cutoff, seed=args.seed
    )
    config.apply_threads(settings)
    return args.handler(args, settings)
  except (ValueError, OSError) as e:
    print(f'error: {e}', file=sys.stderr)
    return 2


##############################################################################
# Helpers


def _add_map_arguments(parser: argparse.ArgumentParser):
  source = parser.add_mutually_exclusive_group(required=True)
  source.add_argument('--family', help='tau, v, eta or wiman.')
  source.add_argument(
    '--matrix',
    help='Matrix file: "genus <g>" then 2g rows of 0/1, row i = image of x_i.',
  )
  parser.add_argument(
    '--genus', type=int, help='Required with --family; checked with --matrix.'
  )


def _load_map(args) -> HomologyMap:
  if args.matrix is not None:
    f = matrix_file.parse_matrix_file(args.matrix)
    if args.genus is not None:
      utils.check_genus(args.genus, f.genus, f'matrix file "{args.matrix}"')
    return f
  if args.genus is None:
    raise errors.GenusRangeError('--genus is required with --family.')
  utils.check_positive_genus(args.genus)
  kind = surface_families.parse_family(args.family)
  return surface_families.build(FamilyId(kind, args.genus))


def _csv_value(value) -> str:
  if isinstance(value, bool):
    return str(value).lower()
  return str(value)


if __name__ == '__main__':
  sys.exit(main())
