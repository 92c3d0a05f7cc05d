"""One exhaustive verification routine per finite statement about invariant
spin structures, each producing a VerificationReport.

Every check clamps its genus range to a cap that keeps it under a minute
single-threaded, records the effective range, and turns an exception raised
while computing a genus into a recorded mismatch, so corrupted inputs fail
the check instead of aborting the run.
"""

import contextlib
import dataclasses
import json
import logging
import os
import tempfile
import time
from typing import Callable, Iterator, Mapping

import sympy

from src.spinform import gf2_core
from src.spinform import mcg_action
from src.spinform import number_theory
from src.spinform import spin_structures
from src.spinform import surface_families
from src.spinform.spin_types import (
  ArfClass,
  FamilyId,
  FamilyKind,
  Guarantee,
  HomologyMap,
  Mismatch,
  VerificationReport,
)

logger = logging.getLogger(__name__)

FamilyBuilders = Mapping[FamilyKind, Callable[[int], HomologyMap]]

DEFAULT_PRIME_LIMIT = 10**4

##############################################################################
# Check bookkeeping


class _Check:
  """Collects mismatches for one check over a clamped genus range."""

  def __init__(self, check_id: str, g_min: int, g_max: int, cap: int):
    hi = min(g_max, cap)
    lo = max(1, min(g_min, hi))
    notes = []
    if g_max > cap:
      notes.append(f'requested genus up to {g_max}, clamped to {cap}')
    if g_min > hi:
      notes.append(f'requested genus from {g_min}, clamped to {lo}')
    self.report = VerificationReport(
      check_id=check_id,
      anchor=CHECKS[check_id].anchor,
      genus_range=(lo, hi),
      note='; '.join(notes) or None,
    )
    self._start = time.perf_counter()

  def genera(self) -> range:
    lo, hi = self.report.genus_range
    return range(lo, hi + 1)

  def expect(self, genus: int, expected, observed, what: str = ''):
    if expected != observed:
      prefix = f'{what}: ' if what else ''
      self.report.mismatches.append(
        Mismatch(genus, f'{prefix}{expected}', f'{prefix}{observed}')
      )

  @contextlib.contextmanager
  def at(self, genus: int) -> Iterator[None]:
    """Record any failure while computing `genus` as a mismatch."""
    try:
      yield
    except Exception as e:  # noqa: BLE001
      logger.debug('%s failed at genus %d', self.report.check_id, genus,
                   exc_info=True)
      self.report.mismatches.append(
        Mismatch(genus, 'no error', f'error: {type(e).__name__}: {e}')
      )
    else:
      logger.debug('%s: genus %d done', self.report.check_id, genus)

  def finish(self) -> VerificationReport:
    self.report.elapsed_ms = (time.perf_counter() - self._start) * 1000
    logger.info(
      '%s %s (%d mismatches, %.0f ms)',
      self.report.check_id,
      self.report.status.value,
      len(self.report.mismatches),
      self.report.elapsed_ms,
    )
    return self.report


##############################################################################
# Checks on spin structures


def verify_cardinality(g_max: int, g_min: int = 1) -> VerificationReport:
  """census(g) = (|B_g|, |U_g|)."""
  check = _Check('cardinality', g_min, g_max, CHECKS['cardinality'].cap)
  for g in check.genera():
    with check.at(g):
      expected = (number_theory.bg_card(g), number_theory.ug_card(g))
      check.expect(g, expected, spin_structures.census(g))
  return check.finish()


def verify_bu(g_max: int, g_min: int = 1) -> VerificationReport:
  """Zero counts take exactly the two values and agree with the Arf formula."""
  check = _Check('bu', g_min, g_max, CHECKS['bu'].cap)
  for g in check.genera():
    with check.at(g):
      form = gf2_core.standard_form(g)
      counts = spin_structures.zero_counts(form)
      bounded = number_theory.bg_card(g)
      unbounded = number_theory.ug_card(g)
      for values, zeros in enumerate(counts.tolist()):
        q = spin_structures.spin_structure(form, values)
        expected = bounded if spin_structures.is_bounded(q) else unbounded
        check.expect(g, expected, zeros, f'zeros of {q}')
  return check.finish()


def verify_invariant_counts(g_max: int, g_min: int = 1) -> VerificationReport:
  """One tau_g-invariant structure, constant g mod 2; two v_g-invariant."""
  check = _Check('counts', g_min, g_max, CHECKS['counts'].cap)
  for g in check.genera():
    with check.at(g):
      ones = (1 << (2 * g)) - 1
      tau_fixed = _fixed_values(surface_families.tau(g))
      check.expect(g, [ones * (g % 2)], tau_fixed, 'tau fixed')
      v_fixed = _fixed_values(surface_families.v(g))
      check.expect(g, [0, ones], v_fixed, 'v fixed')
  return check.finish()


def verify_zero_formulas(g_max: int, g_min: int = 1) -> VerificationReport:
  """The constant-c structure vanishes on A_0+A_1 (c=0) or A_0+A_3 (c=1)."""
  check = _Check('zero_formulas', g_min, g_max, CHECKS['zero_formulas'].cap)
  for g in check.genera():
    with check.at(g):
      form = gf2_core.standard_form(g)
      for constant in (0, 1):
        q = spin_structures.constant_structure(form, constant)
        check.expect(
          g,
          number_theory.zero_count_prediction(g, constant),
          spin_structures.zero_count(q),
          f'zeros of constant-{constant}',
        )
  return check.finish()


##############################################################################
# Checks on the model families


def verify_extendability(
  g_max: int, g_min: int = 1, builders: FamilyBuilders | None = None
) -> VerificationReport:
  """Verdict tables for wiman, v and tau; wiman and tau fix the same set."""
  builders = {**_DEFAULT_BUILDERS, **(builders or {})}
  check = _Check('extendability', g_min, g_max, CHECKS['extendability'].cap)
  for g in check.genera():
    with check.at(g):
      fixed = {}
      for kind in (FamilyKind.WIMAN, FamilyKind.V, FamilyKind.TAU):
        f = builders[kind](g)
        check.expect(
          g,
          True,
          gf2_core.is_form_preserving(f.columns, f.form),
          f'{kind.value} preserves the form',
        )
        report = mcg_action.invariant_structures(f)
        check.expect(
          g,
          surface_families.expected_extendable(FamilyId(kind, g)),
          report.extendable,
          f'{kind.value} extendable',
        )
        fixed[kind] = report.fixed_bounded + report.fixed_unbounded
      check.expect(
        g,
        [str(q) for q in fixed[FamilyKind.TAU]],
        [str(q) for q in fixed[FamilyKind.WIMAN]],
        'wiman fixed set vs tau fixed set',
      )
  return check.finish()


def verify_necessity(
  g_max: int, g_min: int = 1, builders: FamilyBuilders | None = None
) -> VerificationReport:
  """The genus conditions for orders 3^m and 5^m cannot be dropped.

  tau_1 = w_1^2 (order 3) and tau_2 = w_2^2 (order 5) fix no bounded
  structure; whenever 2g+1 = p^m and p does not divide |B_g|, tau_g does.
  """
  builders = {**_DEFAULT_BUILDERS, **(builders or {})}
  check = _Check('necessity', g_min, g_max, CHECKS['necessity'].cap)
  for g in check.genera():
    with check.at(g):
      f = builders[FamilyKind.TAU](g)
      w = builders[FamilyKind.WIMAN](g)
      check.expect(g, f.columns, gf2_core.power(w, 2).columns, 'w^2 = tau')
      order = gf2_core.map_order(f)
      check.expect(g, 2 * g + 1, order, 'tau order')
      extendable, _ = mcg_action.is_extendable(f)
      if g in (1, 2):
        check.expect(g, False, extendable, 'tau extendable')
      factors = sympy.factorint(order or 1)
      if len(factors) != 1:
        continue
      ((p, m),) = factors.items()
      guarantee = mcg_action.pgroup_fixed_point_guarantee(
        f, p, m, ArfClass.BOUNDED
      )
      if guarantee.verdict is Guarantee.GUARANTEED:
        check.expect(g, True, extendable, f'tau extendable (order {p}^{m})')
  return check.finish()


##############################################################################
# Checks on the whole symplectic group


def verify_pgroup(g_max: int, g_min: int = 1) -> VerificationReport:
  """Every odd prime-power element of Sp(2g, 2) obeys the orbit count."""
  check = _Check('pgroup', g_min, g_max, CHECKS['pgroup'].cap)
  for g in check.genera():
    with check.at(g):
      form = gf2_core.standard_form(g)
      group = gf2_core.generate_group(gf2_core.transvections(form))
      check.expect(g, symplectic_group_order(g), len(group), 'group order')
      cards = {
        ArfClass.BOUNDED: number_theory.bg_card(g),
        ArfClass.UNBOUNDED: number_theory.ug_card(g),
      }
      for f in group:
        order = gf2_core.map_order(f)
        factors = sympy.factorint(order)
        if len(factors) != 1 or 2 in factors:
          continue
        ((p, m),) = factors.items()
        for arf_class, card in cards.items():
          result = mcg_action.pgroup_fixed_point_guarantee(f, p, m, arf_class)
          check.expect(
            g,
            card % p,
            len(result.fixed) % p,
            f'fixed {arf_class.name.lower()} mod {p}',
          )
          if result.verdict is Guarantee.GUARANTEED and not result.fixed:
            check.expect(
              g, 'nonempty', 'empty', f'{arf_class.name.lower()} fixed set'
            )
      tau = surface_families.tau(g)
      if g in (1, 2):
        check.expect(
          g,
          [],
          mcg_action.invariant_structures(tau).fixed_bounded,
          'tau bounded fixed set',
        )
  return check.finish()


def verify_transitivity(g_max: int, g_min: int = 1) -> VerificationReport:
  """Transvections act with exactly two orbits, B_g and U_g."""
  check = _Check('transitivity', g_min, g_max, CHECKS['transitivity'].cap)
  for g in check.genera():
    with check.at(g):
      form = gf2_core.standard_form(g)
      found = mcg_action.group_orbits(gf2_core.transvections(form), form)
      expected = [
        (ArfClass.BOUNDED, number_theory.bg_card(g)),
        (ArfClass.UNBOUNDED, number_theory.ug_card(g)),
      ]
      observed = sorted(
        (spin_structures.arf(orbit[0]), len(orbit)) for orbit in found
      )
      check.expect(g, expected, observed, '(arf, orbit size)')
      for orbit in found:
        classes = {spin_structures.arf(q) for q in orbit}
        check.expect(g, 1, len(classes), 'Arf classes per orbit')
  return check.finish()


##############################################################################
# Number theory checks


def verify_thm13_divisibility(
  g_max: int, g_min: int = 1
) -> VerificationReport:
  """3 | |B_g| iff g odd; 5 | |B_g| iff g = 2 mod 4; 7 never divides."""
  check = _Check('divisibility', g_min, g_max, CHECKS['divisibility'].cap)
  for g in check.genera():
    with check.at(g):
      check.expect(g, g % 2 == 1, number_theory.divides_bg(3, g), '3 | B_g')
      check.expect(g, g % 4 == 2, number_theory.divides_bg(5, g), '5 | B_g')
      check.expect(g, False, number_theory.divides_bg(7, g), '7 | B_g')
  return check.finish()


def verify_class_sums(g_max: int, g_min: int = 1) -> VerificationReport:
  """Binomial class sums: total 4^g, closed forms, and when A_0+A_1 or
  A_0+A_3 equals |B_g|."""
  check = _Check('class_sums', g_min, g_max, CHECKS['class_sums'].cap)
  for g in check.genera():
    with check.at(g):
      sums = number_theory.class_sums(g)
      bounded = number_theory.bg_card(g)
      check.expect(g, 4**g, sums.total, 'A_0+A_1+A_2+A_3')
      check.expect(g, True, number_theory.closed_form_check(g), 'closed form')
      check.expect(
        g, g % 4 in (0, 1), sums.a0 + sums.a1 == bounded, 'A_0+A_1 = |B_g|'
      )
      check.expect(
        g, g % 4 in (0, 3), sums.a0 + sums.a3 == bounded, 'A_0+A_3 = |B_g|'
      )
  return check.finish()


def verify_primes(
  g_max: int, g_min: int = 1, limit: int = DEFAULT_PRIME_LIMIT
) -> VerificationReport:
  """Primes 7 mod 8 below `limit`: 2 is a square, ord(2) is odd, and none
  divides |B_g| in the genus range. Mismatches carry genus 0 when they
  concern a prime rather than a genus."""
  check = _Check('primes', g_min, g_max, CHECKS['primes'].cap)
  genera = check.genera()
  for p in number_theory.primes_8k7(limit):
    with check.at(0):
      check.expect(0, True, number_theory.quadratic_residue(2, p), f'2 QR {p}')
      order = number_theory.order_of_two(p)
      check.expect(0, 1, order % 2, f'ord_{p}(2) mod 2')
      check.expect(
        0, True, number_theory.never_divides_2g_plus_1(p), f'{p} never'
      )
      for g in genera:
        if number_theory.divides_bg(p, g):
          check.expect(g, False, True, f'{p} | B_g')
  return check.finish()


##############################################################################
# Registry and runner


@dataclasses.dataclass(slots=True, frozen=True)
class CheckSpec:
  runner: Callable[..., VerificationReport]
  cap: int
  anchor: str


CHECKS: dict[str, CheckSpec] = {
  'cardinality': CheckSpec(
    verify_cardinality,
    8,
    'cardinality: |B_g| = 2^{2g-1}+2^{g-1}, |U_g| = 2^{2g-1}-2^{g-1}',
  ),
  'bu': CheckSpec(
    verify_bu,
    6,
    'zero count: q is bounded (resp. unbounded) iff it vanishes on exactly '
    '2^{2g-1}+2^{g-1} (resp. 2^{2g-1}-2^{g-1}) classes',
  ),
  'counts': CheckSpec(
    verify_invariant_counts,
    8,
    'invariant counts: exactly one tau_g-invariant structure (q = g mod 2 on '
    'the orbit) and exactly two v_g-invariant structures',
  ),
  'zero_formulas': CheckSpec(
    verify_zero_formulas,
    6,
    'zero formulas: q = 0 on the orbit vanishes on A_0+A_1 classes, q = 1 on '
    'A_0+A_3 classes',
  ),
  'extendability': CheckSpec(
    verify_extendability,
    12,
    'extendability: w_g iff g = 4k, 4k+3; v_g iff g = 4k, 4k+1, 4k+3; q is '
    'tau_g-invariant iff w_g-invariant',
  ),
  'necessity': CheckSpec(
    verify_necessity,
    12,
    'prime orders: w_1^2 (order 3) and w_2^2 (order 5) are not extendable; '
    'tau_g of order p^m is extendable when p does not divide |B_g|',
  ),
  'pgroup': CheckSpec(
    verify_pgroup,
    2,
    'p-group fixed points: order p^m with p not dividing 2^{2g-1}+2^{g-1} '
    '(resp. 2^{2g-1}-2^{g-1}) fixes a bounded (resp. unbounded) structure',
  ),
  'transitivity': CheckSpec(
    verify_transitivity,
    3,
    'transitivity: the mapping class group acts transitively on B_g and U_g',
  ),
  'divisibility': CheckSpec(
    verify_thm13_divisibility,
    40,
    'divisibility: 2^{2g-1}+2^{g-1} = -2 mod 3 for even g; not divisible by '
    '5 for g = 4k, 4k+1, 4k+3; never divisible by 7',
  ),
  'class_sums': CheckSpec(
    verify_class_sums,
    60,
    'class sums: A_0+A_1+A_2+A_3 = 2^{2g}; A_0-A_2 = Re (1+i)^{2g}, '
    'A_1-A_3 = Im (1+i)^{2g}',
  ),
  'primes': CheckSpec(
    verify_primes,
    40,
    'many primes: a prime p = 8k+7 divides no 2^g+1, hence no |B_g|',
  ),
}


def run_check(
  check_id: str, g_max: int, g_min: int = 1, **kwargs
) -> VerificationReport:
  if check_id not in CHECKS:
    raise ValueError(
      f'Unknown check "{check_id}". Expected one of: {", ".join(CHECKS)}'
    )
  return CHECKS[check_id].runner(g_max, g_min=g_min, **kwargs)


def run_all(
  g_max: int | None = None,
  output_path: str | None = None,
  check_ids: list[str] | None = None,
  g_min: int = 1,
) -> list[VerificationReport]:
  """Run the selected checks (all by default) and optionally write JSON.

  g_max=None runs each check up to its own cap.
  """
  reports = []
  for check_id in check_ids or list(CHECKS):
    cap = CHECKS[check_id].cap
    reports.append(run_check(check_id, cap if g_max is None else g_max, g_min))
  if output_path is not None:
    write_reports(reports, output_path)
  return reports


def write_reports(reports: list[VerificationReport], path: str):
  """Write the JSON report list; no partial file is left on failure."""
  text = json.dumps([r.to_json() for r in reports], indent=2) + '\n'
  directory = os.path.dirname(os.path.abspath(path))
  tmp_path = None
  try:
    with tempfile.NamedTemporaryFile(
      'w', encoding='utf-8', newline='\n', dir=directory, delete=False,
      suffix='.tmp',
    ) as f:
      tmp_path = f.name
      f.write(text)
    os.replace(tmp_path, path)
  except OSError as e:
    if tmp_path is not None and os.path.exists(tmp_path):
      os.remove(tmp_path)
    raise OSError(e.errno, f'Cannot write report: {e.strerror}', path) from e


def symplectic_group_order(g: int) -> int:
  """|Sp(2g, 2)| = 2^{g^2} prod_{i=1..g} (4^i - 1)."""
  order = 2 ** (g * g)
  for i in range(1, g + 1):
    order *= 4**i - 1
  return order


##############################################################################
# Helpers

_DEFAULT_BUILDERS: dict[FamilyKind, Callable[[int], HomologyMap]] = {
  FamilyKind.TAU: surface_families.tau,
  FamilyKind.V: surface_families.v,
  FamilyKind.ETA: surface_families.eta,
  FamilyKind.WIMAN: surface_families.wiman,
}


def _fixed_values(f: HomologyMap) -> list[int]:
  """Invariant basis values; the affine solve and the scan must agree."""
  affine = mcg_action.invariant_values(f, method='affine').tolist()
  scan = mcg_action.invariant_values(f, method='scan').tolist()
  if affine != scan:
    raise AssertionError(f'affine {affine} and scan {scan} disagree')
  return affine
