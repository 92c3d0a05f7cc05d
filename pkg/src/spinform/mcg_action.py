"""The action f^*(q)(x) = q(f(x)) of form-preserving maps on spin structures.

f^* is affine in the basis values of q:

  f^*(q)(x_i) = sum_j M_ji q(x_j) + c_i,   c_i = q_0(f(x_i)),

where q_0 is the structure vanishing on the basis. Invariant structures are
therefore the solutions of an affine GF(2) system, which is exact at every
genus; the full scan over 2^{2g} structures is kept as its oracle.
"""

import logging
from typing import Literal, Sequence

import numpy as np

from src import utils
from src.spinform import config
from src.spinform import errors
from src.spinform import gf2_core
from src.spinform import kernels
from src.spinform import number_theory
from src.spinform import spin_structures
from src.spinform.spin_types import (
  ArfClass,
  FixedPointReport,
  Guarantee,
  HomologyMap,
  IntersectionForm,
  OrbitRecord,
  PGroupGuarantee,
  SpinStructure,
)

logger = logging.getLogger(__name__)

FixedPointMethod = Literal['affine', 'scan']

##############################################################################
# Pullback


def pullback(f: HomologyMap, q: SpinStructure) -> SpinStructure:
  """f^*(q), with f^*(q)(x_i) = q(f(x_i))."""
  _check_acts_on(f, q)
  return SpinStructure(
    genus=q.genus,
    basis_values=pullback_values(f, q.basis_values),
    form=q.form,
  )


def pullback_values(f: HomologyMap, values: int) -> int:
  out = 0
  for i, col in enumerate(f.columns):
    out |= spin_structures.evaluate_bits(f.form, values, col) << i
  return out


def is_invariant(f: HomologyMap, q: SpinStructure) -> bool:
  return pullback(f, q) == q


def conjugate(f: HomologyMap, h: HomologyMap) -> HomologyMap:
  """h^-1 o f o h."""
  return gf2_core.compose(gf2_core.inverse(h), gf2_core.compose(f, h))


##############################################################################
# Invariant structures


def fixed_space(f: HomologyMap) -> tuple[int, list[int]] | None:
  """Affine space of invariant basis values: (particular, kernel basis).

  None when no structure is invariant. No cutoff applies.
  """
  rows = [col ^ (1 << i) for i, col in enumerate(f.columns)]
  return gf2_core.solve_affine(rows, _constants(f), f.form.dimension)


def count_invariant(f: HomologyMap) -> int:
  """Number of f-invariant structures, at any genus."""
  space = fixed_space(f)
  return 0 if space is None else 1 << len(space[1])


def invariant_values(
  f: HomologyMap,
  method: FixedPointMethod = 'affine',
  cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF,
) -> np.ndarray:
  """Sorted int64 array of the basis values of all f-invariant structures."""
  utils.check_cutoff(f.genus, cutoff, 'invariant_structures')
  match method:
    case 'affine':
      space = fixed_space(f)
      if space is None:
        return np.empty(0, dtype=np.int64)
      particular, kernel = space
      values = np.array([particular], dtype=np.int64)
      for v in kernel:
        values = np.concatenate([values, values ^ np.int64(v)])
      values.sort()
      return values
    case 'scan':
      columns, constants = _kernel_map(f)
      mask = kernels.invariant_mask(columns, constants)
      return np.flatnonzero(mask).astype(np.int64)
    case _:
      raise ValueError(f'Unknown fixed-point method "{method}".')


def invariant_structures(
  f: HomologyMap,
  method: FixedPointMethod = 'affine',
  cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF,
  order_cap: int = config.DEFAULT_MAP_ORDER_CAP,
) -> FixedPointReport:
  """All f-invariant structures, split by Arf class, ascending."""
  values = invariant_values(f, method=method, cutoff=cutoff)
  _, (a, b, ca, cb) = spin_structures.kernel_arrays(f.form)
  classes = kernels.arf_values(values, a, b, ca, cb)
  report = FixedPointReport(
    genus=f.genus, map_order=gf2_core.map_order(f, order_cap) or 0
  )
  for v, arf_class in zip(values.tolist(), classes.tolist()):
    q = SpinStructure(genus=f.genus, basis_values=v, form=f.form)
    if arf_class == ArfClass.BOUNDED:
      report.fixed_bounded.append(q)
    else:
      report.fixed_unbounded.append(q)
  logger.debug(
    'invariant structures (g=%d, %s): %d bounded, %d unbounded',
    f.genus,
    method,
    len(report.fixed_bounded),
    len(report.fixed_unbounded),
  )
  return report


def is_extendable(
  f: HomologyMap, cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF
) -> tuple[bool, SpinStructure | None]:
  """Whether f fixes a bounded structure; the least one is the witness."""
  report = invariant_structures(f, cutoff=cutoff)
  return report.extendable, report.witness


##############################################################################
# Orbits of the cyclic group <f>


def orbits(
  f: HomologyMap,
  arf_class: ArfClass | int,
  cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF,
  order_cap: int = config.DEFAULT_MAP_ORDER_CAP,
) -> list[OrbitRecord]:
  """Orbits of <f> on one Arf class, by least representative."""
  utils.check_cutoff(f.genus, cutoff, 'orbits')
  order = gf2_core.map_order(f, order_cap)
  if order is None:
    raise ValueError(f'Map order exceeds the cap {order_cap}.')
  arf_class = ArfClass(arf_class)
  form = f.form
  _, (a, b, ca, cb) = spin_structures.kernel_arrays(form)
  everything = np.arange(1 << form.dimension, dtype=np.int64)
  classes = kernels.arf_values(everything, a, b, ca, cb)
  members = everything[classes == arf_class]

  seen = set()
  records = []
  for values in members.tolist():
    if values in seen:
      continue
    orbit = [values]
    current = pullback_values(f, values)
    while current != values:
      orbit.append(current)
      current = pullback_values(f, current)
    seen.update(orbit)
    records.append(
      OrbitRecord(
        representative=SpinStructure(
          genus=f.genus, basis_values=values, form=form
        ),
        size=len(orbit),
        stabilizer_order=order // len(orbit),
      )
    )
  return records


def group_orbits(
  generators: Sequence[HomologyMap],
  form: IntersectionForm,
  cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF,
) -> list[list[SpinStructure]]:
  """Orbits on all structures of the group generated by `generators`."""
  utils.check_cutoff(form.genus, cutoff, 'group_orbits')
  size = 1 << form.dimension
  union_find = utils.UnionFind(size)
  for h in generators:
    if h.form != form:
      raise errors.GenusMismatchError('Generator acts on a different form.')
    for values in range(size):
      union_find.union(values, pullback_values(h, values))
  return [
    [SpinStructure(genus=form.genus, basis_values=v, form=form) for v in group]
    for group in union_find.groups()
  ]


##############################################################################
# p-group fixed points


def pgroup_fixed_point_guarantee(
  f: HomologyMap,
  p: int,
  m: int,
  arf_class: ArfClass | int,
  cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF,
  order_cap: int = config.DEFAULT_MAP_ORDER_CAP,
) -> PGroupGuarantee:
  """Orbit counting for <f> of order p^m on one Arf class.

  Orbit sizes are powers of p, so a class whose size is prime to p must
  contain a fixed structure.
  """
  number_theory.check_odd_prime(p)
  if m < 1:
    raise ValueError(f'Exponent must be positive. Provided: {m}')
  order = gf2_core.map_order(f, order_cap)
  if order != p**m:
    raise errors.OrderMismatchError(
      f'Map has order {order} on homology, not {p}^{m} = {p**m}.'
    )
  arf_class = ArfClass(arf_class)
  if arf_class is ArfClass.BOUNDED:
    cardinality = number_theory.bg_card(f.genus)
  else:
    cardinality = number_theory.ug_card(f.genus)
  report = invariant_structures(f, cutoff=cutoff, order_cap=order_cap)
  fixed = (
    report.fixed_bounded
    if arf_class is ArfClass.BOUNDED
    else report.fixed_unbounded
  )
  verdict = (
    Guarantee.NOT_GUARANTEED if cardinality % p == 0 else Guarantee.GUARANTEED
  )
  result = PGroupGuarantee(
    verdict=verdict, p=p, class_cardinality=cardinality, fixed=fixed
  )
  if not result.consistent:
    raise errors.OrbitCountError(
      f'Orbit counting violated for p={p}: |class|={cardinality}, '
      f'{len(fixed)} fixed.'
    )
  return result


##############################################################################
# Conjugation stress


def stress_conjugates(
  f: HomologyMap,
  count: int,
  seed: int = config.DEFAULT_SEED,
  cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF,
) -> list[str]:
  """Compare f with `count` random symplectic conjugates.

  Returns a description of every conjugate whose order, verdict or fixed
  counts differ from f's; empty when all agree.
  """
  rng = np.random.default_rng(seed)
  base = invariant_structures(f, cutoff=cutoff)
  expected = _signature(base)
  problems = []
  for k in range(count):
    h = gf2_core.random_symplectic(f.form, rng)
    observed = _signature(invariant_structures(conjugate(f, h), cutoff=cutoff))
    if observed != expected:
      problems.append(
        f'conjugate #{k}: expected (order, bounded, unbounded) = {expected}, '
        f'got {observed}'
      )
  return problems


##############################################################################
# Helpers


def _signature(report: FixedPointReport) -> tuple[int, int, int]:
  return (
    report.map_order,
    len(report.fixed_bounded),
    len(report.fixed_unbounded),
  )


def _constants(f: HomologyMap) -> list[int]:
  return [spin_structures.evaluate_bits(f.form, 0, col) for col in f.columns]


def _kernel_map(f: HomologyMap) -> tuple[np.ndarray, np.ndarray]:
  columns = np.array(f.columns, dtype=np.int64)
  constants = np.array(_constants(f), dtype=np.int64)
  return columns, constants


def _check_acts_on(f: HomologyMap, q: SpinStructure):
  utils.check_genus(f.genus, q.genus, 'spin structure')
  if f.form != q.form:
    raise errors.GenusMismatchError(
      'Map and spin structure live on different forms.'
    )
