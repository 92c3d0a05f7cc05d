"""Spin structures as quadratic refinements q of the intersection form.

q is stored through its basis values; everything else follows from
q(u + v) = q(u) + q(v) + u . v, which gives

  q(x) = sum of q(x_i) over the support S of x + sum of x_i . x_j, i < j in S.
"""

import functools
import logging
from typing import Iterator

import numpy as np

from src import utils
from src.spinform import config
from src.spinform import errors
from src.spinform import gf2_core
from src.spinform import kernels
from src.spinform.spin_types import (
  ArfClass,
  Gf2Vector,
  IntersectionForm,
  SpinStructure,
  SymplecticBasis,
)

logger = logging.getLogger(__name__)

# int64 words hold 2g <= 62 bits.
KERNEL_MAX_GENUS = 31

##############################################################################
# Construction and serialization


def spin_structure(form: IntersectionForm, basis_values: int) -> SpinStructure:
  if basis_values < 0 or basis_values >> form.dimension:
    raise ValueError(
      f'Basis values {basis_values:#x} do not fit in dimension '
      f'{form.dimension}.'
    )
  return SpinStructure(
    genus=form.genus, basis_values=basis_values, form=form
  )


def zero_structure(form: IntersectionForm) -> SpinStructure:
  """The structure vanishing on every x_i."""
  return spin_structure(form, 0)


def constant_structure(form: IntersectionForm, value: int) -> SpinStructure:
  """The structure taking `value` on every x_i."""
  return spin_structure(form, ((1 << form.dimension) - 1) * (value & 1))


def to_hex(q: SpinStructure) -> str:
  return str(q)


def from_hex(text: str, form: IntersectionForm) -> SpinStructure:
  """Inverse of to_hex: 'q:3' -> basis values 0b11."""
  if not text.startswith('q:'):
    raise ValueError(f'Spin structure must start with "q:". Provided: {text}')
  try:
    values = int(text[2:], 16)
  except ValueError:
    raise ValueError(f'Invalid hex digits in "{text}".') from None
  return spin_structure(form, values)


##############################################################################
# Evaluation


def evaluate(q: SpinStructure, x: Gf2Vector) -> int:
  """q(x) via the addition law; q(0) = 0."""
  utils.check_genus(q.genus, x.genus, 'vector')
  return evaluate_bits(q.form, q.basis_values, x.bits)


def evaluate_bits(form: IntersectionForm, values: int, x: int) -> int:
  # x^T Q x with Q upper triangular: diagonal q(x_i), above it the gram.
  acc = utils.parity(values & x)
  upper = _upper_rows(form)
  for i in utils.iter_bits(x):
    acc ^= utils.parity(upper[i] & x)
  return acc


def zero_count(
  q: SpinStructure, cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF
) -> int:
  """|{x : q(x) = 0}| over all 2^{2g} classes."""
  utils.check_cutoff(q.genus, min(cutoff, KERNEL_MAX_GENUS), 'zero_count')
  gram, _ = kernel_arrays(q.form)
  return int(kernels.zero_count(gram, np.int64(q.basis_values)))


def zero_counts(
  form: IntersectionForm, cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF
) -> np.ndarray:
  """zero_count of every structure, indexed by basis values."""
  utils.check_cutoff(form.genus, min(cutoff, KERNEL_MAX_GENUS), 'zero_counts')
  gram, _ = kernel_arrays(form)
  return kernels.zero_counts(gram, np.int64(0), np.int64(1) << form.dimension)


##############################################################################
# Arf invariant


def arf(q: SpinStructure) -> ArfClass:
  """sum of q(a_i) q(b_i) over a symplectic basis of the form."""
  return arf_with_basis(q, gf2_core.symplectic_basis(q.form))


def arf_with_basis(q: SpinStructure, basis: SymplecticBasis) -> ArfClass:
  acc = 0
  for a, b in basis.pairs:
    acc ^= evaluate(q, a) & evaluate(q, b)
  return ArfClass(acc)


def is_bounded(q: SpinStructure) -> bool:
  return arf(q) is ArfClass.BOUNDED


def arf_from_zero_count(q: SpinStructure, **kwargs) -> ArfClass:
  """Classification by counting zeros; the oracle for `arf`."""
  zeros = zero_count(q, **kwargs)
  g = q.genus
  if zeros == 2 ** (2 * g - 1) + 2 ** (g - 1):
    return ArfClass.BOUNDED
  if zeros == 2 ** (2 * g - 1) - 2 ** (g - 1):
    return ArfClass.UNBOUNDED
  raise AssertionError(f'{q} vanishes on {zeros} classes, impossible.')


##############################################################################
# Enumeration


def enumerate_all(
  genus: int,
  form: IntersectionForm | None = None,
  cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF,
) -> Iterator[SpinStructure]:
  """All 2^{2g} structures in increasing basis-values order."""
  form = form or gf2_core.standard_form(genus)
  utils.check_genus(genus, form.genus, 'form')
  utils.check_cutoff(genus, cutoff, 'enumerate_all')
  for values in range(1 << form.dimension):
    yield SpinStructure(genus=genus, basis_values=values, form=form)


def census(
  genus: int,
  form: IntersectionForm | None = None,
  cutoff: int = config.DEFAULT_ENUMERATION_CUTOFF,
) -> tuple[int, int]:
  """(bounded count, unbounded count) over all structures."""
  form = form or gf2_core.standard_form(genus)
  utils.check_genus(genus, form.genus, 'form')
  utils.check_cutoff(genus, min(cutoff, KERNEL_MAX_GENUS), 'census')
  _, (a, b, ca, cb) = kernel_arrays(form)
  total = 1 << form.dimension
  unbounded = int(
    kernels.count_unbounded(a, b, ca, cb, np.int64(0), np.int64(total))
  )
  logger.debug('census(%d): %d unbounded of %d', genus, unbounded, total)
  return total - unbounded, unbounded


##############################################################################
# Kernel plumbing


@functools.cache
def kernel_arrays(
  form: IntersectionForm,
) -> tuple[np.ndarray, tuple[np.ndarray, ...]]:
  """int64 arrays for the numba kernels: gram rows and Arf basis data."""
  if form.genus > KERNEL_MAX_GENUS:
    raise errors.CutoffExceededError(
      form.genus, KERNEL_MAX_GENUS, 'int64 kernels'
    )
  gram = np.array(form.gram, dtype=np.int64)
  basis = gf2_core.symplectic_basis(form)
  a = np.array([p[0].bits for p in basis.pairs], dtype=np.int64)
  b = np.array([p[1].bits for p in basis.pairs], dtype=np.int64)
  ca = np.array([evaluate_bits(form, 0, int(v)) for v in a], dtype=np.int64)
  cb = np.array([evaluate_bits(form, 0, int(v)) for v in b], dtype=np.int64)
  return gram, (a, b, ca, cb)


@functools.cache
def _upper_rows(form: IntersectionForm) -> tuple[int, ...]:
  return tuple(
    row & ~((1 << (i + 1)) - 1) for i, row in enumerate(form.gram)
  )
