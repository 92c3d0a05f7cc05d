"""Exact linear and bilinear algebra over GF(2).

Vectors are bit sets (bit i-1 <-> x_i), matrices are tuples of column bit
sets. The intersection form of the x-basis pairs every two distinct basis
classes to 1; x_{2g+1} is never stored, it is the all-ones vector.
"""

import functools
import logging
from typing import Iterable, Sequence

import numpy as np

from src import utils
from src.spinform import config
from src.spinform import errors
from src.spinform.spin_types import (
  Gf2Vector,
  HomologyMap,
  IntersectionForm,
  SymplecticBasis,
)

logger = logging.getLogger(__name__)

##############################################################################
# Vectors


def basis_vector(genus: int, i: int) -> Gf2Vector:
  """x_i, 1-based."""
  if not 1 <= i <= 2 * genus:
    raise ValueError(f'Basis index must be in 1..{2 * genus}. Provided: {i}')
  return Gf2Vector(1 << (i - 1), genus)


def all_ones(genus: int) -> Gf2Vector:
  """x_{2g+1} = x_1 + ... + x_{2g}."""
  return Gf2Vector((1 << (2 * genus)) - 1, genus)


def from_indices(genus: int, indices: Iterable[int]) -> Gf2Vector:
  """Sum of the x_i for the given 1-based indices."""
  bits = 0
  for i in indices:
    bits ^= basis_vector(genus, i).bits
  return Gf2Vector(bits, genus)


##############################################################################
# Intersection forms


def standard_form(genus: int) -> IntersectionForm:
  """The x-basis form: x_i . x_j = 1 for every i != j."""
  utils.check_positive_genus(genus)
  full = (1 << (2 * genus)) - 1
  return IntersectionForm(
    genus=genus, gram=tuple(full ^ (1 << i) for i in range(2 * genus))
  )


def block_form(genus: int) -> IntersectionForm:
  """Form of a standard symplectic basis: x_{2i-1} . x_{2i} = 1 only."""
  utils.check_positive_genus(genus)
  return IntersectionForm(
    genus=genus, gram=tuple(1 << (i ^ 1) for i in range(2 * genus))
  )


def intersection_form(genus: int, gram: Sequence[int]) -> IntersectionForm:
  """Validating constructor for an IntersectionForm."""
  utils.check_positive_genus(genus)
  n = 2 * genus
  if len(gram) != n:
    raise ValueError(f'Gram matrix needs {n} rows. Provided: {len(gram)}')
  for i, row in enumerate(gram):
    if row < 0 or row >> n:
      raise ValueError(f'Gram row {i + 1} has bits outside dimension {n}.')
    if row >> i & 1:
      raise ValueError(f'Gram matrix is not alternating at row {i + 1}.')
    for j in range(i):
      if (row >> j & 1) != (gram[j] >> i & 1):
        raise ValueError(
          f'Gram matrix is not symmetric at ({i + 1}, {j + 1}).'
        )
  if rank(gram) != n:
    raise errors.SingularMatrixError('Intersection form is degenerate.')
  return IntersectionForm(genus=genus, gram=tuple(gram))


def pair(form: IntersectionForm, u: Gf2Vector, v: Gf2Vector) -> int:
  """The Z_2 intersection number u . v."""
  utils.check_genus(form.genus, u.genus, 'left vector')
  utils.check_genus(form.genus, v.genus, 'right vector')
  return pair_bits(form, u.bits, v.bits)


def pair_bits(form: IntersectionForm, u: int, v: int) -> int:
  acc = 0
  for i in utils.iter_bits(u):
    acc ^= form.gram[i]
  return utils.parity(acc & v)


##############################################################################
# Matrices


def rank(vectors: Iterable[int]) -> int:
  """Rank over GF(2) of the given bit-set vectors."""
  pivots: dict[int, int] = {}
  for v in vectors:
    while v:
      top = v.bit_length() - 1
      if top not in pivots:
        pivots[top] = v
        break
      v ^= pivots[top]
  return len(pivots)


def multiply(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
  """Product a.b of two square matrices stored as column bit sets."""
  return tuple(_apply_columns(a, col) for col in b)


def identity_columns(n: int) -> tuple[int, ...]:
  return tuple(1 << i for i in range(n))


def is_form_preserving(columns: Sequence[int], form: IntersectionForm) -> bool:
  """Whether the matrix is invertible and preserves the pairing."""
  if len(columns) != form.dimension:
    return False
  if any(col < 0 or col >> form.dimension for col in columns):
    return False
  return (
    _first_violation(columns, form) is None
    and rank(columns) == form.dimension
  )


def homology_map(
  columns: Sequence[int], form: IntersectionForm
) -> HomologyMap:
  """Validating constructor: columns[i] is the image of x_{i+1}."""
  n = form.dimension
  if len(columns) != n:
    raise ValueError(f'Matrix needs {n} columns. Provided: {len(columns)}')
  for i, col in enumerate(columns):
    if col < 0 or col >> n:
      raise ValueError(f'Image of x_{i + 1} has bits outside dimension {n}.')
  if violation := _first_violation(columns, form):
    raise errors.NotFormPreservingError(*violation)
  if rank(columns) != n:
    raise errors.SingularMatrixError('Matrix is not invertible over GF(2).')
  return HomologyMap(genus=form.genus, columns=tuple(columns), form=form)


def identity(form: IntersectionForm) -> HomologyMap:
  return HomologyMap(
    genus=form.genus, columns=identity_columns(form.dimension), form=form
  )


def apply(f: HomologyMap, x: Gf2Vector) -> Gf2Vector:
  utils.check_genus(f.genus, x.genus, 'vector')
  return Gf2Vector(_apply_columns(f.columns, x.bits), f.genus)


def compose(f: HomologyMap, h: HomologyMap) -> HomologyMap:
  """f o h (apply h first)."""
  _check_same_surface(f, h)
  return HomologyMap(
    genus=f.genus, columns=multiply(f.columns, h.columns), form=f.form
  )


def power(f: HomologyMap, k: int) -> HomologyMap:
  """f^k by repeated squaring; negative k uses the inverse."""
  if k < 0:
    return power(inverse(f), -k)
  result = identity_columns(f.form.dimension)
  base = f.columns
  while k:
    if k & 1:
      result = multiply(result, base)
    base = multiply(base, base)
    k >>= 1
  return HomologyMap(genus=f.genus, columns=result, form=f.form)


def inverse(f: HomologyMap) -> HomologyMap:
  """Gauss-Jordan inverse over GF(2)."""
  n = f.form.dimension
  # Row-reduce [M | I] with rows stored as 2n-bit integers.
  rows = []
  for i in range(n):
    row = 0
    for j, col in enumerate(f.columns):
      row |= (col >> i & 1) << j
    rows.append(row | 1 << (n + i))
  for c in range(n):
    pivot = next((r for r in range(c, n) if rows[r] >> c & 1), None)
    if pivot is None:
      raise errors.SingularMatrixError('Matrix is not invertible over GF(2).')
    rows[c], rows[pivot] = rows[pivot], rows[c]
    for r in range(n):
      if r != c and rows[r] >> c & 1:
        rows[r] ^= rows[c]
  # Row i of the inverse is rows[i] >> n; transpose back to columns.
  columns = []
  for j in range(n):
    col = 0
    for i in range(n):
      col |= (rows[i] >> (n + j) & 1) << i
    columns.append(col)
  return HomologyMap(genus=f.genus, columns=tuple(columns), form=f.form)


def map_order(
  f: HomologyMap, cap: int = config.DEFAULT_MAP_ORDER_CAP
) -> int | None:
  """Least k >= 1 with f^k = id, or None when no such k <= cap exists."""
  if cap < 1:
    raise ValueError(f'Order cap must be positive. Provided: {cap}')
  target = identity_columns(f.form.dimension)
  current = f.columns
  for k in range(1, cap + 1):
    if current == target:
      return k
    current = multiply(f.columns, current)
  logger.debug('map order exceeds cap %d', cap)
  return None


##############################################################################
# Symplectic bases


@functools.cache
def symplectic_basis(form: IntersectionForm) -> SymplecticBasis:
  """Symplectic Gram-Schmidt.

  At each step the lowest-index remaining vector with a partner is paired
  with its lowest-index partner; the rest is projected off the new pair.
  """
  remaining = list(identity_columns(form.dimension))
  pairs = []
  while remaining:
    for ui, u in enumerate(remaining):
      vi = next(
        (
          k
          for k, w in enumerate(remaining)
          if k != ui and pair_bits(form, u, w)
        ),
        None,
      )
      if vi is not None:
        break
    else:
      raise errors.SingularMatrixError('Intersection form is degenerate.')
    v = remaining[vi]
    pairs.append((Gf2Vector(u, form.genus), Gf2Vector(v, form.genus)))
    rest = []
    for k, w in enumerate(remaining):
      if k in (ui, vi):
        continue
      if pair_bits(form, w, v):
        w ^= u
      if pair_bits(form, remaining[k], u):
        w ^= v
      rest.append(w)
    remaining = rest
  return SymplecticBasis(pairs=tuple(pairs))


def is_symplectic_basis(
  form: IntersectionForm, basis: SymplecticBasis
) -> bool:
  vectors = basis.vectors
  if len(basis.pairs) != form.genus:
    return False
  if rank(v.bits for v in vectors) != form.dimension:
    return False
  for i, (a_i, b_i) in enumerate(basis.pairs):
    for j, (a_j, b_j) in enumerate(basis.pairs):
      if pair(form, a_i, b_j) != int(i == j):
        return False
      if pair(form, a_i, a_j) or pair(form, b_i, b_j):
        return False
  return True


##############################################################################
# Affine systems


def solve_affine(
  rows: Sequence[int], rhs: Sequence[int], n: int
) -> tuple[int, list[int]] | None:
  """Solve rows . x = rhs over GF(2) for x in GF(2)^n.

  Returns a particular solution (free variables 0) and a basis of the
  kernel, or None when the system is inconsistent.
  """
  # Augment each row with its right-hand side at bit n.
  augmented = [row | (b & 1) << n for row, b in zip(rows, rhs, strict=True)]
  pivot_cols = []
  r = 0
  for c in range(n):
    pivot = next(
      (k for k in range(r, len(augmented)) if augmented[k] >> c & 1), None
    )
    if pivot is None:
      continue
    augmented[r], augmented[pivot] = augmented[pivot], augmented[r]
    for k in range(len(augmented)):
      if k != r and augmented[k] >> c & 1:
        augmented[k] ^= augmented[r]
    pivot_cols.append(c)
    r += 1
  if any(row == 1 << n for row in augmented[r:]):
    return None

  particular = 0
  for k, c in enumerate(pivot_cols):
    particular |= (augmented[k] >> n & 1) << c

  kernel = []
  free = [c for c in range(n) if c not in pivot_cols]
  for c in free:
    v = 1 << c
    for k, pc in enumerate(pivot_cols):
      if augmented[k] >> c & 1:
        v |= 1 << pc
    kernel.append(v)
  return particular, kernel


##############################################################################
# Transvections and group closure


def transvection(form: IntersectionForm, u: Gf2Vector) -> HomologyMap:
  """T_u(x) = x + (x . u) u."""
  utils.check_genus(form.genus, u.genus, 'transvection vector')
  columns = tuple(
    (1 << i) ^ (u.bits if utils.parity(form.gram[i] & u.bits) else 0)
    for i in range(form.dimension)
  )
  return HomologyMap(genus=form.genus, columns=columns, form=form)


def transvections(form: IntersectionForm) -> list[HomologyMap]:
  """T_u for every nonzero u; they generate the full symplectic group."""
  return [
    transvection(form, Gf2Vector(u, form.genus))
    for u in range(1, 1 << form.dimension)
  ]


def generate_group(
  generators: Sequence[HomologyMap],
  cutoff: int = config.DEFAULT_CLOSURE_CUTOFF,
) -> list[HomologyMap]:
  """Breadth-first closure of the group generated by `generators`.

  Elements come back in discovery order, identity first.
  """
  if not generators:
    raise ValueError('At least one generator is required.')
  form = generators[0].form
  for h in generators[1:]:
    _check_same_surface(generators[0], h)
  utils.check_cutoff(form.genus, cutoff, 'group closure')

  start = identity_columns(form.dimension)
  seen = {start}
  order = [start]
  frontier = [start]
  while frontier:
    next_frontier = []
    for element in frontier:
      for h in generators:
        product = multiply(h.columns, element)
        if product not in seen:
          seen.add(product)
          order.append(product)
          next_frontier.append(product)
    frontier = next_frontier
    logger.debug('group closure: %d elements', len(order))
  return [
    HomologyMap(genus=form.genus, columns=columns, form=form)
    for columns in order
  ]


def random_symplectic(
  form: IntersectionForm, rng: np.random.Generator, steps: int = 16
) -> HomologyMap:
  """Product of `steps` transvections along random nonzero vectors."""
  columns = identity_columns(form.dimension)
  for u in rng.integers(1, 1 << form.dimension, size=steps):
    t = transvection(form, Gf2Vector(int(u), form.genus))
    columns = multiply(t.columns, columns)
  return HomologyMap(genus=form.genus, columns=columns, form=form)


##############################################################################
# Helpers


def _apply_columns(columns: Sequence[int], bits: int) -> int:
  acc = 0
  for i in utils.iter_bits(bits):
    acc ^= columns[i]
  return acc


def _first_violation(
  columns: Sequence[int], form: IntersectionForm
) -> tuple[int, int, int, int] | None:
  n = form.dimension
  for i in range(n):
    for j in range(i, n):
      expected = form.gram[i] >> j & 1
      observed = pair_bits(form, columns[i], columns[j])
      if expected != observed:
        return i, j, expected, observed
  return None


def _check_same_surface(f: HomologyMap, h: HomologyMap):
  utils.check_genus(f.genus, h.genus, 'map')
  if f.form != h.form:
    raise errors.GenusMismatchError('Maps act on different forms.')
