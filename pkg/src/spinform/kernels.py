"""numba kernels for the exhaustive sweeps over 2^{2g} vectors or structures.

All words are int64 bit sets in the x-basis layout; callers guarantee
2g < 63. prange indices are cast to int64 before any bit arithmetic.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def parity(x):
  """Sum of the bits of a nonnegative int64 over GF(2)."""
  x ^= x >> 32
  x ^= x >> 16
  x ^= x >> 8
  x ^= x >> 4
  x ^= x >> 2
  x ^= x >> 1
  return x & 1


@numba.njit(cache=True)
def zero_count(gram, values):
  """Number of x with q(x) = 0, walking all x in Gray-code order.

  Flipping x_i changes q by q(x_i) + x . x_i.
  """
  n = gram.shape[0]
  total = np.int64(1) << n
  x = np.int64(0)
  value = np.int64(0)
  zeros = np.int64(1)
  for k in range(1, total):
    i = 0
    while not (k >> i) & 1:
      i += 1
    value ^= ((values >> i) & 1) ^ parity(gram[i] & x)
    x ^= np.int64(1) << i
    if value == 0:
      zeros += 1
  return zeros


@numba.njit(cache=True, parallel=True)
def zero_counts(gram, start, stop):
  """zero_count for every structure with basis values in [start, stop)."""
  out = np.empty(stop - start, dtype=np.int64)
  for k in numba.prange(stop - start):
    out[k] = zero_count(gram, start + np.int64(k))
  return out


@numba.njit(cache=True)
def arf_value(values, a, b, ca, cb):
  """Arf invariant from a symplectic basis (a_i, b_i).

  ca[i], cb[i] are the pairing constants of a_i, b_i, so that
  q(a_i) = parity(values & a_i) + ca[i].
  """
  acc = 0
  for i in range(a.shape[0]):
    qa = parity(values & a[i]) ^ ca[i]
    qb = parity(values & b[i]) ^ cb[i]
    acc ^= qa & qb
  return acc


@numba.njit(cache=True, parallel=True)
def count_unbounded(a, b, ca, cb, start, stop):
  """Number of structures in [start, stop) with Arf invariant 1."""
  total = 0
  for k in numba.prange(stop - start):
    total += arf_value(start + np.int64(k), a, b, ca, cb)
  return total


@numba.njit(cache=True)
def pullback_values(values, columns, constants):
  """Basis values of f^*q: bit i is q(f(x_i))."""
  out = np.int64(0)
  for i in range(columns.shape[0]):
    bit = parity(values & columns[i]) ^ constants[i]
    out |= np.int64(bit) << i
  return out


@numba.njit(cache=True, parallel=True)
def invariant_mask(columns, constants):
  """mask[v] is True iff the structure with basis values v is f-invariant."""
  total = np.int64(1) << columns.shape[0]
  mask = np.zeros(total, dtype=np.bool_)
  for k in numba.prange(total):
    values = np.int64(k)
    mask[values] = pullback_values(values, columns, constants) == values
  return mask


@numba.njit(cache=True, parallel=True)
def arf_values(values, a, b, ca, cb):
  """arf_value for each entry of `values`."""
  out = np.empty(values.shape[0], dtype=np.int8)
  for k in numba.prange(values.shape[0]):
    out[k] = arf_value(values[k], a, b, ca, cb)
  return out
