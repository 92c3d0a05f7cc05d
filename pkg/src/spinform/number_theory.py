"""Binomial class sums, the cardinalities of B_g and U_g, and the prime
arithmetic behind the divisibility arguments.

|B_g| = 2^{2g-1} + 2^{g-1} = 2^{g-1} (2^g + 1), so for odd p the question
"does p divide |B_g|" is "is 2^g = -1 mod p".
"""

import sympy
from sympy import ntheory

from src import utils
from src.spinform import errors
from src.spinform.spin_types import ClassSums, PrimeVerdict

# C(120, 60) < 2^117: every quantity below fits a 128-bit word.
EXACT_MAX_GENUS = 60
_WORD_LIMIT = 1 << 128

##############################################################################
# Class sums


def class_sums(g: int) -> ClassSums:
  """A_i = sum of C(2g, k) over k = i mod 4, from one Pascal row."""
  _check_exact_range(g)
  row = [1]
  for _ in range(2 * g):
    row = [1] + [row[k] + row[k + 1] for k in range(len(row) - 1)] + [1]
  sums = [0, 0, 0, 0]
  for k, c in enumerate(row):
    sums[k % 4] += c
  assert all(s < _WORD_LIMIT for s in sums)
  return ClassSums(g, *sums)


def closed_form(g: int) -> tuple[int, int]:
  """(A_0 - A_2, A_1 - A_3), the real and imaginary parts of (1+i)^{2g}."""
  utils.check_positive_genus(g)
  match g % 4:
    case 0:
      return 2**g, 0
    case 1:
      return 0, 2**g
    case 2:
      return -(2**g), 0
    case _:
      return 0, -(2**g)


def closed_form_check(g: int) -> bool:
  sums = class_sums(g)
  return (sums.a0 - sums.a2, sums.a1 - sums.a3) == closed_form(g)


def zero_count_prediction(g: int, orbit_constant: int) -> int:
  """Zeros of the structure constant on the basis orbit.

  A_0 + A_1 when the constant is 0, A_0 + A_3 when it is 1: a sum of m
  basis classes evaluates to C(m, 2) (+ m), which vanishes exactly for
  m = 0, 1 (resp. 0, 3) mod 4.
  """
  sums = class_sums(g)
  if orbit_constant & 1:
    return sums.a0 + sums.a3
  return sums.a0 + sums.a1


##############################################################################
# Cardinalities


def bg_card(g: int) -> int:
  """|B_g|, the number of bounded (Arf 0) structures."""
  _check_exact_range(g)
  return 2 ** (2 * g - 1) + 2 ** (g - 1)


def ug_card(g: int) -> int:
  """|U_g|, the number of unbounded (Arf 1) structures."""
  _check_exact_range(g)
  return 2 ** (2 * g - 1) - 2 ** (g - 1)


def bg_mod(p: int, g: int) -> int:
  """|B_g| mod p by square-and-multiply; any g."""
  utils.check_positive_genus(g)
  return (pow(2, 2 * g - 1, p) + pow(2, g - 1, p)) % p


def divides_bg(p: int, g: int) -> bool:
  check_odd_prime(p)
  return bg_mod(p, g) == 0


##############################################################################
# Primes


def primes_8k7(limit: int) -> list[int]:
  """All primes p < limit with p = 7 mod 8, ascending."""
  if limit < 7:
    raise ValueError(f'Limit must be at least 7. Provided: {limit}')
  return [p for p in sympy.primerange(7, limit) if p % 8 == 7]


def order_of_two(p: int) -> int:
  """Multiplicative order of 2 mod p."""
  check_odd_prime(p)
  return int(ntheory.n_order(2, p))


def never_divides_2g_plus_1(p: int) -> bool:
  """Whether 2^g + 1 = 0 mod p has no solution g >= 1.

  2^g = -1 is solvable iff the order of 2 is even; checked against a scan
  of one full period.
  """
  order = order_of_two(p)
  by_order = order % 2 == 1
  by_scan = all(pow(2, g, p) != p - 1 for g in range(1, order + 1))
  assert by_order == by_scan, f'order test and scan disagree for p={p}'
  return by_order


def quadratic_residue(a: int, p: int) -> bool:
  """Euler's criterion: a^{(p-1)/2} = 1 mod p."""
  check_odd_prime(p)
  if a % p == 0:
    raise ValueError(f'{a} is divisible by {p}.')
  return pow(a, (p - 1) // 2, p) == 1


def prime_verdict(p: int) -> PrimeVerdict:
  return PrimeVerdict(
    p=p,
    is_8k7=p % 8 == 7,
    order_of_two=order_of_two(p),
    never_divides_bg=never_divides_2g_plus_1(p),
  )


##############################################################################
# Helpers


def _check_exact_range(g: int):
  if not 1 <= g <= EXACT_MAX_GENUS:
    raise errors.GenusRangeError(
      f'Genus must be in 1..{EXACT_MAX_GENUS} for exact 128-bit results. '
      f'Provided: {g}'
    )


def check_odd_prime(p: int):
  if p == 2 or not sympy.isprime(p):
    raise errors.InvalidPrimeError(f'{p} is not an odd prime.')
