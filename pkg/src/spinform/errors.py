"""Exceptions raised by the spinform library.

Input errors derive from ValueError. OrbitCountError marks a computation
that contradicts the orbit-counting identity.
"""


class SpinformError(ValueError):
  """Base class for all spinform errors."""


class GenusMismatchError(SpinformError):
  """Operands live on different surfaces (genus or form disagree)."""


class GenusRangeError(SpinformError):
  """Genus outside the range an operation supports exactly."""


class CutoffExceededError(SpinformError):
  """A full enumeration was requested above the configured cutoff."""

  def __init__(self, genus: int, cutoff: int, what: str):
    super().__init__(
      f'{what}: genus {genus} exceeds the enumeration cutoff {cutoff}. '
      'Raise the cutoff explicitly to proceed.'
    )
    self.genus = genus
    self.cutoff = cutoff


class SingularMatrixError(SpinformError):
  """Matrix is not invertible over GF(2)."""


class NotFormPreservingError(SpinformError):
  """Matrix does not preserve the intersection form."""

  def __init__(self, i: int, j: int, expected: int, observed: int):
    super().__init__(
      f'Matrix does not preserve the intersection form on the basis pair '
      f'(x_{i + 1}, x_{j + 1}): expected {expected}, got {observed}.'
    )
    self.pair = (i, j)


class MatrixParseError(SpinformError):
  """Malformed matrix file."""

  def __init__(self, line_number: int, message: str):
    super().__init__(f'line {line_number}: {message}')
    self.line_number = line_number


class InvalidPrimeError(SpinformError):
  """An odd prime was required."""


class OrderMismatchError(SpinformError):
  """The map does not have the claimed prime-power order."""


class OrbitCountError(RuntimeError):
  """Fixed-point count disagrees with the class size modulo p."""
