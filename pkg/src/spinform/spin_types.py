"""Records shared by the spinform modules.

Vectors, matrices and quadratic functions are stored as Python ints used as
bit sets: bit i-1 is the coefficient of (or the value on) the basis class
x_i. A Python int is its own word array, so the same layout serves every
genus; the numba kernels use int64 words, which covers every genus below
the enumeration cutoff.
"""

from dataclasses import dataclass, field
from enum import Enum, IntEnum

from src.spinform import errors


##############################################################################
# Linear algebra over GF(2)


@dataclass(slots=True, frozen=True)
class Gf2Vector:
  """An element of H_1(F_g; Z_2) in the x_1..x_{2g} basis."""

  bits: int
  genus: int

  def __post_init__(self):
    if self.bits < 0 or self.bits >> (2 * self.genus):
      raise ValueError(
        f'Vector bits {self.bits:#x} do not fit in dimension {2 * self.genus}.'
      )

  def __add__(self, other: 'Gf2Vector') -> 'Gf2Vector':
    if other.genus != self.genus:
      raise errors.GenusMismatchError(
        f'Cannot add vectors of genus {self.genus} and {other.genus}.'
      )
    return Gf2Vector(self.bits ^ other.bits, self.genus)

  def __bool__(self) -> bool:
    return self.bits != 0

  @property
  def support(self) -> list[int]:
    """0-based indices i with coefficient of x_{i+1} equal to 1."""
    return [i for i in range(2 * self.genus) if self.bits >> i & 1]

  def __str__(self) -> str:
    if not self.bits:
      return '0'
    return '+'.join(f'x_{i + 1}' for i in self.support)


@dataclass(slots=True, frozen=True)
class IntersectionForm:
  """Gram matrix of the Z_2 intersection pairing.

  gram[i] is row i as a bit set; the matrix is symmetric, alternating and
  nondegenerate (checked by gf2_core.intersection_form).
  """

  genus: int
  gram: tuple[int, ...]

  @property
  def dimension(self) -> int:
    return 2 * self.genus


@dataclass(slots=True, frozen=True)
class HomologyMap:
  """Form-preserving automorphism f_* of H_1(F_g; Z_2).

  columns[i] is the image of x_{i+1}. Use gf2_core.homology_map to build one
  from untrusted data.
  """

  genus: int
  columns: tuple[int, ...]
  form: IntersectionForm = field(repr=False)


@dataclass(slots=True, frozen=True)
class SymplecticBasis:
  pairs: tuple[tuple[Gf2Vector, Gf2Vector], ...]

  @property
  def vectors(self) -> list[Gf2Vector]:
    return [v for pair in self.pairs for v in pair]


##############################################################################
# Spin structures


class ArfClass(IntEnum):
  BOUNDED = 0
  UNBOUNDED = 1


@dataclass(slots=True, frozen=True)
class SpinStructure:
  """Quadratic refinement q of the intersection form.

  Determined by its values on the basis: bit i-1 of basis_values is q(x_i).
  """

  genus: int
  basis_values: int
  form: IntersectionForm = field(repr=False, compare=False)

  def __str__(self) -> str:
    return f'q:{self.basis_values:x}'


##############################################################################
# Group actions


@dataclass(slots=True, frozen=True)
class OrbitRecord:
  representative: SpinStructure
  size: int
  stabilizer_order: int


@dataclass(slots=True)
class FixedPointReport:
  genus: int
  map_order: int
  fixed_bounded: list[SpinStructure] = field(default_factory=list)
  fixed_unbounded: list[SpinStructure] = field(default_factory=list)

  @property
  def extendable(self) -> bool:
    return bool(self.fixed_bounded)

  @property
  def witness(self) -> SpinStructure | None:
    """Least invariant bounded structure in enumeration order."""
    return self.fixed_bounded[0] if self.fixed_bounded else None

  def to_json(self) -> dict:
    return {
      'genus': self.genus,
      'map_order': self.map_order,
      'fixed_bounded': [str(q) for q in self.fixed_bounded],
      'fixed_unbounded': [str(q) for q in self.fixed_unbounded],
      'extendable': self.extendable,
    }


class Guarantee(Enum):
  GUARANTEED = 'guaranteed'
  NOT_GUARANTEED = 'not_guaranteed'


@dataclass(slots=True)
class PGroupGuarantee:
  """What the p-group orbit count promises against what the search found."""

  verdict: Guarantee
  p: int
  class_cardinality: int
  fixed: list[SpinStructure] = field(default_factory=list)

  @property
  def consistent(self) -> bool:
    if len(self.fixed) % self.p != self.class_cardinality % self.p:
      return False
    return self.verdict is Guarantee.NOT_GUARANTEED or bool(self.fixed)


##############################################################################
# Surface families


class FamilyKind(Enum):
  TAU = 'tau'
  V = 'v'
  ETA = 'eta'
  WIMAN = 'wiman'


@dataclass(slots=True, frozen=True)
class FamilyId:
  kind: FamilyKind
  genus: int

  def __str__(self) -> str:
    return f'{self.kind.value}({self.genus})'


##############################################################################
# Number theory


@dataclass(slots=True, frozen=True)
class ClassSums:
  """A_i = sum of C(2g, k) over k = i mod 4."""

  genus: int
  a0: int
  a1: int
  a2: int
  a3: int

  @property
  def total(self) -> int:
    return self.a0 + self.a1 + self.a2 + self.a3


@dataclass(slots=True, frozen=True)
class PrimeVerdict:
  p: int
  is_8k7: bool
  order_of_two: int
  never_divides_bg: bool

  def __str__(self) -> str:
    return (
      f'p={self.p} 8k7={str(self.is_8k7).lower()} ord2={self.order_of_two} '
      f'never_divides_bg={str(self.never_divides_bg).lower()}'
    )


##############################################################################
# Verification reports


class CheckStatus(Enum):
  PASS = 'pass'
  FAIL = 'fail'


@dataclass(slots=True, frozen=True)
class Mismatch:
  genus: int
  expected: str
  observed: str


@dataclass(slots=True)
class VerificationReport:
  check_id: str
  anchor: str
  genus_range: tuple[int, int]
  mismatches: list[Mismatch] = field(default_factory=list)
  elapsed_ms: float = 0.0
  note: str | None = None

  @property
  def status(self) -> CheckStatus:
    return CheckStatus.FAIL if self.mismatches else CheckStatus.PASS

  @property
  def passed(self) -> bool:
    return self.status is CheckStatus.PASS

  def to_json(self) -> dict:
    return {
      'check_id': self.check_id,
      'anchor': self.anchor,
      'genus_range': list(self.genus_range),
      'status': self.status.value,
      'mismatches': [
        {'genus': m.genus, 'expected': m.expected, 'observed': m.observed}
        for m in self.mismatches
      ],
      'elapsed_ms': round(self.elapsed_ms, 3),
      'note': self.note,
    }
