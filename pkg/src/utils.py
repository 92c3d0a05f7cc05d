from typing import Iterator

from src.spinform import errors


class LineReader:
  """Helper class to walk a text buffer line by line"""

  def __init__(self, text: str, comment_prefix: str = '#'):
    self.lines = text.splitlines()
    self.comment_prefix = comment_prefix
    self.pos = 0

  @property
  def line_number(self) -> int:
    """1-based number of the line under the cursor"""
    return self.pos + 1

  def at_end(self) -> bool:
    """Whether only blank or comment lines remain"""
    return self._skip_to_data() >= len(self.lines)

  def read_data_line(self) -> tuple[int, str] | None:
    """Return (line_number, stripped text) of the next data line"""
    self.pos = self._skip_to_data()
    if self.pos >= len(self.lines):
      return None
    line = self.lines[self.pos].strip()
    self.advance(1)
    return self.pos, line

  def advance(self, length: int):
    """Move position forward"""
    self.pos += length

  def _skip_to_data(self) -> int:
    pos = self.pos
    while pos < len(self.lines):
      line = self.lines[pos].strip()
      if line and not line.startswith(self.comment_prefix):
        break
      pos += 1
    return pos


def iter_bits(x: int) -> Iterator[int]:
  """Iterate over the indices of bits set to 1 in `x`, in ascending order"""
  while x:
    low = x & -x
    yield low.bit_length() - 1
    x ^= low


def parity(x: int) -> int:
  """Sum of the bits of `x` over GF(2)"""
  return x.bit_count() & 1


def check_genus(expected: int, actual: int, what: str = 'operand'):
  if expected != actual:
    raise errors.GenusMismatchError(
      f'Genus mismatch for {what}: expected {expected}, got {actual}.'
    )


def check_positive_genus(genus: int):
  if genus < 1:
    raise errors.GenusRangeError(
      f'Genus must be a positive integer. Provided: {genus}'
    )


def check_cutoff(genus: int, cutoff: int, what: str):
  if genus > cutoff:
    raise errors.CutoffExceededError(genus, cutoff, what)


class UnionFind:
  """Disjoint sets over 0..size-1 with union by rank."""

  def __init__(self, size: int):
    self.parent = list(range(size))
    self.rank = [0] * size

  def find(self, x: int) -> int:
    root = x
    while self.parent[root] != root:
      root = self.parent[root]
    while self.parent[x] != root:
      self.parent[x], x = root, self.parent[x]
    return root

  def union(self, x: int, y: int):
    x, y = self.find(x), self.find(y)
    if x == y:
      return
    if self.rank[x] < self.rank[y]:
      x, y = y, x
    elif self.rank[x] == self.rank[y]:
      self.rank[x] += 1
    self.parent[y] = x

  def groups(self) -> list[list[int]]:
    """Classes as ascending lists, ordered by their least element."""
    classes: dict[int, list[int]] = {}
    for x in range(len(self.parent)):
      classes.setdefault(self.find(x), []).append(x)
    return list(classes.values())
