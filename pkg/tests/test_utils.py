import pytest
from hypothesis import given
from hypothesis import strategies as st

from src import utils
from src.spinform import errors


def test_line_reader_skips_comments_and_blanks():
  reader = utils.LineReader('# header\n\n  a b \n# mid\nc\n\n')
  assert reader.read_data_line() == (3, 'a b')
  assert not reader.at_end()
  assert reader.read_data_line() == (5, 'c')
  assert reader.at_end()
  assert reader.read_data_line() is None


@given(st.integers(0, 2**70))
def test_iter_bits_and_parity(x):
  bits = list(utils.iter_bits(x))
  assert bits == sorted(bits)
  assert sum(1 << i for i in bits) == x
  assert utils.parity(x) == len(bits) % 2


def test_checks():
  utils.check_genus(2, 2)
  with pytest.raises(errors.GenusMismatchError, match='vector'):
    utils.check_genus(2, 3, 'vector')
  with pytest.raises(errors.GenusRangeError):
    utils.check_positive_genus(0)
  utils.check_cutoff(14, 14, 'census')
  with pytest.raises(errors.CutoffExceededError) as e:
    utils.check_cutoff(15, 14, 'census')
  assert (e.value.genus, e.value.cutoff) == (15, 14)


def test_union_find_groups():
  union_find = utils.UnionFind(6)
  union_find.union(4, 1)
  union_find.union(5, 3)
  union_find.union(3, 0)
  assert union_find.groups() == [[0, 3, 5], [1, 4], [2]]
  assert union_find.find(5) == union_find.find(0)
