"""Parsing code for homology matrix files.

  # comment lines start with '#', blank lines are ignored
  genus 1
  0 1
  1 1

Row i lists the coordinates of the image of x_i in x_1..x_{2g}, so the
file above is tau_1: x_1 -> x_2, x_2 -> x_1 + x_2.
"""

from src import utils
from src.spinform import errors
from src.spinform import gf2_core
from src.spinform.spin_types import HomologyMap


def parse_matrix_file(path: str) -> HomologyMap:
  """Parse and validate the matrix file at the given path.

  Args:
      path (str): Path to the matrix file.

  Returns:
      The form-preserving HomologyMap on the standard x-basis form.
  """
  with open(path, encoding='utf-8') as f:
    text = f.read()
  return parse_matrix(text)


def parse_matrix(text: str) -> HomologyMap:
  reader = utils.LineReader(text)
  genus = _parse_header(reader)
  images = [_parse_row(reader, genus, i) for i in range(2 * genus)]

  if not reader.at_end():
    line_number, _ = reader.read_data_line()
    raise errors.MatrixParseError(
      line_number, f'unexpected data after {2 * genus} matrix rows'
    )

  return gf2_core.homology_map(images, gf2_core.standard_form(genus))


def format_matrix(f: HomologyMap) -> str:
  """Inverse of parse_matrix."""
  lines = [f'genus {f.genus}']
  for col in f.columns:
    lines.append(' '.join(str(col >> j & 1) for j in range(2 * f.genus)))
  return '\n'.join(lines) + '\n'


##############################################################################
# Helpers


def _parse_header(reader: utils.LineReader) -> int:
  entry = reader.read_data_line()
  if entry is None:
    raise errors.MatrixParseError(reader.line_number, 'missing "genus <g>"')
  line_number, line = entry
  match line.split():
    case ['genus', value] if (
      value.isascii() and value.isdigit() and int(value) >= 1
    ):
      return int(value)
    case _:
      raise errors.MatrixParseError(
        line_number, f'expected "genus <g>" with g >= 1, got "{line}"'
      )


def _parse_row(reader: utils.LineReader, genus: int, i: int) -> int:
  entry = reader.read_data_line()
  if entry is None:
    raise errors.MatrixParseError(
      reader.line_number,
      f'missing row for the image of x_{i + 1} ({2 * genus} rows expected)',
    )
  line_number, line = entry
  digits = line.split()
  if len(digits) != 2 * genus:
    raise errors.MatrixParseError(
      line_number, f'expected {2 * genus} entries, got {len(digits)}'
    )
  image = 0
  for j, digit in enumerate(digits):
    if digit not in ('0', '1'):
      raise errors.MatrixParseError(
        line_number, f'entry {j + 1} must be 0 or 1, got "{digit}"'
      )
    image |= int(digit) << j
  return image
