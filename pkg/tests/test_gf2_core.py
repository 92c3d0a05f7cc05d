import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.spinform import errors
from src.spinform import gf2_core
from src.spinform import spin_structures
from src.spinform import surface_families
from src.spinform.spin_types import Gf2Vector, HomologyMap


@st.composite
def vectors(draw, genus: int, count: int = 1):
  n = 2 * genus
  return [
    Gf2Vector(draw(st.integers(0, (1 << n) - 1)), genus) for _ in range(count)
  ]


def test_standard_form_genus_one():
  form = gf2_core.standard_form(1)
  assert form.gram == (0b10, 0b01)
  x1 = gf2_core.basis_vector(1, 1)
  x2 = gf2_core.basis_vector(1, 2)
  assert gf2_core.pair(form, x1, x2) == 1
  assert gf2_core.pair(form, x1, x1) == 0


@pytest.mark.parametrize('genus', range(1, 7))
def test_standard_form_every_distinct_pair_meets_once(genus):
  form = gf2_core.standard_form(genus)
  n = 2 * genus
  for i in range(1, n + 1):
    for j in range(1, n + 1):
      u = gf2_core.basis_vector(genus, i)
      v = gf2_core.basis_vector(genus, j)
      assert gf2_core.pair(form, u, v) == int(i != j)
  assert gf2_core.rank(form.gram) == n


@pytest.mark.parametrize('genus', range(1, 6))
def test_all_ones_pairs_to_one_with_every_basis_class(genus):
  # x_{2g+1} . x_i = 2g - 1 = 1 mod 2
  form = gf2_core.standard_form(genus)
  ones = gf2_core.all_ones(genus)
  for i in range(1, 2 * genus + 1):
    assert gf2_core.pair(form, ones, gf2_core.basis_vector(genus, i)) == 1


@given(st.integers(1, 4).flatmap(lambda g: vectors(g, 3)))
@settings(max_examples=200)
def test_pairing_is_bilinear_and_alternating(uvw):
  u, v, w = uvw
  form = gf2_core.standard_form(u.genus)
  assert gf2_core.pair(form, u + v, w) == (
    gf2_core.pair(form, u, w) ^ gf2_core.pair(form, v, w)
  )
  assert gf2_core.pair(form, u, v) == gf2_core.pair(form, v, u)
  assert gf2_core.pair(form, u, u) == 0


def test_from_indices():
  assert gf2_core.from_indices(2, [1, 3]).bits == 0b101
  assert str(gf2_core.from_indices(2, [1, 3])) == 'x_1+x_3'
  assert gf2_core.from_indices(2, [2, 2]).bits == 0
  with pytest.raises(ValueError):
    gf2_core.from_indices(2, [5])


def test_vector_out_of_range():
  with pytest.raises(ValueError):
    Gf2Vector(0b100, 1)


def test_vectors_of_different_genus_do_not_add():
  with pytest.raises(errors.GenusMismatchError):
    gf2_core.basis_vector(1, 1) + gf2_core.basis_vector(2, 1)


def test_intersection_form_validation():
  with pytest.raises(ValueError, match='alternating'):
    gf2_core.intersection_form(1, [0b01, 0b01])
  with pytest.raises(ValueError, match='symmetric'):
    gf2_core.intersection_form(1, [0b10, 0b00])
  with pytest.raises(errors.SingularMatrixError):
    gf2_core.intersection_form(1, [0, 0])
  form = gf2_core.intersection_form(2, gf2_core.block_form(2).gram)
  assert form == gf2_core.block_form(2)


@pytest.mark.parametrize('genus', range(1, 6))
def test_symplectic_basis(genus):
  for form in (gf2_core.standard_form(genus), gf2_core.block_form(genus)):
    basis = gf2_core.symplectic_basis(form)
    assert gf2_core.is_symplectic_basis(form, basis)


def _random_form(genus: int, rng: np.random.Generator):
  n = 2 * genus
  while True:
    gram = [0] * n
    for i in range(n):
      for j in range(i):
        if rng.integers(2):
          gram[i] |= 1 << j
          gram[j] |= 1 << i
    if gf2_core.rank(gram) == n:
      return gf2_core.intersection_form(genus, gram)


@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_symplectic_basis_of_random_forms(genus, seed):
  rng = np.random.default_rng(seed)
  form = _random_form(genus, rng)
  assert gf2_core.is_symplectic_basis(form, gf2_core.symplectic_basis(form))
  if genus <= 3:
    q = spin_structures.spin_structure(
      form, int(rng.integers(1 << (2 * genus)))
    )
    assert spin_structures.arf(q) == spin_structures.arf_from_zero_count(q)


def test_symplectic_basis_genus_one_is_x1_x2():
  basis = gf2_core.symplectic_basis(gf2_core.standard_form(1))
  ((a, b),) = basis.pairs
  assert (a.bits, b.bits) == (0b01, 0b10)


def test_homology_map_names_failing_pair():
  form = gf2_core.standard_form(1)
  with pytest.raises(errors.NotFormPreservingError) as e:
    gf2_core.homology_map([0b01, 0b01], form)
  assert e.value.pair == (0, 1)
  assert '(x_1, x_2)' in str(e.value)


def test_homology_map_rejects_wrong_shape():
  form = gf2_core.standard_form(1)
  with pytest.raises(ValueError):
    gf2_core.homology_map([0b01], form)
  with pytest.raises(ValueError):
    gf2_core.homology_map([0b01, 0b110], form)


@pytest.mark.parametrize('genus', range(1, 6))
def test_inverse_and_power(genus):
  tau = surface_families.tau(genus)
  identity = gf2_core.identity(tau.form)
  assert gf2_core.compose(tau, gf2_core.inverse(tau)) == identity
  assert gf2_core.power(tau, 2 * genus + 1) == identity
  assert gf2_core.power(tau, -1) == gf2_core.inverse(tau)
  assert gf2_core.power(tau, 0) == identity


def test_inverse_of_singular_matrix():
  form = gf2_core.standard_form(1)
  singular = HomologyMap(genus=1, columns=(0b01, 0b01), form=form)
  with pytest.raises(errors.SingularMatrixError):
    gf2_core.inverse(singular)


def test_map_order_cap():
  tau = surface_families.tau(3)
  assert gf2_core.map_order(tau) == 7
  assert gf2_core.map_order(tau, cap=6) is None
  with pytest.raises(ValueError):
    gf2_core.map_order(tau, cap=0)


@given(
  st.integers(1, 4),
  st.integers(0, 2**32 - 1),
  st.integers(0, 255),
)
@settings(max_examples=100, deadline=None)
def test_compose_applies_right_factor_first(genus, seed, bits):
  form = gf2_core.standard_form(genus)
  rng = np.random.default_rng(seed)
  f = gf2_core.random_symplectic(form, rng)
  h = gf2_core.random_symplectic(form, rng)
  x = Gf2Vector(bits & ((1 << (2 * genus)) - 1), genus)
  assert gf2_core.apply(gf2_core.compose(f, h), x) == gf2_core.apply(
    f, gf2_core.apply(h, x)
  )


def test_is_form_preserving_rejects_out_of_range_columns():
  form = gf2_core.standard_form(1)
  assert not gf2_core.is_form_preserving([0b100, 0b01], form)
  assert not gf2_core.is_form_preserving([-1, 0b01], form)
  assert not gf2_core.is_form_preserving([0b01], form)
  assert gf2_core.is_form_preserving([0b01, 0b10], form)


@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_random_symplectic_preserves_form(genus, seed):
  form = gf2_core.standard_form(genus)
  f = gf2_core.random_symplectic(form, np.random.default_rng(seed))
  assert gf2_core.is_form_preserving(f.columns, form)


def test_transvections_preserve_form_and_are_involutions():
  form = gf2_core.standard_form(2)
  identity = gf2_core.identity(form)
  for t in gf2_core.transvections(form):
    assert gf2_core.is_form_preserving(t.columns, form)
    assert gf2_core.compose(t, t) == identity


def test_transvection_formula():
  form = gf2_core.standard_form(1)
  u = gf2_core.basis_vector(1, 1)
  t = gf2_core.transvection(form, u)
  # x_1 -> x_1, x_2 -> x_2 + x_1
  assert t.columns == (0b01, 0b11)


@pytest.mark.parametrize(('genus', 'order'), [(1, 6), (2, 720)])
def test_transvections_generate_the_symplectic_group(genus, order):
  form = gf2_core.standard_form(genus)
  group = gf2_core.generate_group(gf2_core.transvections(form))
  assert len(group) == order
  assert group[0] == gf2_core.identity(form)
  assert len({g.columns for g in group}) == order


def test_generate_group_refuses_large_genus():
  form = gf2_core.standard_form(4)
  with pytest.raises(errors.CutoffExceededError):
    gf2_core.generate_group([gf2_core.identity(form)])
  with pytest.raises(ValueError):
    gf2_core.generate_group([])


def test_solve_affine():
  # x_1 + x_2 = 1 over GF(2)^2
  particular, kernel = gf2_core.solve_affine([0b11], [1], 2)
  assert particular == 0b01
  assert kernel == [0b11]
  assert gf2_core.solve_affine([0b01, 0b01], [0, 1], 2) is None


@given(
  st.lists(st.integers(0, 63), min_size=1, max_size=8),
  st.lists(st.integers(0, 1), min_size=8, max_size=8),
)
@settings(max_examples=200)
def test_solve_affine_solutions_satisfy_the_system(rows, rhs):
  rhs = rhs[: len(rows)]
  solution = gf2_core.solve_affine(rows, rhs, 6)
  satisfied = [
    x
    for x in range(64)
    if all((row & x).bit_count() % 2 == b for row, b in zip(rows, rhs))
  ]
  if solution is None:
    assert not satisfied
    return
  particular, kernel = solution
  assert particular in satisfied
  assert len(satisfied) == 1 << len(kernel)
  for v in kernel:
    assert particular ^ v in satisfied


def test_operands_on_different_surfaces():
  with pytest.raises(errors.GenusMismatchError):
    gf2_core.compose(surface_families.tau(1), surface_families.tau(2))
  with pytest.raises(errors.GenusMismatchError):
    gf2_core.compose(
      gf2_core.identity(gf2_core.standard_form(2)),
      gf2_core.identity(gf2_core.block_form(2)),
    )
