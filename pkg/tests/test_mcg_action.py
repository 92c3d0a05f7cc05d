import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.spinform import errors
from src.spinform import gf2_core
from src.spinform import mcg_action
from src.spinform import number_theory
from src.spinform import spin_structures
from src.spinform import surface_families
from src.spinform.spin_types import ArfClass, FixedPointReport, Guarantee


def _random_map(genus: int, seed: int):
  form = gf2_core.standard_form(genus)
  return gf2_core.random_symplectic(form, np.random.default_rng(seed))


@given(
  st.integers(1, 4),
  st.integers(0, 2**32 - 1),
  st.integers(0, 2**8 - 1),
)
@settings(max_examples=100, deadline=None)
def test_pullback_is_contravariant(genus, seed, values):
  rng = np.random.default_rng(seed)
  form = gf2_core.standard_form(genus)
  f = gf2_core.random_symplectic(form, rng)
  h = gf2_core.random_symplectic(form, rng)
  q = spin_structures.spin_structure(
    form, values & ((1 << (2 * genus)) - 1)
  )
  assert mcg_action.pullback(gf2_core.compose(f, h), q) == mcg_action.pullback(
    h, mcg_action.pullback(f, q)
  )


def test_pullback_is_contravariant_on_all_of_sp2():
  form = gf2_core.standard_form(1)
  group = gf2_core.generate_group(gf2_core.transvections(form))
  assert len(group) == 6
  for f in group:
    for h in group:
      fh = gf2_core.compose(f, h)
      for q in spin_structures.enumerate_all(1):
        assert mcg_action.pullback(fh, q) == mcg_action.pullback(
          h, mcg_action.pullback(f, q)
        )


@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_pullback_preserves_arf(genus, seed):
  f = _random_map(genus, seed)
  for q in spin_structures.enumerate_all(genus):
    assert spin_structures.arf(mcg_action.pullback(f, q)) == (
      spin_structures.arf(q)
    )


@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_affine_solve_agrees_with_full_scan(genus, seed):
  f = _random_map(genus, seed)
  affine = mcg_action.invariant_structures(f, method='affine')
  scan = mcg_action.invariant_structures(f, method='scan')
  assert affine == scan
  assert mcg_action.count_invariant(f) == len(affine.fixed_bounded) + len(
    affine.fixed_unbounded
  )
  for q in affine.fixed_bounded + affine.fixed_unbounded:
    assert mcg_action.is_invariant(f, q)


@pytest.mark.parametrize('genus', range(1, 4))
def test_identity_fixes_everything(genus):
  identity = gf2_core.identity(gf2_core.standard_form(genus))
  report = mcg_action.invariant_structures(identity)
  assert len(report.fixed_bounded) == number_theory.bg_card(genus)
  assert len(report.fixed_unbounded) == number_theory.ug_card(genus)
  assert report.map_order == 1
  assert str(report.witness) == 'q:0'


def test_tau_one_fixes_one_unbounded_structure():
  report = mcg_action.invariant_structures(surface_families.tau(1))
  assert report.fixed_bounded == []
  assert [str(q) for q in report.fixed_unbounded] == ['q:3']
  assert report.map_order == 3
  assert not report.extendable
  assert report.to_json() == {
    'genus': 1,
    'map_order': 3,
    'fixed_bounded': [],
    'fixed_unbounded': ['q:3'],
    'extendable': False,
  }


def test_v_two_fixes_two_unbounded_structures():
  report = mcg_action.invariant_structures(surface_families.v(2))
  assert report.fixed_bounded == []
  assert [str(q) for q in report.fixed_unbounded] == ['q:0', 'q:f']


@pytest.mark.parametrize(('genus', 'extendable'), [(1, False), (3, True),
                                                   (4, True), (5, False)])
def test_wiman_extendability(genus, extendable):
  verdict, witness = mcg_action.is_extendable(surface_families.wiman(genus))
  assert verdict is extendable
  assert (witness is not None) is extendable
  if witness is not None:
    assert spin_structures.is_bounded(witness)


def test_fixed_space_works_above_the_cutoff():
  tau = surface_families.tau(40)
  particular, kernel = mcg_action.fixed_space(tau)
  assert kernel == []
  assert particular == 0
  assert mcg_action.count_invariant(surface_families.v(40)) == 2
  with pytest.raises(errors.CutoffExceededError):
    mcg_action.invariant_structures(tau)


def test_unknown_method():
  with pytest.raises(ValueError):
    mcg_action.invariant_values(surface_families.tau(1), method='guess')


@pytest.mark.parametrize('genus', range(1, 4))
@pytest.mark.parametrize('arf_class', list(ArfClass))
def test_orbit_stabilizer(genus, arf_class):
  f = surface_families.v(genus)
  order = gf2_core.map_order(f)
  records = mcg_action.orbits(f, arf_class)
  total = sum(r.size for r in records)
  expected = (
    number_theory.bg_card(genus)
    if arf_class is ArfClass.BOUNDED
    else number_theory.ug_card(genus)
  )
  assert total == expected
  for r in records:
    assert r.size * r.stabilizer_order == order
    assert spin_structures.arf(r.representative) == arf_class
  representatives = [r.representative.basis_values for r in records]
  assert representatives == sorted(representatives)


def test_tau_one_orbits():
  bounded = mcg_action.orbits(surface_families.tau(1), ArfClass.BOUNDED)
  assert [(str(r.representative), r.size) for r in bounded] == [('q:0', 3)]
  unbounded = mcg_action.orbits(surface_families.tau(1), ArfClass.UNBOUNDED)
  assert [(str(r.representative), r.size) for r in unbounded] == [('q:3', 1)]


@pytest.mark.parametrize(
  ('genus', 'sizes'), [(1, [1, 3]), (2, [6, 10]), (3, [28, 36])]
)
def test_transvections_act_with_two_orbits(genus, sizes):
  form = gf2_core.standard_form(genus)
  found = mcg_action.group_orbits(gf2_core.transvections(form), form)
  assert sorted(len(orbit) for orbit in found) == sizes
  for orbit in found:
    assert len({spin_structures.arf(q) for q in orbit}) == 1


def test_pgroup_guarantee_for_tau_one():
  tau = surface_families.tau(1)
  bounded = mcg_action.pgroup_fixed_point_guarantee(
    tau, 3, 1, ArfClass.BOUNDED
  )
  assert bounded.verdict is Guarantee.NOT_GUARANTEED
  assert bounded.fixed == []
  assert bounded.consistent
  unbounded = mcg_action.pgroup_fixed_point_guarantee(
    tau, 3, 1, ArfClass.UNBOUNDED
  )
  assert unbounded.verdict is Guarantee.GUARANTEED
  assert [str(q) for q in unbounded.fixed] == ['q:3']


def test_pgroup_guarantee_for_tau_three():
  result = mcg_action.pgroup_fixed_point_guarantee(
    surface_families.tau(3), 7, 1, ArfClass.BOUNDED
  )
  assert result.verdict is Guarantee.GUARANTEED
  assert result.class_cardinality == 36
  assert len(result.fixed) == 1


def test_pgroup_guarantee_rejects_bad_input():
  tau = surface_families.tau(1)
  with pytest.raises(errors.OrderMismatchError):
    mcg_action.pgroup_fixed_point_guarantee(tau, 5, 1, ArfClass.BOUNDED)
  with pytest.raises(errors.InvalidPrimeError):
    mcg_action.pgroup_fixed_point_guarantee(tau, 9, 1, ArfClass.BOUNDED)
  with pytest.raises(errors.InvalidPrimeError):
    mcg_action.pgroup_fixed_point_guarantee(tau, 2, 1, ArfClass.BOUNDED)


def test_pgroup_guarantee_rejects_inconsistent_fixed_points(monkeypatch):
  monkeypatch.setattr(
    mcg_action,
    'invariant_structures',
    lambda f, **kwargs: FixedPointReport(genus=f.genus, map_order=7),
  )
  with pytest.raises(errors.OrbitCountError, match='p=7'):
    mcg_action.pgroup_fixed_point_guarantee(
      surface_families.tau(3), 7, 1, ArfClass.BOUNDED
    )


@pytest.mark.parametrize('genus', range(1, 6))
def test_conjugates_agree(genus):
  assert mcg_action.stress_conjugates(
    surface_families.wiman(genus), 5, seed=genus
  ) == []


def test_conjugate_is_form_preserving():
  f = surface_families.tau(3)
  h = _random_map(3, 7)
  g = mcg_action.conjugate(f, h)
  assert gf2_core.is_form_preserving(g.columns, g.form)
  assert gf2_core.map_order(g) == 7


def test_pullback_checks_surface():
  q = spin_structures.zero_structure(gf2_core.standard_form(2))
  with pytest.raises(errors.GenusMismatchError):
    mcg_action.pullback(surface_families.tau(1), q)
  q = spin_structures.zero_structure(gf2_core.block_form(2))
  with pytest.raises(errors.GenusMismatchError):
    mcg_action.pullback(surface_families.tau(2), q)


def test_pullback_under_swap():
  form = gf2_core.standard_form(1)
  q = spin_structures.spin_structure(form, 0b10)
  assert mcg_action.pullback(surface_families.v(1), q).basis_values == 0b01
  identity = gf2_core.identity(form)
  assert mcg_action.pullback(identity, q) == q


def test_tau_one_invariance():
  form = gf2_core.standard_form(1)
  tau = surface_families.tau(1)
  assert mcg_action.is_invariant(tau, spin_structures.spin_structure(form, 3))
  assert not mcg_action.is_invariant(
    tau, spin_structures.spin_structure(form, 0b10)
  )


def test_tau_two_bounded_orbits():
  records = mcg_action.orbits(surface_families.tau(2), ArfClass.BOUNDED)
  assert sum(r.size for r in records) == 10
  assert {r.size for r in records} == {5}


def test_identity_orbits_are_points():
  identity = gf2_core.identity(gf2_core.standard_form(2))
  records = mcg_action.orbits(identity, ArfClass.UNBOUNDED)
  assert [r.size for r in records] == [1] * 6


def test_conjugate_by_identity():
  f = surface_families.wiman(2)
  assert mcg_action.conjugate(f, gf2_core.identity(f.form)) == f
