"""Homology actions of the model periodic maps on the x-basis.

On the 4g-gon model of F_g the classes x_1..x_{2g} together with
x_{2g+1} = x_1 + ... + x_{2g} are permuted cyclically:

  tau_g   x_1 -> x_2 -> ... -> x_{2g} -> x_{2g+1} -> x_1     order 2g+1
  v_g     x_1 -> x_2 -> ... -> x_{2g} -> x_1                 order 2g on Z_2
  eta     x_i -> -x_i, the identity on Z_2
  w_g     eta o tau_g^{g+1} = tau_g^{g+1}                    (w_g^2 = tau_g)

Only homology orders are computed; the orders of the maps on the surface
are recorded by surface_order.
"""

from src import utils
from src.spinform import gf2_core
from src.spinform.spin_types import FamilyId, FamilyKind, HomologyMap


def tau(g: int) -> HomologyMap:
  """x_i -> x_{i+1} for i < 2g, x_{2g} -> x_1 + ... + x_{2g}."""
  utils.check_positive_genus(g)
  form = gf2_core.standard_form(g)
  n = 2 * g
  columns = [1 << (i + 1) for i in range(n - 1)]
  columns.append(gf2_core.all_ones(g).bits)
  return HomologyMap(genus=g, columns=tuple(columns), form=form)


def v(g: int) -> HomologyMap:
  """Cyclic shift x_1 -> x_2 -> ... -> x_{2g} -> x_1.

  Over Z the rotation has order 4g and sends x_{2g} to -x_1; the sign is
  invisible mod 2, so the homology order here is 2g.
  """
  utils.check_positive_genus(g)
  form = gf2_core.standard_form(g)
  n = 2 * g
  columns = tuple(1 << ((i + 1) % n) for i in range(n))
  return HomologyMap(genus=g, columns=columns, form=form)


def eta(g: int) -> HomologyMap:
  utils.check_positive_genus(g)
  return gf2_core.identity(gf2_core.standard_form(g))


def wiman(g: int) -> HomologyMap:
  return gf2_core.compose(eta(g), gf2_core.power(tau(g), g + 1))


_BUILDERS = {
  FamilyKind.TAU: tau,
  FamilyKind.V: v,
  FamilyKind.ETA: eta,
  FamilyKind.WIMAN: wiman,
}


def parse_family(name: str) -> FamilyKind:
  """Case-insensitive family name: tau, v, eta or wiman."""
  try:
    return FamilyKind(name.strip().lower())
  except ValueError:
    choices = ', '.join(kind.value for kind in FamilyKind)
    raise ValueError(
      f'Unknown family "{name}". Expected one of: {choices}'
    ) from None


def build(family: FamilyId) -> HomologyMap:
  return _BUILDERS[family.kind](family.genus)


def surface_order(family: FamilyId) -> int:
  """Order of the model map on F_g itself (metadata, never computed)."""
  g = family.genus
  match family.kind:
    case FamilyKind.TAU:
      return 2 * g + 1
    case FamilyKind.V:
      return 4 * g
    case FamilyKind.ETA:
      return 2
    case FamilyKind.WIMAN:
      return 4 * g + 2


def expected_extendable(family: FamilyId) -> bool:
  """Closed-form verdict: is there a bounded invariant structure?"""
  residue = family.genus % 4
  match family.kind:
    case FamilyKind.TAU | FamilyKind.WIMAN:
      return residue in (0, 3)
    case FamilyKind.V:
      return residue in (0, 1, 3)
    case FamilyKind.ETA:
      return True
