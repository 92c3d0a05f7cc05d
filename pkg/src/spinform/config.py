"""Runtime settings: enumeration cutoffs, worker threads, default seed.

Values come from the environment (SPINFORM_THREADS, SPINFORM_CUTOFF,
SPINFORM_SEED) and may be overridden by CLI flags.
"""

import dataclasses
import logging
import os

import numba

logger = logging.getLogger(__name__)

# Full enumeration of 2^{2g} structures (or vectors) is refused above this.
DEFAULT_ENUMERATION_CUTOFF = 14
# Breadth-first group closure is refused above this genus (|Sp(6,2)| is
# already 1451520).
DEFAULT_CLOSURE_CUTOFF = 3
DEFAULT_MAP_ORDER_CAP = 2**16
DEFAULT_SEED = 0


@dataclasses.dataclass(slots=True, frozen=True)
class Settings:
  enumeration_cutoff: int = DEFAULT_ENUMERATION_CUTOFF
  closure_cutoff: int = DEFAULT_CLOSURE_CUTOFF
  map_order_cap: int = DEFAULT_MAP_ORDER_CAP
  threads: int | None = None
  seed: int = DEFAULT_SEED

  @classmethod
  def from_env(cls, environ: dict[str, str] | None = None) -> 'Settings':
    environ = os.environ if environ is None else environ
    kwargs = {}
    if threads := environ.get('SPINFORM_THREADS'):
      kwargs['threads'] = _positive_int('SPINFORM_THREADS', threads)
    if cutoff := environ.get('SPINFORM_CUTOFF'):
      kwargs['enumeration_cutoff'] = _positive_int('SPINFORM_CUTOFF', cutoff)
    if seed := environ.get('SPINFORM_SEED'):
      kwargs['seed'] = int(seed)
    return cls(**kwargs)

  def replace(self, **changes) -> 'Settings':
    """Copy with the non-None entries of `changes` applied."""
    changes = {k: v for k, v in changes.items() if v is not None}
    return dataclasses.replace(self, **changes)


def apply_threads(settings: Settings) -> int:
  """Cap numba's worker pool; returns the number of threads in use."""
  available = numba.config.NUMBA_NUM_THREADS
  if settings.threads is None:
    return numba.get_num_threads()
  threads = max(1, min(settings.threads, available))
  if threads != settings.threads:
    logger.warning(
      'Requested %d threads, only %d available.', settings.threads, available
    )
  numba.set_num_threads(threads)
  return threads


def _positive_int(name: str, value: str) -> int:
  try:
    parsed = int(value)
  except ValueError:
    raise ValueError(
      f'{name} must be an integer. Provided: "{value}"'
    ) from None
  if parsed < 1:
    raise ValueError(f'{name} must be positive. Provided: {parsed}')
  return parsed
