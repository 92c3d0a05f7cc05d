import numba
import pytest

from src.spinform import config


def test_defaults():
  settings = config.Settings.from_env({})
  assert settings == config.Settings()
  assert settings.enumeration_cutoff == 14
  assert settings.closure_cutoff == 3
  assert settings.threads is None
  assert settings.seed == 0


def test_from_env():
  settings = config.Settings.from_env(
    {'SPINFORM_THREADS': '2', 'SPINFORM_CUTOFF': '10', 'SPINFORM_SEED': '7'}
  )
  assert settings.threads == 2
  assert settings.enumeration_cutoff == 10
  assert settings.seed == 7


@pytest.mark.parametrize('value', ['0', '-3', 'many'])
def test_from_env_rejects_bad_values(value):
  with pytest.raises(ValueError, match='SPINFORM_THREADS'):
    config.Settings.from_env({'SPINFORM_THREADS': value})


def test_replace_ignores_unset_flags():
  settings = config.Settings(seed=5)
  assert settings.replace(seed=None, threads=None) == settings
  assert settings.replace(seed=9).seed == 9


def test_apply_threads_clamps():
  before = numba.get_num_threads()
  try:
    assert config.apply_threads(config.Settings()) == before
    assert config.apply_threads(config.Settings(threads=1)) == 1
    assert numba.get_num_threads() == 1
    available = numba.config.NUMBA_NUM_THREADS
    huge = config.Settings(threads=available + 100)
    assert config.apply_threads(huge) == available
  finally:
    numba.set_num_threads(before)
