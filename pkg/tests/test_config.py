import inspect
from fractions import Fraction

import pytest

from lattice_virasoro.core.config import Config, RunConfig
from lattice_virasoro.core.errors import ConfigError
from lattice_virasoro.core.suites import SuiteRunner


def test_defaults():
    config = Config()
    assert config.get('oracle.box_radius') == 200
    assert config.get('verify.max_index') is None
    assert config.oracle_mass == Fraction(1, 1000)
    assert config.coulomb_b == Fraction(1, 2)
    assert config.get('missing.key', 'fallback') == 'fallback'


def test_user_file_is_merged(tmp_path):
    path = tmp_path / 'custom.yml'
    path.write_text("oracle:\n  box_radius: 50\nverify:\n  coulomb_b: \"1/3\"\n")
    config = Config(str(path))
    assert config.get('oracle.box_radius') == 50
    assert config.get('oracle.tolerance') == 1e-4
    assert config.coulomb_b == Fraction(1, 3)


def test_missing_user_file_keeps_defaults(tmp_path):
    config = Config(str(tmp_path / 'absent.yml'))
    assert config.get('oracle.box_radius') == 200


def test_user_file_must_be_a_mapping(tmp_path):
    path = tmp_path / 'list.yml'
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        Config(str(path))


def test_set():
    config = Config()
    config.set('verify.window', 3)
    config.set('new.section.value', 'x')
    assert config.get('verify.window') == 3
    assert config.get('new.section.value') == 'x'


def test_run_config_overrides():
    config = Config()
    run = RunConfig.from_config(config, 'verify', suite='coulomb', window=2, max_index=None,
                                b=Fraction(1, 4), k=3)
    assert run.window == 2
    assert run.max_index is None
    assert run.b == Fraction(1, 4)
    assert run.extra == {'k': 3}
    assert run.validate() is run
    assert run.suite_parameters() == {
        'window': 2, 'b': Fraction(1, 4), 'growth': 2, 'mass': 0.001, 'box_radius': 200,
        'tolerance': 1e-4, 'asymptotic_tolerance': 1e-3, 'pi_digits': 100,
        'halfplane_width': 201, 'halfplane_height': 100,
    }


@pytest.mark.parametrize('overrides', [
    dict(window=0),
    dict(max_index=-1),
    dict(workers=0),
    dict(mass=Fraction(0)),
    dict(tolerance=0.0),
    dict(contour_growth=-1),
    dict(pi_digits=10),
    dict(evaluator='slow'),
    dict(suite='nonsense'),
])
def test_validation(overrides):
    params = dict(suite='heisenberg')
    params.update(overrides)
    with pytest.raises(ConfigError):
        RunConfig.from_config(Config(), 'verify', **params).validate()


def test_unknown_command():
    with pytest.raises(ConfigError):
        RunConfig.from_config(Config(), 'explode').validate()


def test_half_plane_box_defaults_agree():
    config = Config()
    run = RunConfig.from_config(config, 'verify', suite='kernel')
    signature = inspect.signature(SuiteRunner._suite_kernel).parameters
    for name in ('halfplane_width', 'halfplane_height'):
        assert config.get(f'oracle.{name}') == getattr(RunConfig, name) == getattr(run, name)
        assert signature[name].default == getattr(run, name)
    assert (run.halfplane_width, run.halfplane_height) == (201, 100)
