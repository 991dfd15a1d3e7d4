"""
Command-line surface: flags, config files, reports and exit codes
"""
import json

import pytest

from dampinglab.utils.csv_io import read_csv_table


def _invoke(runner, *args):
    return runner.invoke(args=[str(arg) for arg in args])


def _load(path):
    return json.loads(path.read_text(encoding='utf-8'))


# ============================================================================
# REPORTS
# ============================================================================

def test_classify_writes_the_report(runner, output_dir):
    result = _invoke(runner, 'classify', '--model', 'wave', '--theta', -1, '--output-dir', output_dir)
    assert result.exit_code == 0, result.output
    assert '"success": true' in result.output

    report = _load(output_dir / 'wave_classify.json')['report']
    assert report['verdict'] == 'Semiuniform'
    assert report['rates']['rate_lower'] == 't^(-0.5)'


def test_spectrum_portrait_files(runner, output_dir):
    result = _invoke(runner, 'spectrum', '--model', 'wave', '--theta', 0, '--modes', 50,
                     '--output-dir', output_dir)
    assert result.exit_code == 0, result.output

    header, rows = read_csv_table(output_dir / 'wave_spectrum.csv')
    assert header == ['s_or_ell', 'label', 're', 'im', 'eigenvalue_flag', 'regime']
    assert len(rows) == 100
    assert all(row[header.index('re')] == pytest.approx(-0.5) for row in rows)
    assert all(row[header.index('eigenvalue_flag')] is True for row in rows)

    assert 'points-xi_plus' in (output_dir / 'wave_spectrum.svg').read_text(encoding='utf-8')
    summary = _load(output_dir / 'wave_spectrum.json')
    assert summary['portrait']['spectral_bound'] == pytest.approx(-0.5)
    assert summary['regimes']['underdamped'] == 50


@pytest.mark.parametrize('omega', [0.005, 1.0])
def test_beam_with_rotational_inertia_runs(runner, output_dir, omega):
    result = _invoke(runner, 'classify', '--model', 'beam-rot', '--theta', 1, '--omega', omega,
                     '--output-dir', output_dir)
    assert result.exit_code == 0, result.output
    assert (output_dir / 'beam-rot_classify.json').is_file()


def test_reports_are_reproducible(runner, tmp_path):
    first, second = tmp_path / 'first', tmp_path / 'second'
    for target in (first, second):
        result = _invoke(runner, 'spectrum', '--model', 'wave', '--theta', 0.5, '--modes', 40,
                         '--output-dir', target)
        assert result.exit_code == 0, result.output

    for name in ('wave_spectrum.csv', 'wave_spectrum.svg', 'wave_spectrum.json'):
        assert (first / name).read_bytes() == (second / name).read_bytes(), name


def test_simulate_from_initial_data(runner, tmp_path, output_dir):
    initial = tmp_path / 'initial.csv'
    initial.write_text('s,u,v\n1,1,0\n4,0.5,1\n9,0,2\n', encoding='utf-8')
    result = _invoke(runner, 'simulate', '--model', 'wave', '--theta', 0, '--initial', initial,
                     '--t-max', 1, '--t-count', 3, '--output-dir', output_dir)
    assert result.exit_code == 0, result.output

    header, rows = read_csv_table(output_dir / 'wave_trajectory.csv')
    assert header == ['t', 'energy', 'dissipation_rate', 'psi', 'maximizing_mode']
    assert len(rows) == 3
    assert all(row[header.index('psi')] > 0 for row in rows)
    assert all(row[header.index('maximizing_mode')] >= 1.0 for row in rows)
    assert rows[0][0] == 0.0
    assert rows[0][1] == pytest.approx(3.5, rel=1e-12)
    assert rows[-1][1] < rows[0][1]
    assert _load(output_dir / 'wave_trajectory.json')['energy_nonincreasing'] is True


def test_simulate_leaves_psi_empty_without_an_inverse(runner, output_dir):
    result = _invoke(runner, 'simulate', '--model', 'wave', '--theta', 2, '--modes', 20,
                     '--t-max', 1, '--t-count', 4, '--output-dir', output_dir)
    assert result.exit_code == 0, result.output

    header, rows = read_csv_table(output_dir / 'wave_trajectory.csv')
    assert len(rows) == 4
    assert all(row[header.index('psi')] == '' for row in rows)
    assert all(row[header.index('maximizing_mode')] == '' for row in rows)
    assert all(row[header.index('energy')] > 0 for row in rows)


def test_simulate_rejects_points_off_the_spectrum(runner, tmp_path, output_dir):
    initial = tmp_path / 'initial.csv'
    initial.write_text('s,u,v\n2,1,0\n', encoding='utf-8')
    result = _invoke(runner, 'simulate', '--model', 'wave', '--theta', 0, '--initial', initial,
                     '--output-dir', output_dir)
    assert result.exit_code == 1
    assert 'InvalidParameter' in result.output


def test_psi_and_resolvent_reports(runner, output_dir):
    result = _invoke(runner, 'psi', '--model', 'wave', '--theta', -1, '--modes', 100,
                     '--t-max', 100, '--t-count', 10, '--output-dir', output_dir)
    assert result.exit_code == 0, result.output
    header, rows = read_csv_table(output_dir / 'wave_psi.csv')
    assert header == ['t', 'psi', 'maximizing_s', 'certified']
    assert len(rows) == 10

    result = _invoke(runner, 'resolvent', '--model', 'wave', '--theta', -1, '--modes', 100,
                     '--lambda-max', 50, '--lambda-count', 50, '--output-dir', output_dir)
    assert result.exit_code == 0, result.output
    summary = _load(output_dir / 'wave_resolvent.json')
    assert summary['verdict'] == 'Semiuniform'
    assert summary['sup_norm'] == pytest.approx(2 * 50 ** 2, rel=0.05)
    assert (output_dir / 'wave_resolvent.svg').is_file()


def test_table_over_a_grid(runner, output_dir):
    result = _invoke(runner, 'table', '--family', 'wave', '--grid', '-1,0,0.5,1,2', '--output-dir', output_dir)
    assert result.exit_code == 0, result.output

    header, rows = read_csv_table(output_dir / 'wave_table.csv')
    verdicts = {row[0]: row[header.index('verdict')] for row in rows}
    assert verdicts[-1.0] == 'Semiuniform'
    assert verdicts[0.0] == verdicts[0.5] == verdicts[1.0] == 'Exponential'
    assert verdicts[2.0] == 'StableOnly'


# ============================================================================
# CONFIG FILES
# ============================================================================

def test_config_file_runs(runner, tmp_path, output_dir):
    config = tmp_path / 'run.env'
    config.write_text(f'MODEL=wave\nTHETA=-0.5\nMODES=60\nOUTPUT_DIR={output_dir}\n', encoding='utf-8')
    result = _invoke(runner, 'classify', '--config', config)
    assert result.exit_code == 0, result.output

    payload = _load(output_dir / 'wave_classify.json')
    assert payload['run']['budget'] == 60
    assert payload['report']['verdict'] == 'Semiuniform'


def test_flags_override_the_config_file(runner, tmp_path, output_dir):
    config = tmp_path / 'run.env'
    config.write_text('MODEL=wave\nTHETA=-0.5\n', encoding='utf-8')
    result = _invoke(runner, 'classify', '--config', config, '--theta', 0.5, '--output-dir', output_dir)
    assert result.exit_code == 0, result.output
    assert _load(output_dir / 'wave_classify.json')['report']['verdict'] == 'Exponential'


def test_unknown_config_key_names_its_line(runner, tmp_path):
    config = tmp_path / 'run.env'
    config.write_text('MODEL=wave\nDAMPNG=power\nTHETA=0\n', encoding='utf-8')
    result = _invoke(runner, 'classify', '--config', config)
    assert result.exit_code == 2
    assert 'ConfigError' in result.output
    assert 'line 2' in result.output


def test_preset_and_raw_spectrum_conflict(runner, tmp_path):
    config = tmp_path / 'run.env'
    config.write_text('MODEL=wave\nTHETA=0\nEIGENVALUES=1,4\n', encoding='utf-8')
    result = _invoke(runner, 'classify', '--config', config)
    assert result.exit_code == 2
    assert 'not both' in result.output


def test_bad_raw_value_names_its_line(runner, tmp_path):
    config = tmp_path / 'raw.env'
    config.write_text('EIGENVALUES=-1\nDAMPING=constant\nDAMPING_CONSTANT=1\n', encoding='utf-8')
    result = _invoke(runner, 'classify', '--config', config)
    assert result.exit_code == 2
    assert 'ConfigError' in result.output
    assert 'line 1: eigenvalues must be positive' in result.output


def test_missing_model_is_a_config_error(runner, output_dir):
    result = _invoke(runner, 'classify', '--output-dir', output_dir)
    assert result.exit_code == 2
    assert 'ConfigError' in result.output


def test_raw_tabulated_damping(runner, tmp_path, output_dir):
    (tmp_path / 'knots.csv').write_text('s,f\n1,1\n4,0\n9,1\n', encoding='utf-8')
    config = tmp_path / 'raw.env'
    config.write_text('EIGENVALUES=1,4,9\nDAMPING=tabulated\nDAMPING_KNOTS=knots.csv\n', encoding='utf-8')

    result = _invoke(runner, 'classify', '--config', config, '--output-dir', output_dir)
    assert result.exit_code == 0, result.output
    assert _load(output_dir / 'custom_classify.json')['report']['verdict'] == 'NotStable'

    result = _invoke(runner, 'simulate', '--config', config, '--t-max', 2, '--t-count', 5,
                     '--output-dir', output_dir)
    assert result.exit_code == 0, result.output
    assert 'constant_energy_witness' in _load(output_dir / 'custom_trajectory.json')


# ============================================================================
# COMPUTATION ERRORS
# ============================================================================

def test_psi_needs_an_invertible_generator(runner, output_dir):
    result = _invoke(runner, 'psi', '--model', 'wave', '--theta', 2, '--output-dir', output_dir)
    assert result.exit_code == 1
    assert 'NotBijective' in result.output


def test_bt_check_needs_semiuniform_stability(runner, output_dir):
    result = _invoke(runner, 'bt-check', '--model', 'wave', '--theta', 0, '--output-dir', output_dir)
    assert result.exit_code == 1
    assert 'NotSemiuniform' in result.output
    assert not (output_dir / 'wave_bt_check.json').exists()
