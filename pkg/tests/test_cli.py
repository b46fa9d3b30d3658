import json

import pytest

import cli
import hasse
from config import LabSettings
from exceptions import ConfigError
from records import CountReport

CURVE_5 = ['--p', '5', '--a', '1', '--b', '1']


@pytest.fixture(autouse=True)
def default_settings(monkeypatch):
    monkeypatch.setattr(cli, 'load_settings', lambda: LabSettings(threads=2))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hasse_check_single_report(capsys):
    code, out, _ = run(capsys, 'hasse-check', *CURVE_5)
    assert code == 0
    assert json.loads(out) == {'p': 5, 'a': 1, 'b': 1, 'N': 9, 't': -3,
                               'bound_ok': True, 'd_one_minus_pi': 9}


@pytest.mark.parametrize("command", ['count', 'trace'])
def test_count_and_trace(capsys, command):
    code, out, _ = run(capsys, command, *CURVE_5, '--format', 'csv')
    assert code == 0
    assert out.splitlines()[1] == '5,1,1,9,-3,true,9'


def test_zagier_csv(capsys):
    code, out, _ = run(capsys, 'zagier', '--p-max', '100', '--format', 'csv')
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == 'p,class7,S,A,B,verdict'
    assert len(lines) == 26
    assert '11,QR,4,2,1,TWO_A_OK' in lines


def test_parallelogram_two_three(capsys):
    code, out, _ = run(capsys, 'parallelogram', *CURVE_5, '--m', '2', '--n', '3')
    record = json.loads(out)
    assert code == 0
    assert record['lhs'] == record['rhs'] == 26


def test_parallelogram_identity_frobenius_default(capsys):
    code, out, _ = run(capsys, 'parallelogram', '--p', '97', '--a', '2', '--b', '3')
    record = json.loads(out)
    assert code == 0
    assert (record['left'], record['right'], record['lhs']) == ('[1]', 'pi', 196)


def test_mult_map_default_range(capsys):
    code, out, _ = run(capsys, 'mult-map', *CURVE_5)
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [r['m'] for r in records] == [1, 2, 3, 4, 6, 7, 8]
    assert all(r['oracle_ok'] and r['degree'] == r['m'] ** 2 for r in records)


def test_char_eq(capsys):
    code, out, _ = run(capsys, 'char-eq', *CURVE_5, '--m', '1', '--n', '1')
    record = json.loads(out)
    assert code == 0
    assert (record['tr'], record['nrm'], record['points'], record['ok']) == (-1, 3, 27, True)


def test_fuzz_and_resultant_commands(capsys):
    for command in ('lemma1-fuzz', 'lemma2-fuzz'):
        code, out, _ = run(capsys, command, '--p', '97', '--iters', '60', '--seed', '3')
        assert code == 0
        assert sum(json.loads(line)['draws'] for line in out.splitlines()) == 60
    code, out, _ = run(capsys, 'resultant-id', '--p', '97', '--iters', '10')
    assert code == 0
    assert len(out.splitlines()) == 10


def test_hasse_sweep_summary(capsys):
    code, out, _ = run(capsys, 'hasse-sweep', '--p-max', '13', '--summary', '--workers', '2')
    summary = json.loads(out)
    assert code == 0
    assert (summary['primes'], summary['failures']) == (4, 0)


def test_output_is_deterministic(capsys):
    first = run(capsys, 'lemma2-fuzz', '--p', '5', '--iters', '40', '--format', 'human')
    second = run(capsys, 'lemma2-fuzz', '--p', '5', '--iters', '40', '--format', 'human')
    assert first[1] == second[1] and first[0] == 0


def test_out_file(capsys, tmp_path):
    target = tmp_path / 'report.csv'
    code, out, _ = run(capsys, 'hasse-check', *CURVE_5, '--format', 'csv', '--out', str(target))
    assert code == 0 and out == ''
    assert target.read_text().splitlines()[0] == 'p,a,b,N,t,bound_ok,d_one_minus_pi'


def test_unwritable_output_exits_one(capsys, tmp_path):
    code, _, _ = run(capsys, 'hasse-check', *CURVE_5, '--out', str(tmp_path / 'missing' / 'x.csv'))
    assert code == 1


@pytest.mark.parametrize("argv", [
    ['hasse-check', '--p', '4', '--a', '1', '--b', '1'],
    ['hasse-check', '--p', '5', '--a', '0', '--b', '0'],
    ['hasse-sweep', '--p-max', '131'],
    ['mult-map', *CURVE_5, '--m', '5'],
    ['parallelogram', *CURVE_5, '--m', '2', '--n', '2'],
    ['zagier'],
    ['lemma1-fuzz', '--p', '97', '--iters', '0'],
    ['hasse-check', '--p', 'five', '--a', '1', '--b', '1'],
    ['no-such-command'],
])
def test_usage_errors_exit_two(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2
    assert out == ''


def test_bad_settings_exit_two(capsys, monkeypatch):
    def broken():
        raise ConfigError("ISOGENY_LAB_THREADS must be >= 1, got 0")
    monkeypatch.setattr(cli, 'load_settings', broken)
    assert run(capsys, 'hasse-check', *CURVE_5)[0] == 2


def test_failing_record_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(hasse, 'hasse_check', lambda curve: CountReport(5, 1, 1, 9, 9, False, 9))
    code, out, _ = run(capsys, 'hasse-check', *CURVE_5)
    assert code == 1
    assert json.loads(out)['bound_ok'] is False


def test_identity_violation_exits_one(capsys, monkeypatch):
    from exceptions import IdentityViolation

    def violated(curve):
        raise IdentityViolation("forced")
    monkeypatch.setattr(hasse, 'hasse_check', violated)
    assert run(capsys, 'hasse-check', *CURVE_5)[0] == 1


def test_unknown_subcommand_in_dispatch():
    assert cli.dispatch(cli.RunConfig(subcommand='bogus')) == 2


def test_count_and_trace_documented_as_aliases():
    text = ' '.join(cli.build_parser().format_help().split())
    assert text.count('(alias of hasse') == 2
