import json

import pytest

from nilpotent_cortex.cli import RunConfig, build_parser, main


@pytest.fixture
def g3_file(tmp_path):
    path = str(tmp_path / 'g3.json')
    assert main(['gd', '3', '--out', path]) == 0
    return path


def test_gd_writes_structure_constants(capsys):
    assert main(['gd', '2']) == 0
    record = json.loads(capsys.readouterr().out)
    assert record['dim'] == 8
    assert len(record['brackets']) == 4


def test_validate(g3_file, raw_file, capsys):
    assert main(['validate', g3_file]) == 0
    out = capsys.readouterr().out
    assert "TWO-STEP NILPOTENT: Jacobi ✓, class 2" in out
    assert "dim center = 3" in out

    assert main(['validate', raw_file('broken_jacobi.json')]) == 1
    assert "NOT A LIE ALGEBRA: Jacobi fails on basis triple (1, 2, 3)" in capsys.readouterr().out

    assert main(['validate', raw_file('filiform4.json')]) == 1
    assert "NOT TWO-STEP: nilpotency class 3" in capsys.readouterr().out


def test_validate_malformed_file(tmp_path, capsys):
    path = tmp_path / 'bad.json'
    path.write_text('{"dim": 2, "basis": ["A", "B"], "brackets": [{"i": 1}]}', encoding='utf-8')
    assert main(['validate', str(path)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: ")
    assert "bracket 1" in err


def test_cortex_test(capsys):
    assert main(['cortex-test', '2', '0,0,1,2,3,6,0,0']) == 0
    assert "MEMBER: z=0 ✓, Q_2 = 0 ✓" in capsys.readouterr().out

    assert main(['cortex-test', '2', '0,0,1,0,0,1,0,0']) == 1
    assert "NON-MEMBER" in capsys.readouterr().out

    assert main(['cortex-test', '2', '1,2,3']) == 2


def test_witness(capsys):
    assert main(['witness', '2', '0,0,1,2,3,6,0,0', '1/10,1/100,1/1000',
                 '--format', 'record']) == 0
    record = json.loads(capsys.readouterr().out)
    assert record['passed'] is True
    assert [row['residual_z1'] for row in record['table']] == ['1/10', '1/100', '1/1000']
    assert [row['residual_z2'] for row in record['table']] == ['1/5', '1/50', '1/500']

    assert main(['witness', '2', '0,0,1,0,0,1,0,0', '1/10']) == 1
    assert main(['witness', '2', '0,0,1,2,3,6,0,0', '0']) == 1
    assert main(['witness', '2', '0,0,1,2,3,6,0,0', '1/0']) == 2


def test_witness_perturbation_mode(capsys):
    assert main(['witness', '2', '0,0,0,1,0,5,0,0', '1/100,1/10000',
                 '--perturb', '1/10,1/100']) == 0
    assert "(numeric evidence)" in capsys.readouterr().out


def test_witness_perturbation_rejects_zero_eta(capsys):
    assert main(['witness', '2', '0,0,0,1,0,5,0,0', '1/100', '--perturb', '0']) == 1
    assert "perturbation parameters must be nonzero" in capsys.readouterr().err


def test_non_utf8_inputs_are_parse_errors(tmp_path, capsys):
    path = tmp_path / 'latin1.json'
    path.write_bytes(b'{"dim": 1, "basis": ["\xff"], "brackets": []}')
    assert main(['validate', str(path)]) == 2
    assert "not valid UTF-8" in capsys.readouterr().err

    ell = tmp_path / 'ell.txt'
    ell.write_bytes(b'0,0,1,2,3,6,0,\xff')
    assert main(['cortex-test', '2', f"@{ell}"]) == 2
    assert "not valid UTF-8" in capsys.readouterr().err


def test_unwritable_output_fails_cleanly(tmp_path, capsys):
    blocker = tmp_path / 'f.txt'
    blocker.write_text("not a folder", encoding='utf-8')
    assert main(['gd', '2', '--out', str(blocker / 'g2.json')]) == 1
    assert capsys.readouterr().err.startswith("error: ")


def test_invariants(capsys):
    assert main(['invariants', '2']) == 0
    assert "all derivations vanish: ✓" in capsys.readouterr().out


def test_classify(raw_file, g3_file, capsys):
    assert main(['classify', raw_file('heisenberg.json')]) == 0
    assert "Cor = z^⊥" in capsys.readouterr().out

    assert main(['classify', g3_file, '--trials', '5']) == 0
    assert "inconclusive" in capsys.readouterr().out

    assert main(['classify', raw_file('filiform4.json')]) == 1


def test_cloud_csv_is_reproducible(raw_file, tmp_path):
    paths = [str(tmp_path / f"cloud{k}.csv") for k in range(2)]
    for path in paths:
        assert main(['cloud', raw_file('heisenberg.json'), '--samples', '500',
                     '--seed', '7', '--format', 'csv', '--out', path]) == 0
    first, second = (open(path, 'rb').read() for path in paths)
    assert first == second
    assert first.decode().splitlines()[0] == 'u1,u2,u3'


def test_cloud_report(raw_file, capsys):
    assert main(['cloud', raw_file('heisenberg.json'), '--samples', '200']) == 0
    out = capsys.readouterr().out
    assert "(numeric evidence)" in out
    assert "sphere coverage" in out


def test_cross_section(capsys):
    assert main(['cross-section', '2', '1,2,1,1,1,1,5,7']) == 0
    assert "P_d(ell) = 1,2,0,-1,0,-1,0,0" in capsys.readouterr().out

    assert main(['cross-section', '2', '0,1,1,1,1,1,1,1']) == 1


def test_orbit_and_jump(g3_file, capsys):
    ell = '1,1,1,0,0,0,0,0,0,0,0,0'
    assert main(['orbit', g3_file, ell]) == 0
    assert "orbit dimension 6" in capsys.readouterr().out

    assert main(['jump', g3_file, ell, '--format', 'record']) == 0
    record = json.loads(capsys.readouterr().out)
    assert record['verdict'] == "jump indices {4, 6, 8, 10, 11, 12}"


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(['cortex-test', 'two', '0']) == 2
    assert main(['gd', '2', '--format', 'yaml']) == 2


def test_run_config_from_namespace():
    args = build_parser().parse_args(['cloud', 'h.json', '--samples', '50', '--seed', '3'])
    config = RunConfig.from_namespace(args)
    assert config == RunConfig(command='cloud', file='h.json', samples=50, seed=3)
