import hashlib
import json
from pathlib import Path

import pytest

from qsym.cli import run
from qsym.fileio import dump

assets = Path(__file__).parent / 'assets'
colourings = assets / 'colourings'


def _report(capsys):
    return json.loads(capsys.readouterr().out)


def test_halfgraph_gen(capsys, tmp_path):
    assert run(['halfgraph', 'gen', '--support', '0,1/2,1']) == 0
    report = _report(capsys)
    assert report['command'] == 'halfgraph gen'
    assert report['inputs']['support'] == ['0/1', '1/2', '1/1']
    assert report['results']['vertices'] == 6
    assert report['results']['edges'] == 3
    assert report['pass'] is True

    output = tmp_path / 'grid.json'
    assert run(['halfgraph', 'gen', '--support-grid', '0', '1', '5', '-o', str(output)]) == 0
    assert _report(capsys)['results']['edges'] == 10
    assert len(json.loads(output.read_text())['vertices']) == 10


def test_support_usage(capsys):
    assert run(['halfgraph', 'gen']) == 2
    assert run(['halfgraph', 'gen', '--support', '0,1', '--support-grid', '0', '1', '3']) == 2
    assert run(['halfgraph', 'gen', '--support', '0,x']) == 2
    assert run(['check', 'lemmas', '--support', '1,0']) == 2
    assert capsys.readouterr().out == ''


def test_aut_commands(capsys, tmp_path):
    graph = tmp_path / 'trunc.json'
    assert run(['halfgraph', 'gen', '--support', '0,1,2', '-o', str(graph)]) == 0
    capsys.readouterr()

    assert run(['aut', 'enumerate', str(graph)]) == 0
    report = _report(capsys)
    assert report['results']['order'] == 4
    assert report['results']['elements'][0] == list(range(6))
    assert report['inputs']['order_cap'] == 1000000

    assert run(['aut', 'enumerate', str(graph), '--order-cap', '2']) == 1
    report = _report(capsys)
    assert report['results']['error'] == 'OrderCapExceeded'
    assert report['pass'] is False

    assert run(['motion', str(graph)]) == 0
    assert _report(capsys)['results'] == {'motion': 2, 'order': 4}

    assert run(['motion', str(assets / 'spider.json')]) == 0
    assert _report(capsys)['results'] == {'motion': None, 'order': 1}

    assert run(['distnum', str(graph)]) == 0
    assert _report(capsys)['results']['distinguishing_number'] == 2

    assert run(['distnum', str(graph), '--max-colours', '1']) == 1
    assert _report(capsys)['results']['distinguishing_number'] is None


def test_verify_colouring(capsys):
    graph = str(assets / 'truncation3.json')
    assert run(['verify-colouring', graph, '--colours', '1,0,1,0,0,0']) == 0
    report = _report(capsys)
    assert report['results']['distinguishing'] is True
    assert report['results']['stabilizer_order'] == 1

    assert run(['verify-colouring', graph, '--colours', '0,0,0,0,0,0']) == 1
    report = _report(capsys)
    assert report['results']['distinguishing'] is False
    assert report['results']['stabilizer_order'] == 4
    assert len(report['results']['preserving']) == 3

    assert run(['verify-colouring', graph, '--colours', '0,0']) == 2
    assert run(['verify-colouring', graph, '--colours', 'a,b']) == 2


def test_check_lemmas(capsys):
    assert run(['check', 'lemmas', '--support-grid', '0', '3', '7']) == 0
    report = _report(capsys)
    assert report['pass'] is True
    assert report['results']['group_order'] == 4
    assert report['results']['failures'] == []


def test_arc_witness(capsys):
    assert run(['arc-witness', '--to', '1/2,3,minus-to-plus']) == 0
    report = _report(capsys)
    assert report['results']['images'] == ['3/1-', '1/2+']
    assert report['results']['images'] == report['results']['target']
    assert report['results']['witness']['flavour'] == 'down'

    assert run(['arc-witness', '--to', '-2,5/3,plus-to-minus']) == 0
    assert _report(capsys)['results']['images'] == ['-2/1+', '5/3-']

    assert run(['arc-witness', '--to', '3,1/2,plus-to-minus']) == 2
    assert run(['arc-witness', '--to', '0,1,sideways']) == 2
    assert run(['arc-witness', '--to', '0,1']) == 2


def test_refute_order(capsys):
    assert run(['refute-order', '--colouring', str(colourings / 'middle.json'), '--samples', '200']) == 0
    report = _report(capsys)
    assert report['pass'] is True
    assert report['results']['witness']['seed'] == ['1/2', '2/3']
    assert report['results']['witness']['region']['interval'] == ['0/1', '1/1']
    assert ['1/2', '2/3'] in report['results']['closed_form']['anchors']
    assert report['results']['report']['moved_points'] >= 1

    assert run(['refute-order', '--colouring', str(colourings / 'parity.json'), '--samples', '100']) == 0
    report = _report(capsys)
    assert report['results']['closed_form'] is None
    assert report['results']['witness']['region']['exact'] is False

    assert run(['refute-order', '--colouring', str(colourings / 'parity.json'), '--budget', '1']) == 1
    report = _report(capsys)
    assert report['results']['error'] == 'Inconclusive'


def test_refute(capsys):
    argv = ['refute', '--cplus', str(colourings / 'steps.yml'), '--cminus', str(colourings / 'middle.json'),
            '--samples', '200']
    assert run(argv) == 0
    report = _report(capsys)
    assert report['pass'] is True
    assert report['results']['report']['pair_alphabet'] == 6
    assert report['results']['report']['alphabet_bound'] == 9
    assert report['results']['witness']['flavour'] == 'up'


def test_input_errors(capsys, tmp_path):
    assert run(['refute-order', '--colouring', str(colourings / 'unknown_kind.json')]) == 2
    assert run(['refute-order', '--colouring', str(colourings / 'bad_pieces.json')]) == 2
    assert run(['refute-order', '--colouring', str(colourings / 'missing.json')]) == 2
    assert run(['motion', str(colourings / 'middle.json')]) == 2
    assert run(['no-such-command']) == 2

    graph = tmp_path / 'graph.txt'
    graph.write_text('{"n": 2}')
    assert run(['motion', str(graph)]) == 2
    colouring = tmp_path / 'colouring.cfg'
    colouring.write_text('kind: denom_mod')
    assert run(['refute-order', '--colouring', str(colouring)]) == 2
    config = tmp_path / 'list.yml'
    config.write_text('- 1\n')
    assert run(['--config', str(config), 'motion', str(assets / 'spider.json')]) == 2
    assert capsys.readouterr().out == ''


@pytest.mark.parametrize('graph', [
    {'n': 3, 'edges': [['a', 1]]},
    {'n': 'three'},
    {'n': 3, 'edges': [[0, 1.5]]},
    {'n': 3, 'edges': 7},
    {'vertices': [{'q': '0', 'side': '+'}, 3]},
    [1, 2, 3],
])
def test_malformed_graph(capsys, tmp_path, graph):
    path = tmp_path / 'graph.json'
    path.write_text(json.dumps(graph))
    assert run(['motion', str(path)]) == 2
    assert run(['distnum', str(path)]) == 2
    assert capsys.readouterr().out == ''


def test_sweep(capsys):
    assert run(['sweep', '--trials', '5', '--samples', '100', '--budget', '1000']) == 0
    report = _report(capsys)
    assert report['results']['passed'] == 5
    assert all(trial['reproducible'] for trial in report['results']['trials'])
    assert report['inputs']['seed'] == 42

    assert run(['sweep', '--trials', '5', '--samples', '100', '--budget', '1000']) == 0
    assert _report(capsys) == report

    assert run(['sweep', '--trials', '0']) == 2


def test_config_and_stamp(capsys, tmp_path):
    config = assets / 'config' / 'run.yml'
    assert run(['--config', str(config), 'sweep', '--trials', '2']) == 0
    report = _report(capsys)
    assert report['inputs']['samples'] == 300
    assert report['inputs']['budget'] == 5000
    assert report['inputs']['seed'] == 7

    assert run(['--config', str(assets / 'config' / 'bad_budget.json'), 'motion', str(assets / 'spider.json')]) == 2

    assert run(['--stamp', 'motion', str(assets / 'spider.json')]) == 0
    stamped = _report(capsys)
    assert set(stamped) == {'body', 'sha256', 'stamp'}
    body = dump(stamped['body'], file_format='json', sort_keys=True, indent=2)
    assert stamped['sha256'] == hashlib.sha256(body.encode('utf-8')).hexdigest()


@pytest.mark.parametrize('argv', [['--help'], ['aut', '--help']])
def test_help(capsys, argv):
    assert run(argv) == 0
    assert 'Usage' in capsys.readouterr().out
