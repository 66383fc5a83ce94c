from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from espalier import docs
from espalier.bandword import bandword
from espalier.cli import run_command
from espalier.render import render_ascii, render_fence, render_svg

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
CORPUS = sorted((HERE / "corpus").glob("*.json"))
TREFOIL = bandword([1, 2], "1-2:+", "1-2:+", "1-2:+")


def cli(*args: str, stdin: str | None = None) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "espalier.cli", *args], input=stdin,
                          capture_output=True, text=True)


def test_single_band_ascii():
    out = render_ascii(bandword([1, 2], "1-2:+")).splitlines()
    assert out[1] == "1 |---|+"
    assert out[-1].split() == ["1", "2"]


def test_bare_wires():
    out = render_ascii(bandword([1, 2, 3])).splitlines()
    assert all(line.count("|") == 3 for line in out[:-1])
    assert "-" not in "".join(out)


def test_first_band_is_lowest_row():
    out = render_ascii(bandword([1, 2, 3], "1-2:+", "2-3:-")).splitlines()
    assert out[1].startswith("2") and out[1].endswith("|-")
    assert out[2].startswith("1") and "+" in out[2]


def test_svg_negative_band_gets_crook():
    svg = render_svg(bandword([1, 2, 3], "1-3:-", "1-2:+"))
    assert svg.count('class="crook"') == 1
    assert 'data-sign="-"' in svg and 'data-sign="+"' in svg
    assert svg.count('stroke="white"') == 1  # the 1-3 bar passes behind wire 2


def test_golden_trefoil():
    assert render_fence(TREFOIL, "ascii") == (GOLDEN / "trefoil.txt").read_text()
    assert render_fence(TREFOIL, "svg") == (GOLDEN / "trefoil.svg").read_text()


def test_distinct_words_render_distinctly():
    a = bandword([1, 2, 3], "1-2:+", "2-3:+")
    b = bandword([1, 2, 3], "2-3:+", "1-2:+")
    c = bandword([1, 2, 3], "1-2:+", "2-3:-")
    for fmt in ("ascii", "svg"):
        assert len({render_fence(a, fmt), render_fence(b, fmt), render_fence(c, fmt)}) == 3


def test_unknown_format():
    with pytest.raises(ValueError):
        render_fence(TREFOIL, "png")


def test_classify_trefoil(tmp_path, capsys):
    p = tmp_path / "t.json"
    p.write_text(json.dumps(docs.bandword_to_doc(TREFOIL)))
    assert run_command(["classify", str(p)]) == 0
    out = capsys.readouterr().out
    assert '"kind":"fibered","plumbands":2' in out


def test_classify_text_form_from_stdin():
    r = cli("classify", stdin="V: 1 2\n1-2:+ 1-2:-\n")
    assert r.returncode == 0 and json.loads(r.stdout)["kind"] == "compressible"


def test_emit_trace_round_trip():
    r = cli("classify", "--emit-trace", str(HERE / "corpus" / "03-figure-eight.json"))
    assert r.returncode == 0
    v = cli("verify-trace", stdin=r.stdout)
    assert v.returncode == 0, v.stderr


def test_tampered_trace_exits_one():
    r = cli("classify", "--emit-trace", str(HERE / "corpus" / "01-trefoil.json"))
    doc = json.loads(r.stdout)
    doc["trace"]["steps"][1]["result"]["word"][0]["sign"] = "-"
    v = cli("verify-trace", stdin=json.dumps(doc))
    assert v.returncode == 1
    assert v.stderr.count("\n") == 1 and "step 2" in v.stderr


def test_validate_linking_document(tmp_path):
    p = tmp_path / "link.json"
    p.write_text(json.dumps({"vertices": [1, 2, 3, 4], "edges": [[1, 3], [2, 4], [1, 2]]}))
    r = cli("validate", str(p))
    assert r.returncode == 1
    assert "{1,3}" in r.stderr and "{2,4}" in r.stderr


def test_exit_codes(tmp_path):
    assert cli("frobnicate").returncode == 2
    assert cli("classify", str(tmp_path / "missing.json")).returncode == 2
    bad = cli("classify", stdin="{not json")
    assert bad.returncode == 1 and bad.stderr.count("\n") == 1
    assert cli("analyze", stdin="V: 1 2\n1-2:+\n").returncode == 0


def test_normalize_outputs_basket_and_trace():
    r = cli("normalize", str(HERE / "corpus" / "01-trefoil.json"))
    doc = json.loads(r.stdout)
    assert len(doc["basket"]["plumbands"]) == 2
    assert cli("verify-trace", stdin=json.dumps(doc["trace"])).returncode == 0


def test_render_out_flag(tmp_path):
    out = tmp_path / "f.svg"
    r = cli("render", "--format", "svg", "--out", str(out), str(HERE / "corpus" / "01-trefoil.json"))
    assert r.returncode == 0 and r.stdout == ""
    assert out.read_text() == (GOLDEN / "trefoil.svg").read_text()


def test_help_documents_row_order():
    r = cli("render", "--help")
    assert "bottom to top" in r.stdout


def test_corpus_size():
    assert len(CORPUS) == 20
