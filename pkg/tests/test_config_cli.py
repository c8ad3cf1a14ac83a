import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from diaglab import __version__
from diaglab.cli import main, resolve, run
from diaglab.config import loads, parse_family, parse_predicate, parse_rule
from diaglab.errors import DefinitionError, InputError
from diaglab.presets import PRESETS, list_presets
from diaglab.translist import Finite, Limit, entry_at

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())

MINIMAL = """
format = "diaglab/1"

[lists.ext]
prefix = ["0.01[0]", "0.001[0]"]
generator = "geometric_ones"
tail = ["0.[1]"]

[[experiment]]
kind = "diagonal"
list = "ext"
horizon = 128
"""


def machine(target, *extra):
    return subprocess.run(
        [sys.executable, "-m", "diaglab", "run", target, "--format", "machine", *extra],
        capture_output=True,
        text=True,
    )


class TestPresets:
    def test_catalog(self):
        names = [n for n, _ in list_presets()]
        for required in (
            "paper-original-set",
            "paper-extended-set",
            "paper-interleaved-set",
            "paper-rat-census",
            "paper-evens-pairing",
        ):
            assert required in names
        assert list_presets() == list_presets()
        assert all(desc for _, desc in list_presets())

    @pytest.mark.parametrize("name", list(PRESETS))
    def test_every_preset_runs_and_validates(self, name):
        first, second = machine(name), machine(name)
        assert first.returncode == 0, first.stderr
        assert first.stdout == second.stdout
        doc = json.loads(first.stdout)
        jsonschema.validate(doc, SCHEMA)
        assert doc["artifact_version"] == __version__
        assert "timestamp" not in doc

    def test_extended_preset_payloads(self):
        report = run(resolve("paper-extended-set"))
        diag, trace = (r["payload"] for r in report.results)
        assert diag.membership == Limit(0)
        assert str(trace.verdict) == "offset(5)"

    def test_rat_preset_payload(self):
        rep = run(resolve("paper-rat-census")).results[0]["payload"]
        assert rep.count_for("11111") == 720 and rep.total_orderings == 40_320

    def test_table_format(self, capsys):
        assert main(["run", "paper-interleaved-set"]) == 0
        out = capsys.readouterr().out
        assert "membership: ω+1" in out
        assert "ratio(2)" in out
        assert "decimal rendering" in out

    def test_presets_command(self, capsys):
        assert main(["presets"]) == 0
        assert "paper-rat-census" in capsys.readouterr().out


class TestOverrides:
    def test_overrides_apply_by_kind(self):
        report = run(resolve("paper-extended-set"), {"horizon": 64, "n_max": 20, "seed": 4})
        diag, trace = (r["payload"] for r in report.results)
        assert diag.horizon == 64 and len(trace.digits) == 20
        assert report.config[0]["horizon"] == 64

    def test_sampled_seed_override(self):
        a = machine("paper-rea-census", "--samples", "500", "--seed", "3").stdout
        b = machine("paper-rea-census", "--samples", "500", "--seed", "4").stdout
        assert a != b
        assert json.loads(a)["results"][0]["samples"] == 500

    def test_timestamp_opt_in(self):
        doc = json.loads(machine("paper-rat-census", "--timestamp").stdout)
        assert "timestamp" in doc


class TestErrors:
    def test_horizon_too_small_exit_2(self, capsys):
        assert main(["run", "paper-extended-set", "--horizon", "10"]) == 2
        assert "horizon 10 is too small" in capsys.readouterr().err

    def test_budget_refusal_exit_2(self, tmp_path):
        f = tmp_path / "big.toml"
        f.write_text('format = "diaglab/1"\n[strings.s]\nlength = 5\n[[experiment]]\nkind = "census"\nstrings = "s"\nmode = "exhaustive"\n')
        assert main(["run", str(f)]) == 2

    def test_insufficient_evidence_exit_2(self):
        assert main(["run", "paper-evens-pairing", "--n-max", "10"]) == 2

    def test_missing_target_exit_1(self, capsys):
        assert main(["run", "no-such-preset-or-file"]) == 1
        assert "neither a preset" in capsys.readouterr().err

    def test_syntax_error_names_line_and_token(self, tmp_path, capsys):
        f = tmp_path / "bad.toml"
        f.write_text('format = "diaglab/1"\n\n[lists.x]\ngenerator = geometric_ones\n')
        assert main(["run", str(f)]) == 1
        err = capsys.readouterr().err
        assert "line 4" in err and "token 'geometric_ones'" in err

    def test_definition_error_fields(self):
        with pytest.raises(DefinitionError) as exc:
            loads('format = "diaglab/1"\n\n[lists.x]\ngenerator = geometric_ones\n')
        assert exc.value.line == 4 and exc.value.token == "geometric_ones"

    @pytest.mark.parametrize(
        "patch, line, token",
        [
            (('format = "diaglab/1"', 'format = "diaglab/9"'), 2, "diaglab/9"),
            (('generator = "geometric_ones"', 'generator = "geometric_twos"'), 6, "geometric_twos"),
            (('kind = "diagonal"', 'kind = "diagonals"'), 10, "diagonals"),
            (('list = "ext"', 'list = "nope"'), 11, "nope"),
            (("horizon = 128", 'horizon = "big"'), 12, "big"),
            (("horizon = 128", "horizon = 128\nwidth = 3"), 13, "width"),
        ],
    )
    def test_resolution_errors_located(self, patch, line, token):
        with pytest.raises(DefinitionError) as exc:
            loads(MINIMAL.replace(*patch))
        assert exc.value.line == line
        assert exc.value.token == token

    def test_construction_error_located(self):
        text = MINIMAL.replace('"0.001[0]"', '"0.01[0]"')
        with pytest.raises(DefinitionError) as exc:
            loads(text)
        assert exc.value.line == 5 and exc.value.token == "0.01[0]"
        assert "positions 1 and 2" in str(exc.value)

    def test_no_experiments(self):
        with pytest.raises(DefinitionError):
            loads('format = "diaglab/1"\n')


class TestDefinitionParsing:
    def test_minimal_file(self, tmp_path):
        f = tmp_path / "ext.toml"
        f.write_text(MINIMAL)
        d = resolve(str(f))
        assert d.source == str(f)
        lst = d.lists["ext"]
        assert lst.order_type == "ω+1"
        rep = run(d).results[0]["payload"]
        assert rep.membership == Limit(0) and rep.horizon == 128

    def test_generators(self):
        assert parse_family("spaced_pair(step=2)").entry(2).__str__() == "0.00[01]"
        assert str(parse_family("spike(1)").entry(1)) == "0.01[0]"
        g = parse_family("interleave(spike(0), shifted(geometric_ones, 2))")
        assert str(g.entry(1)) == "0.1[0]" and str(g.entry(2)) == "0.111[0]"
        assert str(parse_family('table("0.1[0]", "0.[01]")').entry(2)) == "0.[01]"
        for bad in ("geometric_ones(3)", "spike(x)", "lambda: 0", "os.system('x')", "spike(1"):
            with pytest.raises(InputError):
                parse_family(bad)

    def test_rule_and_predicate(self):
        assert parse_rule({"0": 1, "1": 2, "2": 0})(2) == 0
        with pytest.raises(InputError):
            parse_rule({"0": 0, "1": 0})
        with pytest.raises(InputError):
            parse_rule("flip")
        assert parse_predicate("last_equal(3)")(parse_predicate.__globals__["cz"].parse_string("00111"))
        with pytest.raises(InputError):
            parse_predicate("first_equal(2)")

    def test_flatten_and_prefix_family(self):
        text = MINIMAL.replace('prefix = ["0.01[0]", "0.001[0]"]', 'prefix_family = "spike(1)"\nprefix_count = 3\nflatten = true')
        lst = loads(text).lists["ext"]
        assert lst.order_type == "ω"
        assert str(entry_at(lst, Finite(1))) == "0.[1]"

    def test_sets_and_pairings(self):
        text = """
format = "diaglab/1"
[sets.m5]
expr = "minus(naturals, interval(1, 5))"
[pairings.shift]
name = "n -> n + 5"
expr = "n + 5"
[[experiment]]
kind = "numerosity"
a = "naturals"
b = "m5"
pairing = "shift"
n_max = 100
"""
        rec = run(loads(text)).results[0]["record"]
        assert rec["verdict"]["kind"] == "bijection_equinumerous_only"
        assert rec["audit"]["map"] == "n -> n + 5"
