"""The command-line surface: output formats, exit codes, store handling."""

import json

from jsonschema import validate

from slicegate.cli import main

INTERVAL_SCHEMA = {
    "type": ["array", "null"],
    "prefixItems": [{"type": "integer"}, {"type": ["integer", "null"]}],
    "minItems": 2,
    "maxItems": 2,
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["name", "bounds", "verdict", "applied_rules", "notes"],
    "properties": {
        "name": {"type": "string"},
        "bounds": {
            "type": "object",
            "required": ["g4", "gamma4", "g3", "gamma3"],
            "properties": {q: INTERVAL_SCHEMA for q in ("g4", "gamma4", "g3", "gamma3")},
        },
        "verdict": {
            "type": "object",
            "required": ["topologically_slice", "smoothly_slice", "nonorientably_slice"],
            "additionalProperties": {"enum": ["yes", "no", "unknown"]},
        },
        "applied_rules": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["rule", "anchor", "contribution"],
                "additionalProperties": {"type": "string"},
            },
        },
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_obstruct_json_figure_eight(capsys):
    code, out, _ = run(capsys, "obstruct", "4_1", "--json")
    assert code == 0
    doc = json.loads(out)
    validate(doc, REPORT_SCHEMA)
    assert doc["verdict"]["topologically_slice"] == "no"
    assert any(r["rule"] == "fox-milnor" for r in doc["applied_rules"])


def test_obstruct_fail_on_obstruction_exit_code(capsys):
    code, _, _ = run(capsys, "obstruct", "4_1", "--fail-on-obstruction")
    assert code == 1
    code, _, _ = run(capsys, "obstruct", "unknot", "--fail-on-obstruction")
    assert code == 0


def test_obstruct_unknown_knot_is_input_error(capsys):
    code, _, err = run(capsys, "obstruct", "19_55")
    assert code == 2
    assert "19_55" in err


def test_obstruct_batch_parallel_matches_sequential(capsys):
    code, seq, _ = run(capsys, "obstruct", "--all", "--json")
    assert code == 0
    code, par, _ = run(capsys, "obstruct", "--all", "--parallel", "--json")
    assert code == 0
    assert seq == par
    names = [r["name"] for r in json.loads(seq)["reports"]]
    assert names == sorted(names)


def test_whitehead_odd_twist_report(capsys):
    code, out, _ = run(capsys, "whitehead", "--clasp", "+", "--twist", "3",
                       "--companion", "unknot", "--json")
    assert code == 0
    doc = json.loads(out)
    validate(doc["report"], REPORT_SCHEMA)
    assert doc["report"]["bounds"]["gamma4"] == [2, 2]
    assert doc["cable_target_q"] == 7
    assert any("Yasuhara" in r["anchor"] for r in doc["report"]["applied_rules"])


def test_whitehead_untwisted_double_of_figure_eight(capsys):
    code, out, _ = run(capsys, "whitehead", "--clasp", "+", "--twist", "0",
                       "--companion", "4_1")
    assert code == 0
    assert "topologically slice: yes" in out
    assert "smoothly slice: unknown" in out
    assert "gamma4: [1, 2]" in out
    assert "(2, 1)-cable" in out


def test_whitehead_half_twist_warning_not_fatal(capsys):
    code, out, _ = run(capsys, "whitehead", "--clasp", "+", "--twist", "-1",
                       "--companion", "unknot")
    assert code == 0
    assert "half-twist regime" in out
    assert "withheld" in out


def test_invariants_text_and_json(capsys):
    code, out, _ = run(capsys, "invariants", "4_1", "--omega", "1/4")
    assert code == 0
    assert "sigma: 0" in out and "arf: 1" in out and "determinant: 5" in out
    assert "fox-milnor: fails" in out
    code, out, _ = run(capsys, "invariants", "4_1", "--json", "--omega", "1/2")
    doc = json.loads(out)
    assert doc["alexander"] == [[-1, -1], [3, 0], [-1, 1]]
    assert doc["levine_tristram"] == [{"omega": "1/2", "signature": 0}]


def test_invariants_from_matrix_file(tmp_path, capsys):
    path = tmp_path / "trefoil.json"
    path.write_text(json.dumps({"n": 2, "entries": [[-1, 1], [0, -1]]}))
    code, out, _ = run(capsys, "invariants", "--matrix-file", str(path))
    assert code == 0
    assert "sigma: -2" in out


def test_invariants_polynomial_only_record(capsys):
    # 6_1 is seeded with its Alexander polynomial but no matrix
    code, out, _ = run(capsys, "invariants", "6_1")
    assert code == 0
    assert "determinant: 9" in out and "fox-milnor: passes" in out
    code, _, err = run(capsys, "invariants", "6_1", "--omega", "1/2")
    assert code == 2 and "Levine-Tristram" in err


def test_obstruct_from_matrix_file(tmp_path, capsys):
    path = tmp_path / "pattern5.json"
    path.write_text(json.dumps({"n": 2, "entries": [[-1, 1], [0, 5]]}))
    code, out, _ = run(capsys, "obstruct", "--matrix-file", str(path), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "pattern5"
    assert doc["bounds"]["gamma4"] == [2, 3]  # Yasuhara fires, crosscap upper


def test_invariants_malformed_matrix_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 2, "entries": [[1, 0], [0, 1]]}))
    code, _, err = run(capsys, "invariants", "--matrix-file", str(path))
    assert code == 2
    assert "unimodular" in err or "V - V^T" in err


def test_euler_range_cli(capsys):
    code, out, _ = run(capsys, "euler-range", "--upsilon", "0", "--q", "1", "--json")
    assert code == 0
    assert json.loads(out)["euler_range"] == [-8, 4]


def test_cobordism_cli(capsys):
    # values starting with "-" use the --option=value form
    code, out, _ = run(capsys, "cobordism", "--from-upsilon", "0",
                       "--to-upsilon=-1/2", "--euler", "-2", "--betti", "1")
    assert code == 0
    assert "consistent" in out
    code, _, _ = run(capsys, "cobordism", "--from-upsilon", "1", "--to-upsilon", "0",
                     "--euler", "0", "--fail-on-obstruction")
    assert code == 1


def test_cable_bounds_cli(capsys):
    code, out, _ = run(capsys, "cable-bounds", "--p", "2", "--q", "1", "--zero", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["lower"]["breakpoints"] == [[0, 0], [1, -1]]
    assert doc["upper"]["breakpoints"] == [[0, 0], [1, 0]]
    assert doc["upsilon_cable_interval"] == ["-3/2", "1/2"]
    code, out, _ = run(capsys, "cable-bounds", "--p", "2", "--q", "3",
                       "--upsilon-of", "3_1")
    assert code == 0


def test_import_and_show_roundtrip(tmp_path, capsys):
    csv_path = tmp_path / "t.csv"
    csv_path.write_text('knot,matrix\nnew_knot,"[[-1,1],[0,2]]"\n', encoding="utf-8")
    store_path = tmp_path / "store.json"
    code, out, _ = run(capsys, "import", "--csv", str(csv_path),
                       "--map", "name=knot", "--map", "seifert=matrix",
                       "--save", str(store_path))
    assert code == 0
    assert "imported 1 record(s): new_knot" in out
    code, out, _ = run(capsys, "show", "new_knot", "--store", str(store_path))
    assert code == 0
    assert "new_knot" in out and "[[-1, 1], [0, 2]]" in out


def test_store_env_variable(tmp_path, capsys, monkeypatch):
    csv_path = tmp_path / "t.csv"
    csv_path.write_text('knot,matrix\nenv_knot,"[[-1,1],[0,1]]"\n', encoding="utf-8")
    store_path = tmp_path / "env_store.json"
    monkeypatch.setenv("SLICEGATE_STORE", str(store_path))
    code, _, _ = run(capsys, "import", "--csv", str(csv_path),
                     "--map", "name=knot", "--map", "seifert=matrix")
    assert code == 0 and store_path.exists()
    code, out, _ = run(capsys, "show", "env_knot")
    assert code == 0 and "env_knot" in out


def test_exact_rational_output(capsys):
    # rationals print as p/q, never floating point
    code, out, _ = run(capsys, "cobordism", "--from-upsilon", "0",
                       "--to-upsilon=-1/2", "--euler", "-2")
    assert code == 0
    assert "1/2" in out and "." not in out.replace("...", "")
