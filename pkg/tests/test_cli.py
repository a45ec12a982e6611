import json
from pathlib import Path

from instanton.cli import run

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


def run_cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def load_schema(name):
    with open(SCHEMA_DIR / name) as fh:
        return json.load(fh)


def validator_for(name):
    import jsonschema
    from jsonschema import Draft202012Validator
    schema = load_schema(name)
    # poly.schema.json is referenced by the generator set schema
    try:
        from referencing import Registry, Resource
        registry = Registry().with_resources([
            (sname, Resource.from_contents(load_schema(sname)))
            for sname in ("poly.schema.json", "generator_set.schema.json",
                          "hilbert_report.schema.json", "eigen_report.schema.json")
        ])
        return Draft202012Validator(schema, registry=registry)
    except ImportError:
        store = {sname: load_schema(sname)
                 for sname in ("poly.schema.json", "generator_set.schema.json",
                               "hilbert_report.schema.json", "eigen_report.schema.json")}
        resolver = jsonschema.RefResolver(base_uri="", referrer=schema, store=store)
        return Draft202012Validator(schema, resolver=resolver)


def test_xi_json_output(capsys, tmp_path):
    code, out = run_cli(capsys, "xi", "--k", "2", "--n", "1", "--json",
                        "--cache-dir", str(tmp_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["vars"] == ["alpha", "beta", "gamma", "delta1"]
    coeffs = {tuple(t["exps"]): t["coeff"] for t in doc["terms"]}
    assert coeffs == {(2, 0, 0, 0): "1/2", (0, 1, 0, 0): "-1/2"}
    validator_for("poly.schema.json").validate(doc)


def test_jgen_text_contains_r1(capsys, tmp_path):
    code, out = run_cli(capsys, "jgen", "--g", "1", "--cache-dir", str(tmp_path))
    assert code == 0
    assert "r_1 = omega + 1/2*delta1 - 1" in out
    assert out.count("=") == 4  # four generators


def test_jgen_json_schema_and_cache_identity(capsys, tmp_path):
    args = ("jgen", "--g", "1", "--json", "--cache-dir", str(tmp_path))
    code1, out1 = run_cli(capsys, *args)
    code2, out2 = run_cli(capsys, *args)  # second run hits the cache
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical
    doc = json.loads(out1)
    validator_for("generator_set.schema.json").validate(doc)
    cached = list(tmp_path.glob("jgen*.json"))
    assert len(cached) == 1


def test_no_cache_writes_nothing(capsys, tmp_path):
    code, _out = run_cli(capsys, "jgen", "--g", "1", "--json", "--no-cache",
                         "--cache-dir", str(tmp_path))
    assert code == 0
    assert list(tmp_path.glob("*.json")) == []


def test_hilbert_json_schema_and_exit(capsys, tmp_path):
    code, out = run_cli(capsys, "hilbert", "--g", "1", "--n", "1", "--source", "ptgn",
                        "--max-degree", "8", "--json", "--cache-dir", str(tmp_path))
    assert code == 0
    validator_for("hilbert_report.schema.json").validate(json.loads(out))


def test_eigen_json_schema(capsys, tmp_path):
    code, out = run_cli(capsys, "eigen", "--g", "1", "--json",
                        "--cache-dir", str(tmp_path))
    assert code == 0
    validator_for("eigen_report.schema.json").validate(json.loads(out))


def test_solve_command(capsys, tmp_path):
    code, out = run_cli(capsys, "solve", "--g", "0", "--json",
                        "--cache-dir", str(tmp_path))
    assert code == 0
    doc = json.loads(out)
    assert len(doc["gens"]) == 4
    validator_for("generator_set.schema.json").validate(doc)


def test_rho_methods_agree_up_to_branch(capsys, tmp_path):
    code1, out1 = run_cli(capsys, "rho", "--k", "2", "--r", "1", "--no-cache")
    code2, out2 = run_cli(capsys, "rho", "--k", "2", "--r", "1", "--method", "series",
                          "--no-cache")
    assert code1 == code2 == 0
    assert out1 == out2  # k even: branch invisible


def test_usage_errors_exit_two(capsys):
    code, _ = run_cli(capsys, "xi", "--k", "1", "--n", "2")
    assert code == 2
    code, _ = run_cli(capsys, "xi", "--k", "-1", "--n", "1")
    assert code == 2
    code, _ = run_cli(capsys, "rho", "--k", "1", "--r", "-1", "--no-cache")
    assert code == 2  # projection needs positive r
    code, _ = run_cli(capsys, "eigen", "--g", "0", "--no-cache")
    assert code == 2


def test_verify_suite_exit_zero(capsys, tmp_path):
    code, out = run_cli(capsys, "verify", "--suite", "eigen", "--g-max", "1",
                        "--cache-dir", str(tmp_path))
    assert code == 0
    assert "[A2] PASS" in out


def test_env_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("FLOER_CACHE_DIR", str(tmp_path / "envcache"))
    code, _out = run_cli(capsys, "jgen", "--g", "0", "--json")
    assert code == 0
    assert list((tmp_path / "envcache").glob("jgen*.json"))


def test_timestamps_flag_changes_output(capsys, tmp_path):
    args = ("jgen", "--g", "1", "--json", "--cache-dir", str(tmp_path))
    _c1, out1 = run_cli(capsys, *args)
    _c2, out2 = run_cli(capsys, *args, "--timestamps")
    assert out1 != out2
    assert "timestamp" in json.loads(out2)
