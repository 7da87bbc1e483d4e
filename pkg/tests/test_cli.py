import json

import pytest

from coxembed.cli import EXIT_DEGENERATE, EXIT_FAIL, EXIT_INVALID, EXIT_PASS, main, parse_params, InputError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "--r", "7", "--what", "curves")
    assert code == EXIT_PASS and len(out.strip().splitlines()) == 57
    _, out, _ = run(capsys, "enumerate", "--r", "6", "--what", "rulings")
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 27 and all(r.split("\t")[2] == "5" for r in rows)
    _, out, _ = run(capsys, "enumerate", "--r", "7", "--what", "rulings")
    assert len(out.strip().splitlines()) == 128
    _, out, _ = run(capsys, "enumerate", "--r", "6", "--what", "roots")
    assert len(out.strip().splitlines()) == 73


def test_verify_symbolic(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "verify", "--r", "6", "--mode", "symbolic", "--out", str(path))
    assert code == EXIT_PASS and out.startswith("PASS")
    doc = json.loads(path.read_text())
    assert doc["counts"]["zero_equations"] == 27
    assert set(doc["equations"].values()) == {"zero"}
    assert doc["inputs"]["mode"] == "symbolic"


def test_verify_seeded_is_reproducible(capsys, tmp_path):
    docs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        code, _, _ = run(capsys, "verify", "--r", "7", "--seed", "42", "--samples", "3", "--out", str(path))
        assert code == EXIT_PASS
        doc = json.loads(path.read_text())
        assert doc["counts"]["zero_equations"] == 134
        doc.pop("run")
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]


def test_verify_threads(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("COXEMBED_THREADS", "3")
    path = tmp_path / "t.json"
    code, _, _ = run(capsys, "verify", "--r", "6", "--seed", "5", "--samples", "4", "--out", str(path))
    monkeypatch.delenv("COXEMBED_THREADS")
    ref = tmp_path / "s.json"
    run(capsys, "verify", "--r", "6", "--seed", "5", "--samples", "4", "--out", str(ref))
    a, b = json.loads(path.read_text()), json.loads(ref.read_text())
    a.pop("run"), b.pop("run")
    assert code == EXIT_PASS and a == b


def test_verify_explicit_params(capsys):
    code, out, _ = run(capsys, "verify", "--r", "6", "--params", "a=2,b=3,c=5,d=-7/2", "--samples", "2", "--seed", "1")
    assert code == EXIT_PASS


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (("verify", "--r", "6", "--params", "a=1,b=1,c=2,d=3"), "collinear p1, p4, p5"),
        (("verify", "--r", "7", "--mode", "symbolic"), "--force-symbolic"),
        (("verify", "--r", "6"), "--params or --seed"),
        (("verify", "--r", "6", "--params", "a=1.5,b=1,c=2,d=3"), "bad value"),
        (("verify", "--r", "6", "--params", "a=2,b=3"), "must bind exactly"),
        (("verify", "--r", "5", "--seed", "1"), "--r must be 6 or 7"),
    ],
)
def test_invalid_input(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INVALID and fragment in err


def test_degeneracy_exit_code(capsys, monkeypatch):
    import coxembed.coxring as cx

    monkeypatch.setattr(cx, "MAX_RETRIES", 0)
    code, _, err = run(capsys, "verify", "--r", "6", "--seed", "1")
    assert code == EXIT_DEGENERATE and "degenerate" in err


def test_fail_exit_code(capsys, monkeypatch):
    import coxembed.cli as cli

    real = cli.certify_embedding

    def identity(assignment, config, samples, scope, free_values):
        from coxembed.rescaling import certify_factors

        return certify_factors({c: 1 for c in assignment.base}, config, samples, scope)

    monkeypatch.setattr(cli, "certify_embedding", identity)
    code, _, _ = run(capsys, "verify", "--r", "6", "--seed", "3", "--samples", "2")
    monkeypatch.setattr(cli, "certify_embedding", real)
    assert code == EXIT_FAIL


def test_exports(capsys):
    code, out, _ = run(capsys, "export", "h6-equations", "--r", "6")
    eqs = json.loads(out)
    assert code == EXIT_PASS and len(eqs) == 27 and all(len(e["monomials"]) == 5 for e in eqs)
    _, out, _ = run(capsys, "export", "h7-equations", "--r", "7")
    assert len(json.loads(out)) == 134
    _, out, _ = run(capsys, "export", "g-conditions", "--r", "6", "--mode", "symbolic")
    conds = json.loads(out)["conditions"]
    assert len(conds) == 20
    assert conds[0]["name"] == "g_E1+m12,1"
    assert conds[0]["expression"] == "-b*eta5pp*mu25pp - d*eta6pp*mu26pp - eta3pp*mu23pp - eta4pp*mu24pp"
    _, out, _ = run(capsys, "export", "solutions", "--r", "6", "--mode", "symbolic")
    sol = {s["symbol"]: s for s in json.loads(out)["solutions"]}
    assert len(sol) == 15 and sol["mu13pp"]["value"] == "mu34pp + mu35pp + mu36pp"


def test_parse_params():
    assert parse_params("a=1/2, b=-3") == (("a", __import__("fractions").Fraction(1, 2)), ("b", -3))
    with pytest.raises(InputError):
        parse_params("a=1,a=2")
    with pytest.raises(InputError):
        parse_params("a")
