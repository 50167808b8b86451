"""Driver tests: suite registry, certificates, canonical reports, exit codes."""

import json

import pytest

from modgem import cli


@pytest.fixture(scope="module")
def segre_certs():
    return cli.run_suite("segre", cli.SuiteConfig())


def test_registry_names():
    assert set(cli.SUITES) == set(cli.SUITE_NAMES)
    assert "all" not in cli.SUITES
    assert all(cli.SUITES[name] for name in cli.SUITE_NAMES)


def test_unknown_suite_raises():
    with pytest.raises(ValueError, match="unknown suite"):
        cli.run_suite("nosuch", cli.SuiteConfig())


def test_certs_sorted_and_passing(segre_certs):
    names = [c.check for c in segre_certs]
    assert names == sorted(names)
    assert all(c.status == "pass" for c in segre_certs)
    assert all(c.passed for c in segre_certs)


def test_cert_fields(segre_certs):
    cert = segre_certs[0]
    assert cert.check == "segre/model"
    assert cert.expected == cert.computed
    assert len(cert.inputs_digest) == 16
    assert cert.seed == cli._derived_seed(0, "segre/model")
    assert cert.claim and "segre" not in cert.claim  # claims are plain language


def test_derived_seeds_differ():
    seeds = {cli._derived_seed(0, c.check) for c in
             cli.run_suite("nieto", cli.SuiteConfig())}
    assert len(seeds) == 2


def test_report_dict_shape(segre_certs):
    report = cli.report_dict("segre", cli.SuiteConfig(seed=7), segre_certs)
    assert report["schema"] == cli.SCHEMA_VERSION
    assert report["suite"] == "segre"
    assert report["config"] == {"seed": 7, "samples": 20, "tol": 1e-9,
                                "primes": list(cli.SHADOW_PRIMES)}
    assert report["summary"] == {"pass": 3, "fail": 0, "unverified": 0}
    assert [c["check"] for c in report["certificates"]] == [c.check for c in segre_certs]


def test_unverified_certificate():
    cert = cli._check_base_locus(cli.SuiteConfig())
    assert cert.status == "unverified"
    assert cert.passed
    report = cli.report_dict("quintic", cli.SuiteConfig(), [cert])
    assert report["summary"] == {"pass": 0, "fail": 0, "unverified": 1}


def test_failed_check_is_captured():
    def broken(cfg):
        raise RuntimeError("boom")
    cert = cli._run_one(broken, cli.SuiteConfig())
    assert cert.status == "fail"
    assert "boom" in cert.computed


def test_json_report_byte_identity(tmp_path):
    paths = [tmp_path / f"r{i}.json" for i in range(3)]
    assert cli.main(["run", "segre", "--seed", "11", "--json", str(paths[0])]) == 0
    assert cli.main(["run", "segre", "--seed", "11", "--json", str(paths[1])]) == 0
    assert cli.main(["run", "segre", "--seed", "11", "--jobs", "3",
                     "--json", str(paths[2])]) == 0
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]
    assert blobs[0].endswith(b"\n")


def test_json_seed_changes_report(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli.main(["run", "segre", "--seed", "1", "--json", str(a)])
    cli.main(["run", "segre", "--seed", "2", "--json", str(b)])
    assert a.read_bytes() != b.read_bytes()


def test_table_output(tmp_path):
    path = tmp_path / "t.txt"
    assert cli.main(["run", "nodal", "--table", str(path)]) == 0
    text = path.read_text()
    assert "nodal sections" in text
    assert "generic: 120 30 24 25 5 40" in text
    assert "certificates" in text


def test_run_stdout_summary(capsys):
    assert cli.main(["run", "nieto"]) == 0
    out = capsys.readouterr().out
    assert "[      pass] nieto/hessian" in out
    assert "suite nieto: 2 pass, 0 fail, 0 unverified" in out


def test_exit_one_on_failure(capsys):
    assert cli.main(["run", "theta", "--tol", "1e-30"]) == 1
    assert "1 fail" in capsys.readouterr().out


def test_loose_tolerance_recorded(tmp_path):
    path = tmp_path / "r.json"
    assert cli.main(["run", "theta", "--tol", "1e-6", "--json", str(path)]) == 0
    report = json.loads(path.read_text())
    assert report["config"]["tol"] == 1e-6


def test_exit_two_on_unknown_suite(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["run", "nosuch"])
    assert err.value.code == 2
    capsys.readouterr()


def test_exit_two_on_unwritable_path(capsys):
    assert cli.main(["run", "theta", "--json", "/nonexistent/dir/x.json"]) == 2
    assert "cannot write" in capsys.readouterr().err


def test_theta_verify_subcommand(tmp_path, capsys):
    path = tmp_path / "residuals.csv"
    assert cli.main(["theta", "verify", "--samples", "12", "--csv", str(path)]) == 0
    assert "theta4_rank 5" in capsys.readouterr().out
    rows = path.read_text().splitlines()
    assert rows[0] == "sample,maschke,quartic,odd_max"
    assert len(rows) == 13


def test_nodalcy_report_subcommand(tmp_path, capsys):
    path = tmp_path / "nodal.json"
    assert cli.main(["nodalcy", "report", "--kind", "generic",
                     "--json", str(path)]) == 0
    out = capsys.readouterr().out
    assert "nodes 120" in out
    payload = json.loads(path.read_text())
    assert payload["defect"] == 24
    assert payload["euler"] == 40
    assert "b1" not in payload
