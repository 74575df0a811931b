import json
import subprocess
import sys

import pytest

from nrmat.cli import main
from nrmat.matroid import catalog
from nrmat.matroid.core import matroid_from_ring_matrix
from nrmat.matroid.io import format_mtd, read_mtd
from nrmat.pmat import read_pmx


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    for name in ("U24", "P8", "AG23-e", "PG23"):
        assert name in out


def test_catalog_show_json(capsys):
    code, d = run_json(capsys, "catalog", "show", "P7")
    assert code == 0
    assert (d["name"], d["elements"], d["rank"], d["bases"]) == ("P7", 7, 3, 30)


def test_rep_yes_and_no(capsys):
    code, d = run_json(capsys, "rep", "W3", "--field", "gf3")
    assert code == 0 and d["representable"] is True
    code, d = run_json(capsys, "rep", "U25", "--field", "gf3")
    assert code == 1 and d["representable"] is False


def test_rep_nearreg(capsys):
    code, out, _ = run(capsys, "rep", "P7", "--field", "nearreg")
    assert code == 0
    code, out, _ = run(capsys, "rep", "F7-", "--field", "nearreg")
    assert code == 1


def test_usage_errors(capsys):
    assert run(capsys, "rep", "nosuch", "--field", "gf3")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["rep", "W3", "--field", "gf6"])
    assert e.value.code == 2
    capsys.readouterr()


def test_nearreg(capsys):
    code, d = run_json(capsys, "nearreg", "P7")
    assert code == 0 and d["near_regular"] is True
    assert set(d["witnesses"]) == {"gf3", "gf4", "gf5"}
    code, d = run_json(capsys, "nearreg", "F7")
    assert code == 1 and d["near_regular"] is False


def test_exminor(capsys):
    code, d = run_json(capsys, "exminor", "F7-")
    assert code == 0 and d["excluded_minor"] is True
    assert d["fields"] == {"gf3": True, "gf4": False, "gf5": True}
    code, d = run_json(capsys, "exminor", "P7")
    assert code == 1 and d["excluded_minor"] is False


def test_deltay(capsys):
    code, out, _ = run(capsys, "deltay", "AG23-e")
    assert code == 0 and "DT-AG23-e" in out
    code, out, _ = run(capsys, "deltay", "F7", "--triangle", "1,2,3")
    assert code == 2


def test_companion_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "--out", str(tmp_path), "companion", "AG23-e")
    assert code == 0
    pmx = sorted(tmp_path.glob("*.pmx"))
    mtd = sorted(tmp_path.glob("*.mtd"))
    assert pmx and mtd
    name, A = read_pmx(pmx[0])
    assert A.kind == "nearreg"
    for p in mtd:
        M = read_mtd(p, validate=True)
        assert M.n == 8


def test_rep_out_files(capsys, tmp_path):
    code, _, _ = run(capsys, "--out", str(tmp_path), "rep", "P7", "--field", "gf5")
    assert code == 0
    name, A = read_pmx(next(tmp_path.glob("*.pmx")))
    assert matroid_from_ring_matrix(A) == catalog.get("P7")


def test_load_mtd_file(capsys, tmp_path):
    p = tmp_path / "w.mtd"
    p.write_text(format_mtd(catalog.get("W3")))
    code, d = run_json(capsys, "--validate", "rep", str(p), "--field", "gf3")
    assert code == 0 and d["representable"] is True
    bad = tmp_path / "bad.mtd"
    bad.write_text("name M\nground a b c d\nrank 2\nbases\na b\nc d\nend\n")
    assert run(capsys, "--validate", "exminor", str(bad))[0] == 2


def test_search_small_space(capsys):
    code, d = run_json(capsys, "search", "--space", "rank3-pg23")
    assert code == 0
    assert sorted(f["name"] for f in d["found"]) == ["AG23-e", "F7-"]


def test_verify_cases(capsys):
    code, out, _ = run(capsys, "verify", "cases", "--no-timings")
    assert code == 0
    assert "FAIL" not in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "nrmat", "catalog", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and "F7-" in r.stdout


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "rep", "W3", "--field", "gf3", "--json")
    assert code == 0 and json.loads(out)["representable"] is True
