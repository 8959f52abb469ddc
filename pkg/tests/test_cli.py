import io
import json

import pytest

from superspline import report as rpt
from superspline.bernstein import family_profile, partition
from superspline.cli import RunConfig, main, run


def invoke(**kwargs):
    out, err = io.StringIO(), io.StringIO()
    code = run(RunConfig(**kwargs), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_count_text_ends_with_total():
    code, out, _ = invoke(command="count", dim=5, smoothness=1, format="text")
    assert code == 0
    assert out.rstrip().splitlines()[-1] == "total 501942"
    assert "dim 3 total 91890" in out


def test_count_json_schema():
    code, out, _ = invoke(command="count", dim=5, smoothness=1, format="json")
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"dimension", "degree", "profile", "faces", "grand_total"}
    assert data["grand_total"] == "501942"
    assert data["profile"] == [16, 8, 4, 2, 1]
    tri = data["faces"][2]
    assert tri["num_faces"] == 20
    assert tri["per_face_counts_by_order"] == {"0": "28", "1": "135", "2": "378",
                                               "3": "820", "4": "1530"}
    assert tri["per_face_total"] == "2891"
    assert tri["dimension_total"] == "57820"


def test_count_csv_rows():
    code, out, _ = invoke(command="count", dim=5, smoothness=1, format="csv")
    lines = out.splitlines()
    assert lines[0] == "face_dim,order,per_face,num_faces,total"
    assert "3,2,3804,15,57060" in lines
    assert "5,0,62888,1,62888" in lines


def test_json_round_trip():
    table = rpt.table_from_partition(partition(family_profile(4, 1)))
    text = rpt.to_json(table)
    assert rpt.from_json(text) == table
    assert rpt.to_json(rpt.from_json(text)) == text


def test_csv_round_trip():
    profile = family_profile(3, 1)
    table = rpt.table_from_partition(partition(profile))
    back = rpt.from_csv(rpt.to_csv(table), profile.n, profile.degree, profile.orders)
    assert back == table


def test_partition_with_profile_override_round_trips():
    code, out, _ = invoke(command="partition", dim=3, profile=(5, 3, 1), degree=12, format="json")
    assert code == 0
    table = rpt.from_json(out)
    assert table.grand_total == 455
    assert table.faces[1].per_face_counts_by_order is None  # ties make edges differ


def test_verify_exit_codes():
    assert invoke(command="verify", dim=2, smoothness=1)[0] == 0
    code, out, _ = invoke(command="verify", dim=5, smoothness=1, format="json")
    assert code == 0 and json.loads(out)["passed"] is True


def test_unisolvence_command():
    code, out, _ = invoke(command="unisolvence", dim=2, smoothness=1)
    assert code == 0 and out.startswith("PASS rank 21 of 21")
    code, _, err = invoke(command="unisolvence", dim=5, smoothness=1)
    assert code == 2 and "desk scale" in err


def test_unisolvence_cap_env(monkeypatch):
    monkeypatch.setenv("SSFEM_CAP", "10")
    code, _, err = invoke(command="unisolvence", dim=2, smoothness=1)
    assert code == 2 and "cap 10" in err


def test_continuity_command():
    code, out, _ = invoke(command="continuity", dim=2, smoothness=1, seed=3, samples=10)
    assert code == 0 and out == "max jump = 0\n"


def test_export_functionals():
    code, out, _ = invoke(command="export", dim=1, smoothness=1, format="json")
    data = json.loads(out)
    assert code == 0 and len(data["functionals"]) == 4
    assert data["functionals"][1] == {
        "owner": [0], "order": 1, "direction_multiorder": [1],
        "point": ["1", "0"], "source_index": [2, 1]}
    code, out, _ = invoke(command="export", dim=2, smoothness=1, format="csv")
    assert len(out.splitlines()) == 22
    code, out, _ = invoke(command="export", dim=2, smoothness=1, format="text")
    assert out.rstrip().endswith("total 21")


def test_invalid_arguments_exit_2():
    assert invoke(command="export", dim=4, smoothness=1)[0] == 2
    assert invoke(command="partition", dim=3, profile=(2, 1))[0] == 2
    assert invoke(command="partition", dim=2, profile=(2, 1), degree=3)[0] == 2
    assert invoke(command="count", dim=3, profile=(5, 3, 1), degree=12)[0] == 2
    assert invoke(command="count", dim=7, smoothness=1)[0] == 2
    assert invoke(command="nonsense")[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["count", "--bogus"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_output_file(tmp_path):
    target = tmp_path / "table.csv"
    code, out, _ = invoke(command="count", dim=3, smoothness=1, format="csv", output=str(target))
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8").startswith("face_dim,order")


def test_deterministic_output():
    first = invoke(command="partition", dim=4, smoothness=1, format="json")
    second = invoke(command="partition", dim=4, smoothness=1, format="json")
    assert first == second
    a = invoke(command="continuity", dim=2, smoothness=1, seed=8, samples=5)
    assert a == invoke(command="continuity", dim=2, smoothness=1, seed=8, samples=5)


def test_main_entry(capsys):
    assert main(["count", "--dim", "2", "--smoothness", "1"]) == 0
    assert capsys.readouterr().out.rstrip().endswith("total 21")
