import csv
import io

import pytest

from metric_sensing.cli import main
from metric_sensing.scenario import ScenarioError, parse_scenario


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def write(tmp_path, text, name="input.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def metric_lines(out):
    return {k: float(v) for k, v in (line.split() for line in out.strip().splitlines())}


def test_metric_identical_sets(tmp_path, capsys):
    path = write(tmp_path, "x 1 2\nx 3 4\ny 3 4\ny 1 2\n")
    code, out, _ = run(["metric", path], capsys)
    assert code == 0
    assert all(v == 0.0 for v in metric_lines(out).values())


def test_metric_empty_versus_single(tmp_path, capsys):
    path = write(tmp_path, "param c 10\nparam p 2\ny 5\n")
    code, out, _ = run(["metric", path], capsys)
    values = metric_lines(out)
    assert code == 0
    assert values["ospa"] == 10.0 and values["uospa"] == 10.0
    assert values["gospa"] ** 2 == pytest.approx(50.0, rel=1e-11)
    assert values["gospa_false"] == 50.0


def test_metric_one_extra_target(tmp_path, capsys):
    path = write(tmp_path, "x 0\ny 0\ny 100\n")
    code, out, _ = run(["metric", path, "--c", "10", "--p", "2"], capsys)
    values = metric_lines(out)
    assert values["ospa"] == pytest.approx(7.0711, abs=1e-4)
    assert values["uospa"] == 10.0
    assert values["gospa"] ** 2 == pytest.approx(50.0, rel=1e-11)


def test_metric_parse_failure_exit_code(tmp_path, capsys):
    path = write(tmp_path, "x 0\nbogus 1\n")
    code, _, err = run(["metric", path], capsys)
    assert code == 2 and "unknown keyword" in err


def test_metric_dimension_mismatch_exit_code(tmp_path, capsys):
    path = write(tmp_path, "x 0 0\ny 1\n")
    code, _, _ = run(["metric", path], capsys)
    assert code == 3
    path = write(tmp_path, "x 0 0\nx 1\n", "ragged.txt")
    assert run(["metric", path], capsys)[0] == 3


def test_missing_file_is_an_input_error(tmp_path, capsys):
    assert run(["metric", str(tmp_path / "absent.txt")], capsys)[0] == 2


def test_cost_curve_rows(capsys):
    code, out, _ = run(["cost-curve", "--pd", "0.7", "--s", "0"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "r,s,cost_a0,cost_a1"
    rows = {row["r"]: row for row in read_csv(out)}
    assert float(rows["0.5"]["cost_a0"]) == 25.0
    assert float(rows["0.5"]["cost_a1"]) == 7.5
    assert float(rows["0.9"]["cost_a0"]) == float(rows["0.9"]["cost_a1"]) == 5.0


def test_cost_curve_full_detection(capsys):
    _, out, _ = run(["cost-curve", "--pd", "1", "--s", "10"], capsys)
    assert {float(row["cost_a1"]) for row in read_csv(out)} == {10.0}


def test_cost_curve_rejects_bad_grid(capsys):
    assert run(["cost-curve", "--grid-step", "0"], capsys)[0] == 2


def test_region1(capsys):
    _, out, _ = run(["region1", "--pd", "0.7"], capsys)
    rows = read_csv(out)
    assert out.splitlines()[0] == "r,s,optimal_a"
    assert not any(row["optimal_a"] == "1" and float(row["s"]) > 17.5 for row in rows)
    onset = 1 / (2 - 0.7)
    for row in rows:
        if float(row["s"]) == 0.0:
            r = float(row["r"])
            assert row["optimal_a"] == str(int(0 < r < onset))


def test_region1_area_shrinks_with_detection_probability(capsys):
    areas = {}
    for pd in ("0.6", "0.7"):
        _, out, _ = run(["region1", "--pd", pd], capsys)
        areas[pd] = sum(row["optimal_a"] == "1" for row in read_csv(out))
    assert areas["0.6"] < areas["0.7"]


def test_region2(capsys):
    _, out, _ = run(["region2", "--grid-step", "0.05"], capsys)
    rows = read_csv(out)
    assert out.splitlines()[0] == "r1,r2,metric,a1,a2"
    gospa = [row for row in rows if row["metric"] == "gospa"]
    a1_by_r1, a2_by_r2 = {}, {}
    for row in gospa:
        a1_by_r1.setdefault(row["r1"], set()).add(row["a1"])
        a2_by_r2.setdefault(row["r2"], set()).add(row["a2"])
    assert all(len(v) == 1 for v in a1_by_r1.values())
    assert all(len(v) == 1 for v in a2_by_r2.values())
    origin = [row for row in rows if float(row["r1"]) == 0 and float(row["r2"]) == 0]
    assert len(origin) == 3 and all((row["a1"], row["a2"]) == ("0", "0") for row in origin)


def test_slice(capsys):
    _, out, _ = run(["slice"], capsys)
    rows = read_csv(out)
    assert out.splitlines()[0] == "r1,metric,a1,a2"
    ospa = [(row["a1"], row["a2"]) for row in rows if row["metric"] == "ospa"]
    assert ospa[0] == ("0", "1")
    # measure 2, stop, measure both, stop 2, stop both
    runs = [ospa[0]] + [b for a, b in zip(ospa, ospa[1:]) if a != b]
    assert runs == [("0", "1"), ("0", "0"), ("1", "1"), ("1", "0"), ("0", "0")]
    gospa = [row for row in rows if row["metric"] == "gospa"]
    assert len({row["a2"] for row in gospa}) == 1
    assert gospa[-1]["a1"] == "0"


def test_csv_format(capsys):
    _, out, _ = run(["cost-curve", "--s", "10", "--grid-step", "0.07"], capsys)
    assert "\r" not in out
    values = [cell for line in out.splitlines()[1:] for cell in line.split(",")]
    assert all(len(v.replace("-", "").replace(".", "").lstrip("0")) <= 12 for v in values if "e" not in v)
    assert "0.07" in out.splitlines()[2]


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "slice.csv"
    assert run(["slice", "--metric", "gospa", "--out", str(target)], capsys)[0] == 0
    assert target.read_text().startswith("r1,metric,a1,a2\n")


def test_verify_with_scenario(tmp_path, capsys):
    path = write(tmp_path, "param c 10\nparam pd 0.6\nparam s 10\ncomponent 0.6\ncomponent 0.3\n")
    code, out, _ = run(["verify", path, "--trials", "20000", "--seed", "3"], capsys)
    assert code == 0, out
    assert "PASS scenario-monte-carlo" in out


def test_verify_zero_tolerance_names_failing_check(capsys):
    code, out, _ = run(["verify", "--trials", "2000", "--tol-scale", "0"], capsys)
    assert code == 1
    assert "FAIL monte-carlo" in out


def test_verify_verdicts_do_not_depend_on_seed(capsys):
    verdicts = []
    for seed in ("1", "2"):
        code, out, _ = run(["verify", "--trials", "20000", "--seed", seed], capsys)
        verdicts.append((code, [line.split(":")[0] for line in out.splitlines()]))
    assert verdicts[0] == verdicts[1]


def test_scenario_parser():
    sc = parse_scenario("# demo\nparam c 5\ncomponent 0.2 0 0\ncomponent 0.9 20 0  # far\n")
    b = sc.belief()
    assert sc.get("c") == 5.0 and sc.get("pd") == 0.6
    assert list(b.existences) == [0.2, 0.9]
    with pytest.raises(ScenarioError):
        parse_scenario("param q 1\n")
    with pytest.raises(ScenarioError):
        parse_scenario("component 1.5\n")
    with pytest.raises(ScenarioError):
        parse_scenario("component 0.5 0\ncomponent 0.5\n").belief()
    with pytest.raises(ValueError):
        parse_scenario("param c 10\ncomponent 0.5 0\ncomponent 0.5 3\n").belief()
