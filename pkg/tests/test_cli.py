import io
import json
import subprocess
import sys

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from openbook_rho.cli import (
    EXIT_MALFORMED,
    JobConfig,
    main,
    model_to_json,
    parse_space_model,
    run,
)
from openbook_rho.errors import InputError
from openbook_rho.spaces import Contractible, EllipticRanks, Sphere, WedgeOfSpheres, wedge

FLAGS = {"page_simply_connected": True, "boundary_nilpotent_connected": True,
         "total_simply_connected": True}
DISK = {"page": {"kind": "contractible"}, "fibre": {"kind": "sphere", "dim": 3},
        "monodromy": {"kind": "identity_on_rational_homotopy"}, "flags": FLAGS,
        "ambient_dim": 5}


def invoke(args, doc):
    out, err = io.StringIO(), io.StringIO()
    payload = doc if isinstance(doc, str) else json.dumps(doc)
    status = main(args, stdin=io.StringIO(payload), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def test_parse_space_examples():
    assert parse_space_model({"kind": "sphere", "dim": 3}) == Sphere(3)
    assert parse_space_model({"kind": "wedge", "dims": [3, 3]}) == WedgeOfSpheres((3, 3))
    assert parse_space_model({"kind": "wedge", "dims": [4]}) == Sphere(4)
    assert parse_space_model({"kind": "contractible"}) == Contractible()
    assert parse_space_model({"kind": "elliptic_ranks", "ranks": {"4": 1, "7": 1}}) == \
        EllipticRanks({4: 1, 7: 1})


@pytest.mark.parametrize("doc,field", [
    ({"kind": "sphere", "dim": 0}, "space.dim"),
    ({"kind": "sphere"}, "space.dim"),
    ({"kind": "sphere", "dim": True}, "space.dim"),
    ({"kind": "wedge", "dims": [3, -1]}, "space.dims[1]"),
    ({"kind": "wedge", "dims": []}, "space.dims"),
    ({"kind": "elliptic_ranks", "ranks": {"3": -2}}, "space.ranks.3"),
    ({"kind": "elliptic_ranks", "ranks": {"x": 1}}, "space.ranks.x"),
    ({"kind": "torus"}, "space.kind"),
    ([1, 2], "space"),
])
def test_parse_errors_name_the_field(doc, field):
    with pytest.raises(InputError) as exc:
        parse_space_model(doc)
    assert exc.value.field == field


def test_classify_disk_json():
    status, out, err = invoke(["classify", "--format", "json"], DISK)
    assert status == 0 and err == ""
    body = json.loads(out)
    assert body["elliptic"] == {"l": 3, "ranks": {"5": 1}}
    assert body["spec"]["page"] == {"kind": "contractible"}
    assert body["spec"]["monodromy"]["kind"] == "identity_on_rational_homotopy"


def test_classify_table_echoes_spec():
    status, out, _ = invoke(["classify"], DISK)
    assert status == 0
    assert "elliptic" in out and "ambient_dim: 5" in out and "page_simply_connected: true" in out


def test_classify_violations_exit_1():
    doc = dict(DISK, fibre={"kind": "contractible"})
    status, out, _ = invoke(["classify"], doc)
    assert status == 1
    assert out.startswith("fibre_contractible:") and len(out.strip().splitlines()) == 1
    status, out, _ = invoke(["classify", "--format", "json"], doc)
    body = json.loads(out)
    assert status == 1 and [v["code"] for v in body["violations"]] == ["fibre_contractible"]


def test_monodromy_defaults_to_unverified():
    doc = {k: v for k, v in DISK.items() if k != "monodromy"}
    status, out, _ = invoke(["classify", "--format", "json"], doc)
    body = json.loads(out)
    assert status == 1
    assert body["spec"]["monodromy"] == {"kind": "unverified"}
    assert [v["code"] for v in body["violations"]] == ["monodromy_unverified"]


def test_classify_hyperbolic():
    doc = dict(DISK, page={"kind": "wedge", "dims": [3, 3]}, fibre={"kind": "sphere", "dim": 2},
               monodromy={"kind": "finite_order", "m": 8, "nilpotent_action": True})
    status, out, _ = invoke(["classify", "--format", "json", "--truncation", "12"], doc)
    assert status == 0
    assert json.loads(out)["hyperbolic"] == {"reason": "page_hyperbolic"}


def test_brieskorn_report():
    status, out, _ = invoke(["brieskorn"], {"exponents": [3, 2, 2, 2], "n": 3})
    assert status == 0
    assert "mu = 2" in out and "infinite order" in out and "non-nilpotently" in out
    status, out, _ = invoke(["brieskorn", "--format", "json"], {"exponents": [3, 2, 2, 2], "n": 3})
    body = json.loads(out)
    assert body["mu"] == 2 and body["obstruction"] and len(body["conclusions"]) == 2


def test_brieskorn_with_monodromy_and_fibre():
    doc = {"exponents": [3, 3, 3, 3], "n": 3,
           "monodromy": {"kind": "finite_order", "m": 3, "nilpotent_action": True},
           "fibre": {"kind": "sphere", "dim": 2}}
    status, out, _ = invoke(["brieskorn", "--format", "json"], doc)
    body = json.loads(out)
    assert status == 0 and body["mu"] == 16
    assert body["verdict"] == {"hyperbolic": {"reason": "page_hyperbolic"}}
    assert body["growth_base"] == pytest.approx(4.0, abs=1e-9)


def test_variation_json():
    status, out, _ = invoke(["variation", "--format", "json"], {"matrix": [[0]]})
    assert status == 0 and json.loads(out) == {"is_isomorphism": False}
    status, out, _ = invoke(["variation"], {"matrix": [[2, 1], [1, 1]]})
    assert "determinant: 1" in out and "is_isomorphism: true" in out


def test_lie_ranks_csv():
    status, out, _ = invoke(["lie-ranks", "--format", "csv", "--truncation", "12"],
                            {"generators": {"2": 2}})
    assert status == 0
    assert out == "degree,rank\n2,2\n4,1\n6,2\n8,3\n10,6\n12,9\n"


def test_growth_json():
    status, out, _ = invoke(["growth", "--format", "json", "--truncation", "20"],
                            {"kind": "wedge", "dims": [2, 3]})
    body = json.loads(out)
    assert status == 0 and body["classification"] == "exponential"
    assert body["growth_base"] == pytest.approx((1 + 5 ** 0.5) / 2, abs=1e-9)
    assert len(body["partial_sums"]) == 21


@pytest.mark.parametrize("doc", [{"kind": "sphere", "dim": 4}, {"kind": "wedge", "dims": [2, 3, 3]},
                                 {"kind": "elliptic_ranks", "ranks": {"3": 1, "8": 2}}])
def test_csv_and_json_agree(doc):
    _, csv_out, _ = invoke(["ranks", "--format", "csv", "--truncation", "15"], doc)
    _, json_out, _ = invoke(["ranks", "--format", "json", "--truncation", "15"], doc)
    lines = csv_out.split("\n")
    assert lines[0] == "degree,rank" and lines[-1] == ""
    from_csv = {int(d): int(r) for d, r in (line.split(",") for line in lines[1:-1])}
    from_json = {int(d): r for d, r in json.loads(json_out)["ranks"].items()}
    assert from_csv == from_json
    assert list(from_csv) == sorted(from_csv)


def test_csv_refused_for_reports():
    status, out, err = invoke(["variation", "--format", "csv"], {"matrix": [[1]]})
    assert status == EXIT_MALFORMED and out == "" and err


def test_unknown_command_rejected():
    status, out, _ = invoke(["frobnicate"], {})
    assert status == 2 and out == ""
    with pytest.raises(ValueError):
        JobConfig("frobnicate")


def test_input_file(tmp_path):
    path = tmp_path / "space.json"
    path.write_text(json.dumps({"kind": "sphere", "dim": 2}), encoding="utf-8")
    status, out, _ = invoke(["ranks", "--input", str(path), "--format", "csv"], "")
    assert status == 0 and out == "degree,rank\n2,1\n3,1\n"
    status, out, _ = invoke(["ranks", "--input", str(tmp_path / "missing.json")], "")
    assert status == EXIT_MALFORMED and out == ""


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "openbook_rho", "variation", "--format", "json"],
                          input='{"matrix": [[0]]}', capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"is_isomorphism": False}


# -- properties ---------------------------------------------------------------

models = st.one_of(
    st.just(Contractible()),
    st.integers(1, 50).map(Sphere),
    st.lists(st.integers(1, 20), min_size=1, max_size=5).map(wedge),
    st.dictionaries(st.integers(2, 30), st.integers(0, 5)).map(EllipticRanks),
)


@given(models)
def test_model_json_roundtrip(model):
    assert parse_space_model(json.loads(json.dumps(model_to_json(model)))) == model


json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-5, 5) | st.floats(allow_nan=False) | st.text(max_size=4),
    lambda inner: st.lists(inner, max_size=3) | st.dictionaries(st.text(max_size=6), inner, max_size=3),
    max_leaves=8,
)


def bad_space_docs():
    return st.one_of(
        json_values.filter(lambda d: not isinstance(d, dict) or d.get("kind") not in
                           ("contractible", "sphere", "wedge", "elliptic_ranks")),
        st.fixed_dictionaries({"kind": st.just("sphere"),
                               "dim": json_values.filter(lambda x: not (isinstance(x, int) and not isinstance(x, bool) and x >= 1))}),
        st.fixed_dictionaries({"kind": st.just("wedge"),
                               "dims": st.lists(st.integers(-3, 0), min_size=1, max_size=3)}),
        st.fixed_dictionaries({"kind": st.just("elliptic_ranks"),
                               "ranks": st.dictionaries(st.sampled_from(["2", "5", "a", "0"]),
                                                        st.integers(-4, -1), min_size=1)}),
    )


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(["ranks", "growth"]), bad_space_docs())
def test_invalid_space_documents_exit_2(command, doc):
    status, out, err = invoke([command, "--truncation", "12"], doc)
    assert status == EXIT_MALFORMED and out == "" and err.startswith("error")


REQUIRED_KEYS = {"classify": "page", "brieskorn": "exponents", "lie-ranks": "generators",
                 "variation": "matrix"}


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(sorted(REQUIRED_KEYS)), json_values)
def test_garbage_documents_exit_2(command, doc):
    if isinstance(doc, dict) and REQUIRED_KEYS[command] in doc:
        return
    status, out, err = invoke([command, "--truncation", "12"], doc)
    assert status == EXIT_MALFORMED and out == ""


@given(st.text(max_size=20))
def test_non_json_payload_exit_2(text):
    try:
        json.loads(text)
        return
    except ValueError:
        pass
    status = run(JobConfig("ranks"), text)
    assert status[0] == EXIT_MALFORMED and status[1] == ""
