import json

import numpy as np
import pytest

from cvact.activation import nogo_run, random_scenario
from cvact.errors import BonaFideViolation
from cvact.io import (
    format_cm_text,
    load_scenarios,
    parse_cm_text,
    read_cm,
    save_scenarios,
    scenario_from_dict,
    scenario_to_dict,
    write_cm,
)
from cvact.states import coherent_mixture_cm, random_cm


def test_text_roundtrip(tmp_path):
    cm = random_cm(2, np.random.default_rng(0))
    path = tmp_path / "cm.txt"
    write_cm(path, cm)
    np.testing.assert_array_equal(read_cm(path), cm)


def test_json_roundtrip(tmp_path):
    cm = coherent_mixture_cm(0.3)
    path = tmp_path / "cm.json"
    write_cm(path, cm)
    assert json.loads(path.read_text())["modes"] == 2
    np.testing.assert_array_equal(read_cm(path), cm)


def test_parse_comments_and_blank_lines():
    text = "# vacuum\n1\n\n0.5 0\n0 0.5\n"
    np.testing.assert_array_equal(parse_cm_text(text), 0.5 * np.eye(2))
    assert parse_cm_text(format_cm_text(np.eye(2))).shape == (2, 2)


@pytest.mark.parametrize("text", ["", "2\n1 0\n0 1\n", "1\n1 0 0\n0 1\n", "1\nx 0\n0 1\n"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_cm_text(text)


def test_read_rejects_unphysical(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1\n0.1 0\n0 0.1\n")
    with pytest.raises(BonaFideViolation):
        read_cm(path)


def test_scenario_roundtrip(tmp_path):
    rng = np.random.default_rng(1)
    scs = [random_scenario(rng) for _ in range(3)]
    path = tmp_path / "sc.json"
    save_scenarios(path, scs)
    loaded = load_scenarios(path)
    assert len(loaded) == 3
    for sc, (back, cert) in zip(scs, loaded):
        assert cert is None
        np.testing.assert_allclose(nogo_run(back).gamma_out, nogo_run(sc).gamma_out, atol=1e-14)


def test_scenario_with_certificate():
    sc = random_scenario(np.random.default_rng(2))
    c = nogo_run(sc).certificate
    back, cert = scenario_from_dict(scenario_to_dict(sc, (c.gamma_1, c.gamma_2)))
    np.testing.assert_array_equal(cert[0], c.gamma_1)
    assert nogo_run(back, cert).certificate.is_valid()
