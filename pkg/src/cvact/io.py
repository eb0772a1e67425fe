"""Covariance-matrix and scenario file formats.

Plain-text CM file: the first line holds the mode count ``L``, followed by
``2L`` rows of ``2L`` whitespace-separated reals. A ``.json`` file holds
``{"modes": L, "entries": [[...], ...]}`` instead.

Scenario files are JSON lists of objects with keys ``gamma_a``,
``gamma_b``, ``noise``, ``s_a``, ``s_b``, ``s_global``, ``gamma_ancilla``
and an optional ``certificate`` object ``{"gamma_1": ..., "gamma_2": ...}``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .activation import NoGoScenario
from .gaussian import check_covariance, product_noise_compose


def parse_cm_text(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty covariance matrix file")
    n_modes = int(lines[0].split()[0])
    rows = [[float(x) for x in ln.split()] for ln in lines[1:]]
    dim = 2 * n_modes
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ValueError(f"expected {dim} rows of {dim} entries for {n_modes} modes")
    return np.array(rows)


def format_cm_text(cm: np.ndarray) -> str:
    cm = np.asarray(cm, dtype=float)
    out = [str(cm.shape[0] // 2)]
    out += [" ".join(f"{x:.17g}" for x in row) for row in cm]
    return "\n".join(out) + "\n"


def read_cm(path) -> np.ndarray:
    """Read and validate a covariance matrix from a text or JSON file."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        rec = json.loads(text)
        cm = np.array(rec["entries"], dtype=float)
        if cm.shape != (2 * int(rec["modes"]),) * 2:
            raise ValueError("entries do not match the mode count")
    else:
        cm = parse_cm_text(text)
    return check_covariance(cm)


def write_cm(path, cm: np.ndarray) -> None:
    path = Path(path)
    cm = np.asarray(cm, dtype=float)
    if path.suffix == ".json":
        path.write_text(json.dumps({"modes": cm.shape[0] // 2, "entries": cm.tolist()}, indent=1))
    else:
        path.write_text(format_cm_text(cm))


def scenario_to_dict(sc: NoGoScenario, certificate=None) -> dict:
    dec = sc.decomposition
    rec = {
        "gamma_a": dec.gamma_a.tolist(),
        "gamma_b": dec.gamma_b.tolist(),
        "noise": dec.noise.tolist(),
        "s_a": sc.s_a.tolist(),
        "s_b": sc.s_b.tolist(),
        "s_global": sc.s_global.tolist(),
        "gamma_ancilla": sc.gamma_ancilla.tolist(),
    }
    if certificate is not None:
        rec["certificate"] = {"gamma_1": np.asarray(certificate[0]).tolist(),
                              "gamma_2": np.asarray(certificate[1]).tolist()}
    return rec


def scenario_from_dict(rec: dict):
    """Return ``(scenario, certificate_or_None)``."""
    arr = {k: np.array(v, dtype=float) for k, v in rec.items() if k != "certificate"}
    _, dec = product_noise_compose(arr["gamma_a"], arr["gamma_b"], arr["noise"])
    sc = NoGoScenario(dec, arr["s_a"], arr["s_b"], arr["s_global"], arr["gamma_ancilla"])
    cert = rec.get("certificate")
    if cert is not None:
        cert = (np.array(cert["gamma_1"], dtype=float), np.array(cert["gamma_2"], dtype=float))
    return sc, cert


def save_scenarios(path, scenarios) -> None:
    Path(path).write_text(json.dumps([scenario_to_dict(s) for s in scenarios], indent=1))


def load_scenarios(path):
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = [data]
    return [scenario_from_dict(rec) for rec in data]
