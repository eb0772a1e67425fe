"""Command-line front end (``cvact``).

Numbers are printed with 12 significant digits. Randomness in
``nogo-demo`` comes from numpy's PCG64: trial ``i`` uses the ``i``-th child
of ``numpy.random.SeedSequence(seed)``, so a seed fixes every scenario.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import activation, negativity
from .errors import CertificateFailed, CutoffTooLarge, CVActError
from .fock import fock_elements
from .gaussian import (
    StandardFormParams,
    assemble_standard_form,
    is_classical,
    ppt_separability,
)
from .io import load_scenarios, read_cm, save_scenarios
from .states import coherent_mixture_cm, r_from_nbar, tmsv_cm

EXIT_OK, EXIT_ERROR, EXIT_NOT_CONVERGED, EXIT_CERT_FAILED = 0, 1, 2, 3
FAMILIES = ("pure", "coherent-mixture", "standard-form-grid")


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x) + 0.0:.12g}"


def _err(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_ERROR


# ---------------------------------------------------------------------------


def cmd_negativity(args) -> int:
    try:
        cm = assemble_standard_form(StandardFormParams(args.a, args.b, args.c1, args.c2))
        res = negativity.negativity_truncated(cm, tol=args.tol, max_cutoff=args.max_cutoff)
    except (CVActError, ValueError) as exc:
        return _err(str(exc))
    print(f"value {fmt(res.value)}")
    print(f"cutoff_used {res.cutoff_used}")
    print(f"tail_estimate {fmt(res.tail_estimate)}")
    print(f"converged {fmt(res.converged)}")
    return EXIT_OK if res.converged else EXIT_NOT_CONVERGED


def sweep_cm(family: str, nbar: float, c_fraction: float = 0.5) -> np.ndarray:
    """Covariance matrix of a sweep family at local mean photon number ``nbar``.

    ``standard-form-grid`` uses ``a = b = nbar + 1/2`` and
    ``c1 = -c2 = c_fraction * sqrt(a**2 - 1/4)``; ``c_fraction = 1`` is the
    two-mode squeezed vacuum.
    """
    if family == "pure":
        return tmsv_cm(r_from_nbar(nbar))
    if family == "coherent-mixture":
        return coherent_mixture_cm(nbar)
    if family == "standard-form-grid":
        a = nbar + 0.5
        c = c_fraction * np.sqrt(a * a - 0.25)
        return assemble_standard_form(StandardFormParams(a, a, c, -c))
    raise ValueError(f"unknown family {family!r}")


def _sweep_row(job):
    family, nbar, tol, max_cutoff, c_fraction = job
    cm = sweep_cm(family, nbar, c_fraction)
    res = negativity.negativity_truncated(cm, tol=tol, max_cutoff=max_cutoff)
    row = [nbar, res.value, negativity.lower_bound(cm).lower_bound, res.cutoff_used, res.converged]
    if family == "pure":
        row.append(negativity.negativity_pure(r_from_nbar(nbar)))
    return row


def run_sweep(family, nbar_min, nbar_max, steps, tol=negativity.DEFAULT_TOL,
              max_cutoff=negativity.DEFAULT_MAX_CUTOFF, c_fraction=0.5, jobs=1) -> str:
    """CSV text of a parameter sweep; rows are ordered by grid index."""
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}")
    if nbar_min < 0 or not nbar_min < nbar_max or steps < 2:
        raise ValueError("need 0 <= nbar_min < nbar_max and steps >= 2")
    grid = np.linspace(nbar_min, nbar_max, steps)
    work = [(family, float(n), tol, max_cutoff, c_fraction) for n in grid]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            rows = list(ex.map(_sweep_row, work))
    else:
        rows = [_sweep_row(w) for w in work]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["nbar", "negativity", "lower_bound", "cutoff_used", "converged"]
    if family == "pure":
        header.append("closed_form")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    try:
        text = run_sweep(args.family, args.nbar_min, args.nbar_max, args.steps, args.tol,
                         args.max_cutoff, args.c_fraction, args.jobs)
    except (CVActError, ValueError) as exc:
        return _err(str(exc))
    try:
        if args.out in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        return _err(str(exc))
    return EXIT_OK


def classify(cm) -> str:
    if is_classical(cm):
        return "Classical"
    if not ppt_separability(cm).separable:
        return "Entangled"
    return "SeparableNonclassical"


def cmd_classify(args) -> int:
    try:
        cm = read_cm(args.cm_file)
        print(classify(cm))
    except (CVActError, ValueError, OSError, KeyError) as exc:
        return _err(str(exc))
    return EXIT_OK


def run_nogo_trials(trials: int, seed: int, zero_noise=False, corrupt=False, scenarios=None):
    """Run no-go trials and return the result rows.

    Each row is ``(trial, passed, min_residual_eig, pt_min_symplectic_eig, message)``.
    """
    if scenarios is None:
        children = np.random.SeedSequence(seed).spawn(trials)
        scenarios = [
            (activation.random_scenario(np.random.default_rng(c), zero_noise=zero_noise), None)
            for c in children
        ]
    rows = []
    for i, (sc, cert) in enumerate(scenarios):
        if corrupt:
            base = activation.nogo_run(sc, cert).certificate
            cert = (base.gamma_1 + np.eye(4), base.gamma_2)
        try:
            out = activation.nogo_run(sc, cert)
        except CertificateFailed as exc:
            rows.append((i, False, float("nan"), float("nan"), str(exc)))
            continue
        ok = out.ppt_passed
        rows.append((i, ok, out.certificate.min_residual_eig, out.pt_min_symplectic_eig,
                     "" if ok else "PPT check failed"))
    return rows


def cmd_nogo_demo(args) -> int:
    if args.trials < 1:
        return _err("trials must be >= 1")
    try:
        scenarios = None
        if args.scenario:
            scenarios = load_scenarios(args.scenario)
        elif args.save_scenarios:
            children = np.random.SeedSequence(args.seed).spawn(args.trials)
            scs = [activation.random_scenario(np.random.default_rng(c), zero_noise=args.zero_noise)
                   for c in children]
            save_scenarios(args.save_scenarios, scs)
            scenarios = [(s, None) for s in scs]
        rows = run_nogo_trials(args.trials, args.seed, args.zero_noise, args.corrupt, scenarios)
    except (CVActError, ValueError, OSError, KeyError) as exc:
        return _err(str(exc))
    n_pass = sum(r[1] for r in rows)
    eigs = [r[2] for r in rows if np.isfinite(r[2])]
    print(f"trials {len(rows)}")
    print(f"passed {n_pass}")
    print(f"failed {len(rows) - n_pass}")
    print(f"min_certificate_eig {fmt(min(eigs)) if eigs else 'nan'}")
    for r in rows:
        if not r[1]:
            print(f"trial {r[0]} FAILED: {r[4]}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["trial", "passed", "min_residual_eig", "pt_min_symplectic_eig"])
            for r in rows:
                w.writerow([r[0], fmt(r[1]), fmt(r[2]), fmt(r[3])])
    return EXIT_OK if n_pass == len(rows) else EXIT_CERT_FAILED


def cmd_bound_extrema(args) -> int:
    ext = negativity.bound_extrema(args.family)
    print(f"argmax_nbar {ext.argmax_nbar:.4f}")
    print(f"max_value {fmt(ext.max_value)}")
    print(f"zero_crossing_nbar {ext.zero_crossing_nbar:.4f}")
    return EXIT_OK


def cmd_fock_element(args) -> int:
    idx = (args.m1, args.m2, args.n1, args.n2)
    cutoff = args.cutoff if args.cutoff is not None else max(idx)
    try:
        cm = assemble_standard_form(StandardFormParams(args.a, args.b, args.c1, args.c2))
        if max(idx) > cutoff or min(idx) < 0:
            raise ValueError("indices must lie in [0, cutoff]")
        tdm = fock_elements(cm, cutoff)
    except (CVActError, ValueError, CutoffTooLarge) as exc:
        return _err(str(exc))
    v = tdm.elements[idx]
    print(f"re {fmt(v.real)}")
    print(f"im {fmt(v.imag)}")
    if args.dump_csv:
        tdm.dump_csv(args.dump_csv)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cvact", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def sf_args(sp):
        sp.add_argument("--a", type=float, required=True)
        sp.add_argument("--b", type=float, required=True)
        sp.add_argument("--c1", type=float, required=True)
        sp.add_argument("--c2", type=float, required=True)

    def conv_args(sp):
        sp.add_argument("--tol", type=float, default=negativity.DEFAULT_TOL)
        sp.add_argument("--max-cutoff", type=int, default=negativity.DEFAULT_MAX_CUTOFF)

    sp = sub.add_parser("negativity", help="output negativity of a standard-form state")
    sf_args(sp)
    conv_args(sp)
    sp.set_defaults(func=cmd_negativity)

    sp = sub.add_parser("sweep", help="negativity and lower bound over a photon-number grid")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--nbar-min", type=float, default=0.0)
    sp.add_argument("--nbar-max", type=float, required=True)
    sp.add_argument("--steps", type=int, default=21)
    sp.add_argument("--c-fraction", type=float, default=0.5,
                    help="correlation strength for standard-form-grid")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", default=None)
    conv_args(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("classify", help="Classical / SeparableNonclassical / Entangled")
    sp.add_argument("cm_file")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("nogo-demo", help="Gaussian no-activation certificates on random scenarios")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--out", default=None)
    sp.add_argument("--zero-noise", action="store_true", help="use product inputs (P = 0)")
    sp.add_argument("--corrupt", action="store_true",
                    help="inflate the certificate to exercise the failure path")
    sp.add_argument("--scenario", default=None, help="JSON scenario file to run instead")
    sp.add_argument("--save-scenarios", default=None, help="write the generated scenarios as JSON")
    sp.set_defaults(func=cmd_nogo_demo)

    sp = sub.add_parser("bound-extrema", help="maximum and zero crossing of a lower bound")
    sp.add_argument("--family", choices=("pure", "coherent-mixture"), required=True)
    sp.set_defaults(func=cmd_bound_extrema)

    sp = sub.add_parser("fock-element", help="one Fock element of a standard-form state")
    sf_args(sp)
    for name in ("m1", "m2", "n1", "n2"):
        sp.add_argument(f"--{name}", type=int, default=0)
    sp.add_argument("--cutoff", type=int, default=None)
    sp.add_argument("--dump-csv", default=None)
    sp.set_defaults(func=cmd_fock_element)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
