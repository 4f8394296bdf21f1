"""Command-line front end.

Every command prints one JSON report on stdout. Exit codes: 0 for success,
TRUE or INDETERMINATE; 1 for a FALSE verdict; 2 for usage or data errors.
Tensors are read and written in the htj-v1 format (see :mod:`tubalforms.io`).
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .core import DimensionError, ifft_tubal, tubal_dims
from .einstein import phi, t_einstein, t_einstein_naive
from .generators import hierarchy_example
from .hermitian import psym
from .io import read_htj, write_htj
from .spectral import (
    algorithm3_positivity,
    check_joint_mtu,
    spectral_power,
    t_matrix_tensor_eigenvalues,
)
from .tforms import eval_t_hermitian_form, is_t_hps, t_hpd_sample_test
from .tprod import tprod_fft, tprod_naive

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _complex_list(v):
    return [[float(x.real), float(x.imag)] for x in np.ravel(v)]


def _table(E):
    return [[float(x) for x in row] for row in np.asarray(E)]


def _load(path, domain):
    A = read_htj(path)
    return ifft_tubal(A) if domain == "freq" else A


def _emit(report):
    print(json.dumps(report, indent=2))


def _verdict_code(verdict):
    return EXIT_FALSE if verdict == "FALSE" else EXIT_OK


def cmd_tprod(args):
    A, B = _load(args.a, args.domain), _load(args.b, args.domain)
    C = tprod_naive(A, B) if args.naive else tprod_fft(A, B)
    write_htj(args.out, C)
    _emit({"command": "tprod", "path": "naive" if args.naive else "fft",
           "shape": list(C.shape), "out": args.out})
    return EXIT_OK


def cmd_teinstein(args):
    C = t_einstein(_load(args.a, args.domain), _load(args.b, args.domain))
    write_htj(args.out, C)
    _emit({"command": "teinstein", "shape": list(C.shape), "out": args.out})
    return EXIT_OK


def _eigen_witness(A, l):
    M = phi(A)[l]
    M = 0.5 * (M + M.conj().T)
    w, V = np.linalg.eigh(M)
    return {"slice": int(l), "vector": _complex_list(V[:, 0]), "value": float(w[0])}


def _posdef_report(A, mode, samples, seed, tol):
    k, n, p = tubal_dims(A)
    if not is_t_hps(A, tol):
        raise UsageError("input is not t-Hermitian partially symmetric")
    report = {"command": "posdef", "mode": mode, "k": k, "n": n, "p": p}
    if mode == "exact-k1":
        if k != 1:
            raise UsageError(f"no exact test available for k={k}")
        E = t_matrix_tensor_eigenvalues(A)
        report["eigenvalueTable"] = _table(E)
        bad = np.flatnonzero(E.min(axis=1) <= 0)
        if bad.size:
            report.update(verdict="FALSE", reason="nonpositive-eigenvalue",
                          witnesses=[_eigen_witness(A, bad[0])])
        else:
            report.update(verdict="TRUE", reason="all-eigenvalues-positive")
    elif mode == "commutant":
        report["eigenvalueTable"] = _table(t_matrix_tensor_eigenvalues(A))
        v = algorithm3_positivity(A, seed=seed)
        if v.positive:
            report.update(verdict="TRUE", reason="algorithm3-certified")
        else:
            report.update(verdict="FALSE", reason=v.reason, slice=v.slice)
            if v.reason == "cholesky-failed":
                report["witnesses"] = [_eigen_witness(A, v.slice)]
    elif mode == "sample":
        res = t_hpd_sample_test(A, samples=samples, seed=seed, tol=tol)
        report["minima"] = [float(x) for x in res.minima]
        if res.disproved:
            report.update(verdict="FALSE", reason="nonpositive-sample",
                          witnesses=[{"slice": int(l), "vector": _complex_list(w), "value": val}
                                     for l, w, val in res.witnesses()])
        else:
            report.update(verdict="INDETERMINATE", reason="all-samples-positive")
    else:
        raise UsageError(f"unknown mode {mode!r}")
    return report


def cmd_posdef(args):
    report = _posdef_report(_load(args.a, args.domain), args.mode, args.samples, args.seed, args.tol)
    _emit(report)
    return _verdict_code(report["verdict"])


def cmd_counterexample(args):
    A = hierarchy_example(args.c)
    v = algorithm3_positivity(A, seed=args.seed)
    res = t_hpd_sample_test(A, samples=args.samples, seed=args.seed)
    w = np.array([1.0, 1.0]) / np.sqrt(2)
    _emit({
        "command": "counterexample",
        "c": args.c,
        "eigenvalueTable": _table(t_matrix_tensor_eigenvalues(A)),
        "algorithm3": {"verdict": "TRUE" if v.positive else "FALSE", "reason": v.reason, "slice": v.slice},
        "sampleMinima": [float(x) for x in res.minima],
        "valueAtBalancedPoint": [float(x) for x in eval_t_hermitian_form(A, [w, w]).freq_values],
    })
    return EXIT_OK


def cmd_eigvals(args):
    E = t_matrix_tensor_eigenvalues(_load(args.a, args.domain))
    _emit({"command": "eigvals", "kind": args.kind, "eigenvalueTable": _table(E)})
    return EXIT_OK


def cmd_mtu_check(args):
    ok, pair = check_joint_mtu(_load(args.a, args.domain), tol=args.tol)
    report = {"command": "mtu-check", "verdict": "TRUE" if ok else "FALSE"}
    if not ok:
        report.update(reason="not-commuting", witnesses=[{"slices": list(pair)}])
    _emit(report)
    return _verdict_code(report["verdict"])


def cmd_psym(args):
    B = psym(_load(args.a, args.domain))
    write_htj(args.out, B)
    _emit({"command": "psym", "shape": list(B.shape), "out": args.out})
    return EXIT_OK


def cmd_form_eval(args):
    A = _load(args.a, args.domain)
    Z = read_htj(args.z)
    if Z.ndim != 2:
        raise DimensionError(f"evaluation point must be an n x p array, got shape {Z.shape}")
    vals = eval_t_hermitian_form(A, Z)
    _emit({"command": "form-eval", "freqValues": [float(x) for x in vals.freq_values],
           "spatialTube": _complex_list(vals.spatial_tube)})
    return EXIT_OK


def cmd_power(args):
    B = spectral_power(_load(args.a, args.domain), args.alpha)
    write_htj(args.out, B)
    _emit({"command": "power", "alpha": args.alpha, "shape": list(B.shape), "out": args.out})
    return EXIT_OK


def _median_time(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def cmd_bench(args):
    rng = np.random.default_rng(args.seed)
    rows = []
    for p in args.p:
        shape = (args.n,) * (2 * args.k) + (p,)
        A = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        B = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        naive, fast = (tprod_naive, tprod_fft) if args.k == 1 else (t_einstein_naive, t_einstein)
        tn = _median_time(lambda: naive(A, B), args.reps)
        tf = _median_time(lambda: fast(A, B), args.reps)
        rows.append({"n": args.n, "k": args.k, "p": p, "naive": tn, "fft": tf, "ratio": tn / tf})
    _emit({"command": "bench", "columns": ["n", "k", "p", "naive", "fft", "ratio"], "rows": rows})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tubalforms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, inputs=("a",), out=False, help=None):
        sp = sub.add_parser(name, help=help)
        for name_ in inputs:
            sp.add_argument(name_, help="htj-v1 input file")
        if out:
            sp.add_argument("-o", "--out", required=True, help="htj-v1 output file")
        if inputs:
            sp.add_argument("--domain", choices=["spatial", "freq"], default="spatial",
                            help="freq: inputs hold frequency slices and are inverse transformed")
        sp.set_defaults(func=func)
        return sp

    sp = add("tprod", cmd_tprod, ("a", "b"), out=True, help="t-product of order-3 tensors")
    sp.add_argument("--naive", action="store_true", help="use the block-circulant definition")
    add("teinstein", cmd_teinstein, ("a", "b"), out=True, help="t-Einstein product")

    sp = add("posdef", cmd_posdef, help="positive definiteness of a t-Hermitian form")
    sp.add_argument("--mode", choices=["exact-k1", "commutant", "sample"], default="commutant")
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-10)

    sp = add("counterexample", cmd_counterexample, inputs=(), help="the commutant form with c")
    sp.add_argument("--c", type=float, default=-0.25)
    sp.add_argument("--samples", type=int, default=100000)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("eigvals", cmd_eigvals, help="per-slice matrix-tensor eigenvalues")
    sp.add_argument("--kind", choices=["matrix-tensor"], default="matrix-tensor")
    sp = add("mtu-check", cmd_mtu_check, help="do the slice matrices commute")
    sp.add_argument("--tol", type=float, default=1e-10)
    add("psym", cmd_psym, out=True, help="partial symmetrizer")
    sp = add("form-eval", cmd_form_eval, help="evaluate the form at frequency-slice vectors")
    sp.add_argument("z", help="htj-v1 n x p array, column l is z^(l)")
    sp = add("power", cmd_power, out=True, help="solve B^alpha = A spectrally")
    sp.add_argument("--alpha", type=float, required=True)

    sp = add("bench", cmd_bench, inputs=(), help="naive vs FFT product timings")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--p", type=int, nargs="+", default=[64, 128, 256, 512])
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--reps", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, ArithmeticError, OSError, IndexError) as exc:
        _emit({"command": args.command, "error": type(exc).__name__, "message": str(exc)})
        print(f"tubalforms: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
