"""Command line front end.

Exit codes: 0 success, 1 validation failure, 2 I/O failure.

Examples::

    fvs design -p 5 -r 3 -t 2 -o d.fvs
    fvs sample --design d.fvs --seed 7 --variant gamma2 --noise 0.1 -o s.fvs
    fvs reconstruct --design d.fvs --samples s.fvs --variant gamma2 --truth s.fvs.truth -o rec.fvs
    fvs verify --design d.fvs
    fvs bench -p 5 -r 6 -t 2 --trials 5
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import kernels
from .design import (
    DesignError,
    build_design,
    coherence_ok,
    family_size_ok,
    gamma1_bound,
    gamma2_bound,
    verify_m_generating,
    within_gamma2_bound,
)
from .field import all_vectors, encode, is_prime
from .formats import (
    FormatError,
    dump_design,
    dump_report,
    dump_samples,
    dump_spectrum,
    load_design,
    load_samples,
    load_spectrum,
    sample_comments,
)
from .recovery import reconstruct
from .spectral import (
    MissingSamples,
    SampleTable,
    full_dft_oracle,
    random_noise,
    random_sparse_spectrum,
    sample_signal,
)

VARIANTS = ("gamma1", "gamma2")


class ValidationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _check_prime(p: int):
    if not is_prime(p):
        raise ValidationError("p must be prime")


def _size_lines(design) -> list:
    prm = design.params
    g1, g2 = len(design.gamma1()), len(design.gamma2())
    return [
        f"h={prm.h} m={prm.m} n={prm.n} q={prm.q} K={list(design.K)}",
        f"|Gamma1| = {g1}  (bound 16pt^2r^2 = {gamma1_bound(prm.p, prm.t, prm.r)})",
        f"|Gamma2| = {g2}  (bound 16pt^2r^3(2+log2 p) = {gamma2_bound(prm.p, prm.t, prm.r):.1f})",
    ]


# ---------------------------------------------------------------------------


def cmd_design(args):
    _check_prime(args.p)
    design = build_design(args.p, args.r, args.t)
    _write(args.output, dump_design(design))
    stream = sys.stdout if args.output not in (None, "-") else sys.stderr
    for line in _size_lines(design):
        print(line, file=stream)
    return 0


def cmd_sample(args):
    design = load_design(_read(args.design))
    p, r, t = design.p, design.r, design.params.t
    rng = np.random.default_rng(args.seed)
    if args.spectrum:
        signal = load_spectrum(_read(args.spectrum), p=p)
        if signal.r != r:
            raise ValidationError(f"dimension mismatch: spectrum has r={signal.r}, design has r={r}")
    else:
        signal = random_sparse_spectrum(p, r, t, rng)
    noise = random_noise(p, r, args.noise, signal, rng)
    truth = signal + noise
    sset = design.sampling_set(args.variant)
    table = sample_signal(truth, sset)
    comments = [f"seed {args.seed}", f"noise {args.noise!r}"]
    _write(args.output, dump_samples(table, comments))
    if args.output not in (None, "-"):
        _write(args.output + ".signal", dump_spectrum(signal, comments))
        _write(args.output + ".truth", dump_spectrum(truth, comments))
        if args.noise > 0:
            _write(args.output + ".noise", dump_spectrum(noise, comments + [f"l1 {noise.l1_norm()!r}"]))
        print(f"{len(table)} samples on {args.variant}", file=sys.stderr)
    return 0


def cmd_reconstruct(args):
    design = load_design(_read(args.design))
    text = _read(args.samples)
    samples = load_samples(text)
    if (samples.p, samples.r) != (design.p, design.r):
        raise ValidationError("dimension mismatch between samples and design")
    report = reconstruct(samples, design, args.variant)
    comments = [c for c in sample_comments(text) if c.startswith("seed")]
    _write(args.output, dump_report(report, design, comments))
    if args.truth:
        truth = load_spectrum(_read(args.truth), p=design.p, r=design.r)
        err = report.spectrum.l1_distance(truth)
        stream = sys.stdout if args.output not in (None, "-") else sys.stderr
        print(f"l1 error {err:.6e}", file=stream)
    return 0


def verify_design(design) -> list:
    """(name, ok, detail) for every structural check of a design."""
    prm = design.params
    fam = design.family
    out = []
    out.append(("m-generating", verify_m_generating(fam.bases, prm.m, prm.p, prm.r), f"C({prm.n},{prm.m}) subsets"))
    g1, g2 = len(design.gamma1()), len(design.gamma2())
    out.append(("gamma1 size", g1 <= gamma1_bound(prm.p, prm.t, prm.r), f"{g1}"))
    out.append(("gamma2 size", within_gamma2_bound(g2, prm.p, prm.t, prm.r), f"{g2}"))
    out.append(("family size", family_size_ok(prm), f"n p^h = {prm.n * prm.p ** prm.h}"))
    out.append(("coherence", coherence_ok(fam.bases, prm.m, prm.p, prm.r), f"max count <= {prm.m - 1}"))
    return out


def cmd_verify(args):
    design = load_design(_read(args.design))
    checks = verify_design(design)
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
    return 0 if all(ok for _, ok, _ in checks) else 1


def cmd_bench(args):
    _check_prime(args.p)
    design = build_design(args.p, args.r, args.t)
    prm = design.params
    g1, g2 = design.gamma1(), design.gamma2()
    print(f"# backend={kernels.BACKEND} p={prm.p} r={prm.r} t={prm.t} h={prm.h} m={prm.m} n={prm.n}")
    print(
        f"# |Gamma1|={len(g1)} bound={gamma1_bound(prm.p, prm.t, prm.r)}  "
        f"|Gamma2|={len(g2)} bound={gamma2_bound(prm.p, prm.t, prm.r):.1f}"
    )
    print("trial  n_gamma1  n_gamma2  alg1_s  alg2_s  err1  err2")
    rng = np.random.default_rng(args.seed)
    for trial in range(args.trials):
        signal = random_sparse_spectrum(prm.p, prm.r, prm.t, rng)
        row = []
        for variant, sset in (("gamma1", g1), ("gamma2", g2)):
            table = sample_signal(signal, sset)
            t0 = time.perf_counter()
            rep = reconstruct(table, design, variant)
            row.append((time.perf_counter() - t0, rep.spectrum.l1_distance(signal)))
        (t1, e1), (t2, e2) = row
        print(f"{trial}  {len(g1)}  {len(g2)}  {t1:.6f}  {t2:.6f}  {e1:.2e}  {e2:.2e}")
    return 0


def cmd_oracle_dft(args):
    samples = load_samples(_read(args.samples))
    p, r = samples.p, samples.r
    full = encode(all_vectors(p, r), p)
    missing = np.setdiff1d(full, samples.codes)
    if missing.size:
        samples.gather(missing[:1])  # raises MissingSamples naming the point
    spec = full_dft_oracle(SampleTable(p, r, samples.codes, samples.values), p, r)
    _write(args.output, dump_spectrum(spec))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fvs", description="Universal sampling sets and sparse Fourier recovery on F_p^r")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("design", help="construct a sampling design")
    d.add_argument("-p", type=int, required=True)
    d.add_argument("-r", type=int, required=True)
    d.add_argument("-t", type=int, required=True)
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_design)

    s = sub.add_parser("sample", help="synthesise samples of a sparse signal on a sampling set")
    s.add_argument("--design", required=True)
    s.add_argument("--spectrum", help="spectrum file; default is a random t-sparse spectrum")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--variant", choices=VARIANTS, default="gamma1")
    s.add_argument("--noise", type=float, default=0.0, help="l1 mass of off-support noise")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sample)

    c = sub.add_parser("reconstruct", help="recover the spectrum from samples")
    c.add_argument("--design", required=True)
    c.add_argument("--samples", required=True)
    c.add_argument("--variant", choices=VARIANTS, default="gamma1")
    c.add_argument("--truth", help="reference spectrum; prints the l1 error")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_reconstruct)

    v = sub.add_parser("verify", help="check m-generation, size bounds and coherence")
    v.add_argument("--design", required=True)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time both reconstruction algorithms")
    b.add_argument("-p", type=int, required=True)
    b.add_argument("-r", type=int, required=True)
    b.add_argument("-t", type=int, required=True)
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench)

    o = sub.add_parser("oracle-dft", help="brute-force transform of a complete sample table")
    o.add_argument("--samples", required=True)
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_oracle_dft)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MissingSamples as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, DesignError, FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
