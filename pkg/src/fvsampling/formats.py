"""Line-based text formats for designs, spectra, sample tables and reports.

All integers are base 10; floats use 17 significant digits so doubles
round-trip exactly.  Lines starting with ``#`` are comments except for the
``# diagnostics`` marker in recovery reports.
"""

from __future__ import annotations

import numpy as np

from .design import DesignError, DesignParams, SamplingDesign, SubspaceFamily
from .spectral import SampleTable, SparseSpectrum


class FormatError(ValueError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _ints(line: str, lineno: int) -> list:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise FormatError(f"line {lineno}: expected integers, got {line!r}") from exc


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line:
            yield lineno, line


# ---------------------------------------------------------------------------
# design


def dump_design(design: SamplingDesign) -> str:
    prm = design.params
    fam = design.family
    out = ["FVSDESIGN v1", f"{prm.p} {prm.r} {prm.t} {prm.h} {prm.m} {prm.n}"]
    for i in range(fam.n):
        out.append(f"H {i + 1}")
        out.extend(" ".join(str(int(c)) for c in row) for row in fam.bases[i])
        out.append(f"X {i + 1}")
        out.extend(" ".join(str(int(c)) for c in row) for row in fam.complements[i])
    out.append("K " + " ".join(str(k) for k in design.K))
    return "\n".join(out) + "\n"


def load_design(text: str) -> SamplingDesign:
    lines = [(n, l) for n, l in _content_lines(text) if not l.startswith("#")]
    if not lines or lines[0][1] != "FVSDESIGN v1":
        raise FormatError("missing 'FVSDESIGN v1' header")
    if len(lines) < 2:
        raise FormatError("missing parameter line")
    vals = _ints(lines[1][1], lines[1][0])
    if len(vals) != 6:
        raise FormatError("parameter line must be 'p r t h m n'")
    p, r, t, h, m, n = vals
    if not (1 <= h <= r) or n < 1 or m < 1 or p < 2:
        raise DesignError("inconsistent design parameters")
    pos = 2

    def take_block(tag, idx, count):
        nonlocal pos
        if pos >= len(lines) or lines[pos][1] != f"{tag} {idx}":
            got = lines[pos][1] if pos < len(lines) else "end of file"
            raise FormatError(f"expected '{tag} {idx}', got {got!r}")
        pos += 1
        rows = []
        for _ in range(count):
            if pos >= len(lines):
                raise FormatError(f"block {tag} {idx} is truncated")
            lineno, line = lines[pos]
            row = _ints(line, lineno)
            if len(row) != r or any(not 0 <= c < p for c in row):
                raise FormatError(f"line {lineno}: expected {r} residues mod {p}")
            rows.append(row)
            pos += 1
        return rows

    bases, comps = [], []
    for i in range(1, n + 1):
        bases.append(take_block("H", i, h))
        comps.append(take_block("X", i, r - h))
    if pos >= len(lines) or not lines[pos][1].startswith("K"):
        raise FormatError("missing K line")
    K = tuple(_ints(lines[pos][1][1:], lines[pos][0]))
    family = SubspaceFamily(
        p,
        r,
        h,
        np.array(bases, dtype=np.int64).reshape(n, h, r),
        np.array(comps, dtype=np.int64).reshape(n, r - h, r),
    )
    return SamplingDesign(DesignParams(p, r, t, h, m, n), family, K)


# ---------------------------------------------------------------------------
# spectra and samples


def _entry(coords, value) -> str:
    z = complex(value)
    return " ".join(str(int(c)) for c in coords) + f" : {_fmt(z.real)} {_fmt(z.imag)}"


def _parse_entry(line: str, lineno: int, p: int, r: int | None):
    if ":" not in line:
        raise FormatError(f"line {lineno}: expected 'coords : re im'")
    left, right = line.split(":", 1)
    coords = _ints(left, lineno)
    try:
        re_, im_ = (float(tok) for tok in right.split())
    except ValueError as exc:
        raise FormatError(f"line {lineno}: expected 're im' after ':'") from exc
    if r is not None and len(coords) != r:
        raise FormatError(f"line {lineno}: dimension mismatch, expected {r} coordinates")
    if p is not None and any(not 0 <= c < p for c in coords):
        raise FormatError(f"line {lineno}: coordinates must be residues mod {p}")
    return tuple(coords), complex(re_, im_)


def dump_spectrum(spec: SparseSpectrum, comments=()) -> str:
    out = [f"# FVSSPECTRUM {spec.p} {spec.r}"] + [f"# {c}" for c in comments]
    out.extend(_entry(y, spec.terms[y]) for y in spec.support())
    return "\n".join(out) + "\n"


def _spectrum_lines(lines, p, r):
    terms = {}
    for lineno, line in lines:
        y, a = _parse_entry(line, lineno, p, r)
        terms[y] = terms.get(y, 0) + a
    return terms


def load_spectrum(text: str, p: int | None = None, r: int | None = None) -> SparseSpectrum:
    entries = []
    for lineno, line in _content_lines(text):
        if line.startswith("# FVSSPECTRUM"):
            fp, fr = _ints(line[len("# FVSSPECTRUM"):], lineno)
            if (p is not None and fp != p) or (r is not None and fr != r):
                raise FormatError(f"spectrum is over F_{fp}^{fr}, expected F_{p}^{r}")
            p, r = fp, fr
        elif not line.startswith("#"):
            entries.append((lineno, line))
    if p is None:
        raise FormatError("spectrum file does not state p")
    if r is None:
        if not entries:
            raise FormatError("cannot infer r from an empty spectrum")
        r = len(entries[0][1].split(":")[0].split())
    return SparseSpectrum(p, r, _spectrum_lines(entries, p, r))


def dump_samples(table: SampleTable, comments=()) -> str:
    out = ["FVSSAMPLES v1", f"{table.p} {table.r}"]
    if table.variant:
        out.append(f"# variant {table.variant}")
    out.extend(f"# {c}" for c in comments)
    out.extend(_entry(x, v) for x, v in zip(table.points(), table.values))
    return "\n".join(out) + "\n"


def load_samples(text: str) -> SampleTable:
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != "FVSSAMPLES v1":
        raise FormatError("missing 'FVSSAMPLES v1' header")
    if len(lines) < 2:
        raise FormatError("missing 'p r' line")
    pr = _ints(lines[1][1], lines[1][0])
    if len(pr) != 2:
        raise FormatError("second line must be 'p r'")
    p, r = pr
    variant = ""
    mapping = {}
    for lineno, line in lines[2:]:
        if line.startswith("#"):
            if line.startswith("# variant"):
                variant = line.split()[-1]
            continue
        x, v = _parse_entry(line, lineno, p, r)
        if x in mapping:
            raise FormatError(f"line {lineno}: duplicate point {x}")
        mapping[x] = v
    return SampleTable.from_dict(p, r, mapping, variant)


def sample_comments(text: str) -> list:
    """Free-form comment lines of a sample file (seed, provenance)."""
    return [l[1:].strip() for _, l in _content_lines(text) if l.startswith("#") and not l.startswith("# variant")]


# ---------------------------------------------------------------------------
# recovery report


def dump_report(report, design: SamplingDesign, comments=()) -> str:
    prm = design.params
    out = [
        "FVSRECOVERY v1",
        f"{prm.p} {prm.r} {prm.t} {prm.h} {prm.m} {prm.n}",
        f"variant {report.variant}",
    ]
    out.extend(f"# {c}" for c in comments)
    spec = report.spectrum
    out.extend(_entry(y, spec.terms[y]) for y in spec.support())
    out.append("# diagnostics")
    for j, sel in enumerate(report.selected):
        out.append(f"selected {j + 1} {len(sel)}")
    out.append(f"candidates {len(report.candidates)}")
    return "\n".join(out) + "\n"


def load_report(text: str) -> tuple:
    """Returns ``(params_tuple, variant, spectrum)``."""
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != "FVSRECOVERY v1":
        raise FormatError("missing 'FVSRECOVERY v1' header")
    params = tuple(_ints(lines[1][1], lines[1][0]))
    variant = lines[2][1].split()[-1]
    p, r = params[0], params[1]
    entries = []
    for lineno, line in lines[3:]:
        if line == "# diagnostics":
            break
        if not line.startswith("#"):
            entries.append((lineno, line))
    return params, variant, SparseSpectrum(p, r, _spectrum_lines(entries, p, r))
