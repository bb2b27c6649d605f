"""Deterministic universal sampling sets and sparse Fourier recovery on F_p^r."""

from .design import SamplingDesign, build_design, exponent_set, select_parameters
from .kernels import BACKEND
from .recovery import reconstruct, reconstruct_gamma1, reconstruct_gamma2
from .spectral import SampleTable, SparseSpectrum, full_dft_oracle, synthesize_samples

__all__ = [
    "BACKEND",
    "SampleTable",
    "SamplingDesign",
    "SparseSpectrum",
    "build_design",
    "exponent_set",
    "full_dft_oracle",
    "reconstruct",
    "reconstruct_gamma1",
    "reconstruct_gamma2",
    "select_parameters",
    "synthesize_samples",
]
