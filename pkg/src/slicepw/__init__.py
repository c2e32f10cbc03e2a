"""Slice regular Paley-Wiener toolkit: quaternion arithmetic, left-sided
quaternion Fourier transforms, Paley-Wiener and Hardy synthesis, reproducing
kernels and sinc sampling on the quaternions."""

from .errors import DomainError, GridError, InvariantError, TruncationError, UnitMismatchError
from .hardy import BoundaryTrace, HalfLineSpectrum, HardyFunction, RationalHardy, hardy_function
from .paley_wiener import CompactSpectrum, PWFunction, synthesize_compact
from .qft import LineSamples, Spectrum, UniformGrid, iqft_left, qft_left
from .quaternion import UNIT_I, UNIT_J, UNIT_K, ImaginaryUnit, Quaternion, SlicePoint
from .sampling import SampleSet, wks_reconstruct
from .slicefn import SliceEvaluator

__version__ = "0.1.0"

__all__ = [
    "BoundaryTrace", "CompactSpectrum", "DomainError", "GridError", "HalfLineSpectrum",
    "HardyFunction", "ImaginaryUnit", "InvariantError", "LineSamples", "PWFunction",
    "Quaternion", "RationalHardy", "SampleSet", "SliceEvaluator", "SlicePoint", "Spectrum",
    "TruncationError", "UNIT_I", "UNIT_J", "UNIT_K", "UniformGrid", "UnitMismatchError",
    "hardy_function", "iqft_left", "qft_left", "synthesize_compact", "wks_reconstruct",
]
