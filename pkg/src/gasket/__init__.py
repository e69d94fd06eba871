"""Exact first-order calculus on the Sierpinski gasket."""
from .address import Address, AddressError, canonicalize, parse_address, twin
from .harmonic import H_ANTI, H_SYM, HarmonicFunction
from .kernels import BACKEND
from .oneform import LoopCoefficients, OneForm, exact_form, family_form, loop_form, ray, tree
from .pwharmonic import PiecewiseHarmonic, from_harmonic, loop_potential

__version__ = "0.1.0"
