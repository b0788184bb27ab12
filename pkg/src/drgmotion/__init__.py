"""Parameters, spectra and motion lower bounds for distance-regular graphs."""
from .errors import DRGError
from .params import IntersectionArray, derive_parameters, parse_array
from .spectrum import Spectrum, eigen_spectrum

__version__ = "0.1.0"

__all__ = ["DRGError", "IntersectionArray", "Spectrum", "derive_parameters", "eigen_spectrum", "parse_array"]
