"""Exception types raised by the terrain_cwt package.

Two families exist so the CLI can map failures to exit codes:
``InputError`` covers unreadable or malformed inputs (exit code 2),
``DomainError`` covers well-formed inputs the analysis cannot act on
(exit code 1).
"""


class TerrainCwtError(Exception):
    """Base class for all package errors."""


class InputError(TerrainCwtError):
    """A file could not be read, parsed, or written."""


class DomainError(TerrainCwtError):
    """Inputs parsed fine but violate an analysis precondition."""


# -- raster parsing / I/O ---------------------------------------------------

class MissingHeaderKey(InputError):
    """Required ESRI ASCII header key absent."""


class NonRectangularBody(InputError):
    """A body row holds the wrong number of values."""


class UnparseableNumber(InputError):
    """A body token is not a number."""


class IoFailure(InputError):
    """Underlying OS-level read/write failure."""


# -- grid preconditions -----------------------------------------------------

class TooManyVoids(DomainError):
    """Fraction of nodata cells exceeds the allowed maximum."""


class ContainsNoData(DomainError):
    """Operation requires a complete raster but nodata cells remain."""


class OutOfBounds(DomainError):
    """Crop window extends past the raster bounds."""


class SubNyquistWavelength(DomainError):
    """Requested sinusoid wavelength is not representable on the grid."""


class CellSizeMismatch(DomainError):
    """Two rasters that must share a cell size do not."""


# -- wavelet / spectral -----------------------------------------------------

class NonPositiveInput(DomainError):
    """Scale or cell size must be strictly positive."""


class InvalidScaleParams(DomainError):
    """Scale ladder parameters outside their valid range."""


class ScaleTooLargeForGrid(DomainError):
    """A requested scale probes wavelengths longer than the grid extent."""


class AxisMismatch(DomainError):
    """Two spectra do not share a frequency axis."""


class AllBinsFloored(DomainError):
    """Every reference-spectrum sample sits below the division floor."""


class NoPeak(DomainError):
    """Spectrum has no interior peak to measure."""


# -- band power maps --------------------------------------------------------

class EmptyBand(DomainError):
    """No ladder scale maps into the requested frequency band."""


class WindowLargerThanGrid(DomainError):
    """Sliding analysis window exceeds the raster extent."""


class AllZeroMap(DomainError):
    """Power map has no positive value to render."""
