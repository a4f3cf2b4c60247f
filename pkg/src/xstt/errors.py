"""Exception hierarchy shared by the library and the CLI."""


class XsttError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(XsttError, ValueError):
    """Plane or mosaic dimensions are invalid or mismatched."""


class RangeError(XsttError, ValueError):
    """Sample values fall outside the range allowed by the bit depth."""


class ConfigError(XsttError, ValueError):
    """Unsupported or inconsistent transform configuration."""


class FormatError(XsttError, OSError):
    """A PGM or SSQ file could not be parsed."""
