"""Exception types shared across the package."""


class GlyphfeatError(Exception):
    """Base class for all library errors."""


class InvalidInput(GlyphfeatError, ValueError):
    """Input data violates a precondition (empty image, empty component, ...)."""


class InvalidParameter(GlyphfeatError, ValueError):
    """A parameter value is outside its allowed range."""


class InvalidContour(GlyphfeatError, ValueError):
    """Contour points are not 8-neighbors."""


class DecompositionTooDeep(GlyphfeatError, ValueError):
    """Wavelet level would shrink a dimension below the filter length."""


class InvalidSubbands(GlyphfeatError, ValueError):
    """Subband shapes are inconsistent with the declared decomposition."""


class GlyphTooLarge(GlyphfeatError, ValueError):
    """Glyph does not fit the requested frame or canvas."""


class DimensionError(GlyphfeatError, ValueError):
    """Feature vectors have mismatched lengths."""


class EmptyBase(GlyphfeatError, ValueError):
    """Classification requested against an empty feature base."""


class EmptyPage(GlyphfeatError, ValueError):
    """Page image contains no connected components."""


class ManifestError(GlyphfeatError, ValueError):
    """Dataset manifest is malformed or references unreadable files."""


class TransformClipsInk(GlyphfeatError, ValueError):
    """Geometric transform would move ink outside the image bounds."""


class ConfigError(GlyphfeatError, ValueError):
    """Benchmark configuration is malformed or inconsistent."""
