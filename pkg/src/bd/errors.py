class BerryDetectionError(Exception):
    """Base class for errors raised by the berry detection pipeline."""


class ConfigError(BerryDetectionError, ValueError):
    """Invalid configuration value (grid, thresholds, augmentation, ...)."""


class MalformedAnnotationError(BerryDetectionError):
    """Annotation image contains a color outside of the configured palette."""


class AnnotationValidationError(BerryDetectionError, ValueError):
    """Dot annotations violate bounds or uniqueness."""


class DimensionMismatchError(BerryDetectionError, ValueError):
    """Two rasters (or a raster and a grid) disagree on width/height."""


class UnknownInstanceError(BerryDetectionError, KeyError):
    """Requested instance id does not exist in the instance mask."""


class UnknownImageError(BerryDetectionError, KeyError):
    """Classifier backend has no reference for the requested image id."""


class MaskNotFoundError(BerryDetectionError, FileNotFoundError):
    """Precomputed prediction mask is missing on disk."""


class UndefinedFitError(BerryDetectionError, ValueError):
    """Count regression requested on degenerate input."""


class SceneGenerationError(BerryDetectionError):
    """Synthetic scene placement failed after bounded retries."""
