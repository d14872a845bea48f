from .backends import (
    BackendConfig,
    BackendKind,
    ClassifierBackend,
    MaskFileBackend,
    NoisyOracleBackend,
    OracleBackend,
    classify_patch,
    classify_patches,
)
from .noise import corrupt_patch

__all__ = [
    "BackendConfig",
    "BackendKind",
    "ClassifierBackend",
    "MaskFileBackend",
    "NoisyOracleBackend",
    "OracleBackend",
    "classify_patch",
    "classify_patches",
    "corrupt_patch",
]
