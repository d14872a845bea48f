import numpy as np

from enum import Enum
from scipy import ndimage

from bd.annotation import DotAnnotations, InstanceMask
from bd.errors import ConfigError
from bd.labelgen import ClassMask

from .models import Scene

BLUR_KERNELS = (3, 5, 7)
GAMMA_RANGE = (0.8, 1.2)
HFLIP_PROBABILITY = 0.5


class AugmentMode(str, Enum):
    HFLIP = "hflip"
    BLUR = "blur"
    GAMMA = "gamma"


def _to_dtype(values: np.ndarray, dtype: np.dtype) -> np.ndarray:
    if np.issubdtype(dtype, np.integer):
        info = np.iinfo(dtype)
        return np.clip(np.rint(values), info.min, info.max).astype(dtype)
    return values.astype(dtype)


def hflip(image: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(image[:, ::-1])


def blur(image: np.ndarray, k: int) -> np.ndarray:
    """k x k box blur, image borders reflected."""
    if k not in BLUR_KERNELS:
        raise ConfigError(f"Blur kernel must be one of {BLUR_KERNELS}, got {k}")
    size = (k, k) + (1,) * (image.ndim - 2)
    blurred = ndimage.uniform_filter(image.astype(np.float64), size=size)
    return _to_dtype(blurred, image.dtype)


def gamma(image: np.ndarray, g: float) -> np.ndarray:
    """
    Maps normalized intensity v to v**g. Integer images are normalized by
    their dtype maximum, float images are taken to lie in [0, 1].
    """
    low, high = GAMMA_RANGE
    if not low <= g <= high:
        raise ConfigError(f"Gamma must lie in [{low}, {high}], got {g}")

    if np.issubdtype(image.dtype, np.integer):
        scale = float(np.iinfo(image.dtype).max)
    else:
        scale = 1.0
    values = np.clip(image.astype(np.float64) / scale, 0.0, 1.0) ** g
    return _to_dtype(values * scale, image.dtype)


def augment(
    image: np.ndarray, mode: AugmentMode, value: float | None = None
) -> np.ndarray:
    """
    Applies one augmentation, `value` is the blur kernel size or the gamma
    exponent. Only HFLIP moves pixels, see `hflip_mask` and `hflip_dots`.
    """
    match AugmentMode(mode):
        case AugmentMode.HFLIP:
            return hflip(image)
        case AugmentMode.BLUR:
            if value is None or int(value) != value:
                raise ConfigError(f"Blur needs an integer kernel size, got {value}")
            return blur(image, int(value))
        case AugmentMode.GAMMA:
            if value is None:
                raise ConfigError("Gamma needs an exponent")
            return gamma(image, float(value))


def random_augment(
    image: np.ndarray, rng: np.random.Generator
) -> tuple[np.ndarray, bool]:
    """
    Horizontal flip with probability 0.5, a box blur with a kernel drawn
    from 3, 5 and 7 and a gamma shift drawn from [0.8, 1.2]. Returns the
    image and whether it was flipped.
    """
    flipped = bool(rng.random() < HFLIP_PROBABILITY)
    if flipped:
        image = hflip(image)
    image = blur(image, int(rng.choice(BLUR_KERNELS)))
    image = gamma(image, float(rng.uniform(*GAMMA_RANGE)))
    return image, flipped


def hflip_mask(mask: InstanceMask | ClassMask) -> InstanceMask | ClassMask:
    if isinstance(mask, InstanceMask):
        return InstanceMask(ids=hflip(mask.ids))
    return ClassMask(labels=hflip(mask.labels))


def hflip_dots(dots: DotAnnotations, width: int) -> DotAnnotations:
    return DotAnnotations(markers=[(width - 1 - x, y) for x, y in dots.markers])


def augment_scene(scene: Scene, rng: np.random.Generator) -> Scene:
    """Randomly augmented copy, a flip also mirrors the instances and dots."""
    image, flipped = random_augment(scene.image, rng)
    instances, dots = scene.instances, scene.dots
    if flipped:
        instances = InstanceMask(ids=hflip(instances.ids))
        dots = hflip_dots(dots, instances.width)
    return Scene(
        config=scene.config,
        instances=instances,
        dots=dots,
        image=image,
        flipped=flipped,
    )
