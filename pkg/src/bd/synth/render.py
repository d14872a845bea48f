import numpy as np

from scipy import ndimage

from bd.annotation import InstanceMask

BACKGROUND_LEVEL = 20
RIM_LEVEL = 90
CENTER_LEVEL = 220


def render_image(instances: InstanceMask) -> np.ndarray:
    """
    Grayscale preview: dark background, every berry shaded from a dim rim
    to a bright center. Cosmetic only, no backend reads it.
    """
    image = np.full(instances.ids.shape, BACKGROUND_LEVEL, dtype=np.float64)
    for k, window in enumerate(ndimage.find_objects(instances.ids), start=1):
        if window is None:
            continue
        crop = instances.ids[window] == k
        depth = ndimage.distance_transform_edt(np.pad(crop, 1))[1:-1, 1:-1]
        shade = np.sqrt(depth / depth.max())
        image[window][crop] = (RIM_LEVEL + (CENTER_LEVEL - RIM_LEVEL) * shade)[crop]
    return np.rint(image).astype(np.uint8)
