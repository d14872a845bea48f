import numpy as np


def relabel_raster_order(labels: np.ndarray) -> np.ndarray:
    """
    Maps the nonzero values of `labels` onto dense ids 1..N, numbered by the
    raster-scan position of their first pixel. Zero stays zero.
    """
    labels = np.asarray(labels)
    values, first = np.unique(labels.ravel(), return_index=True)
    nonzero = values != 0
    values, first = values[nonzero], first[nonzero]

    if len(values) == 0:
        return np.zeros(labels.shape, dtype=np.int64)

    order = np.argsort(first, kind="stable")
    lut = np.zeros(int(values.max()) + 1, dtype=np.int64)
    lut[values[order]] = np.arange(1, len(values) + 1)
    return lut[labels]
