import numpy as np

from bd.errors import DimensionMismatchError
from bd.labelgen import ClassMask, SemanticClass

from .models import PatchGrid, PatchStack

# Ties go to the first class listed.
TIE_PRECEDENCE = np.array(
    [SemanticClass.EDGE, SemanticClass.BERRY, SemanticClass.BACKGROUND],
    dtype=np.uint8,
)


def extract(source: np.ndarray | ClassMask, grid: PatchGrid) -> PatchStack:
    """Crops `source` (HxW or HxWxC) at every placement of `grid`."""
    array = source.labels if isinstance(source, ClassMask) else np.asarray(source)

    if array.shape[:2] != grid.shape:
        raise DimensionMismatchError(
            f"Input is {array.shape[1]}x{array.shape[0]} but grid expects "
            f"{grid.image_w}x{grid.image_h}"
        )

    patches = []
    for index in range(len(grid.placements)):
        rows, cols = grid.window(index)
        patch = array[rows, cols].copy()
        patch.flags.writeable = False
        patches.append(patch)

    return PatchStack(grid=grid, patches=patches)


def vote_counts(stack: PatchStack) -> np.ndarray:
    """Per-class vote grid with shape (3, H, W)."""
    grid = stack.grid
    votes = np.zeros((len(SemanticClass), *grid.shape), dtype=np.uint16)

    for index, patch in enumerate(stack.patches):
        rows, cols = grid.window(index)
        for semantic_class in SemanticClass:
            votes[semantic_class, rows, cols] += patch == semantic_class

    return votes


def stitch_majority(stack: PatchStack) -> ClassMask:
    """
    Reconstructs the full image mask by per-pixel majority vote over all
    covering patches, ties resolved EDGE > BERRY > BACKGROUND.
    """
    votes = vote_counts(stack)
    winner = np.argmax(votes[TIE_PRECEDENCE], axis=0)
    return ClassMask(labels=TIE_PRECEDENCE[winner])
