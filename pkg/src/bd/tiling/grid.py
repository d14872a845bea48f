from bd.errors import ConfigError

from .models import PatchGrid


def _origins(image_dim: int, patch_dim: int, stride: int) -> list[int]:
    last = image_dim - patch_dim
    origins = list(range(0, last + 1, stride))
    # Clamp the final patch onto the border instead of padding.
    if origins[-1] != last:
        origins.append(last)
    return origins


def plan_grid(
    image_w: int,
    image_h: int,
    patch_w: int,
    patch_h: int,
    overlap_fraction: float,
) -> PatchGrid:
    """
    Lays out overlapping patches with stride round(patch * (1 - overlap)).
    The final origin of each axis is clamped to `image - patch` so that the
    last patch ends exactly at the border.
    """
    if not 0.0 <= overlap_fraction < 1.0:
        raise ConfigError(f"Overlap must be in [0, 1), got {overlap_fraction}")
    if patch_w > image_w or patch_h > image_h:
        raise ConfigError(
            f"Patch {patch_w}x{patch_h} does not fit image {image_w}x{image_h}"
        )

    stride_x = round(patch_w * (1.0 - overlap_fraction))
    stride_y = round(patch_h * (1.0 - overlap_fraction))
    if stride_x < 1 or stride_y < 1:
        raise ConfigError(
            f"Overlap {overlap_fraction} gives a degenerate stride "
            f"({stride_x}, {stride_y})"
        )

    xs = _origins(image_w, patch_w, stride_x)
    ys = _origins(image_h, patch_h, stride_y)

    return PatchGrid(
        image_w=image_w,
        image_h=image_h,
        patch_w=patch_w,
        patch_h=patch_h,
        stride_x=stride_x,
        stride_y=stride_y,
        placements=[(x0, y0) for y0 in ys for x0 in xs],
    )
