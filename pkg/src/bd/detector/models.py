import imageio.v3 as iio
import json
import logging
import numpy as np

from concurrent.futures import ProcessPoolExecutor, as_completed
from enum import Enum
from pathlib import Path
from pydantic import BaseModel, Field
from tqdm.rich import tqdm

from bd.annotation import DotAnnotations, load_dots
from bd.classify import BackendConfig, ClassifierBackend, classify_patches
from bd.components import ComponentConfig, label_components, save_components_csv
from bd.errors import DimensionMismatchError
from bd.labelgen import ClassMask
from bd.postfilter import FilterConfig, FilterResult, apply_filters
from bd.tiling import GridConfig, stitch_majority

from .overlay import load_grayscale, mask_preview, render_overlay

logger = logging.getLogger(__name__)


class DetectorOutput(str, Enum):
    mask = "mask.png"
    components = "components.csv"
    rejected = "rejected.csv"
    overlay = "overlay.png"


class DetectionSummary(BaseModel):
    image_id: str
    n_components: int
    n_kept: int
    n_rejected: int


class Detector(BaseModel):
    """
    Classification workflow for whole images: tile, classify patches,
    stitch by majority vote, extract berry components and post-filter them.

    Args:
        grid: Patch size and overlap.
        components: Minimum component size.
        filters: Post-filter thresholds.
        backend: Patch classifier.
        out_path: Directory receiving `<image_id>_<output>` files.
        images_path: Optional grayscale scene images used as overlay base.
        dots_path: Optional dot annotations, missed markers are boxed.
    """

    model_config = {
        "arbitrary_types_allowed": True,
        "validate_assignment": True,
    }

    grid: GridConfig = Field(default_factory=GridConfig)
    components: ComponentConfig = Field(default_factory=ComponentConfig)
    filters: FilterConfig = Field(default_factory=FilterConfig)
    backend: BackendConfig = Field(default_factory=BackendConfig)

    out_path: Path
    images_path: Path | None = None
    dots_path: Path | None = None

    def save(self, file_path: Path | None = None) -> Path:
        if file_path is None:
            file_path = self.out_path / "detector.json"
        file_path.parent.mkdir(parents=True, exist_ok=True)
        _ = file_path.write_text(self.model_dump_json(indent=2))
        return file_path

    @classmethod
    def load(cls, file_path: Path) -> "Detector":
        with open(file_path, "r") as f:
            return cls.model_validate(json.load(f))

    def output_path(self, image_id: str, output: DetectorOutput) -> Path:
        return self.out_path / f"{image_id}_{output.value}"

    def build_backend(self, image_ids: list[str] | None = None) -> ClassifierBackend:
        return self.backend.build(image_ids)

    def image_ids(self) -> list[str]:
        return self.build_backend().image_ids()

    def detect(
        self, backend: ClassifierBackend, image_id: str
    ) -> tuple[ClassMask, FilterResult]:
        """Stitched class mask and filtered components of one image."""
        reference = backend.resolve(image_id)
        grid = self.grid.plan(reference.width, reference.height)
        stack = classify_patches(backend, image_id, grid)
        mask = stitch_majority(stack)
        comps = label_components(mask, self.components)
        result = apply_filters(comps, self.filters)
        logger.debug(
            "%s: %d patches, %d components, %d kept",
            image_id,
            len(grid.placements),
            len(comps),
            len(result.kept),
        )
        return mask, result

    def _dots(self, image_id: str, mask: ClassMask) -> DotAnnotations | None:
        if self.dots_path is None:
            return None
        path = self.dots_path / f"{image_id}.csv"
        if not path.is_file():
            return None
        return load_dots(path, mask.width, mask.height)

    def _base(self, image_id: str, mask: ClassMask) -> np.ndarray:
        if self.images_path is not None:
            path = self.images_path / f"{image_id}.png"
            if path.is_file():
                base = load_grayscale(path)
                if base.shape != mask.shape:
                    raise DimensionMismatchError(
                        f"Image {path} is {base.shape[1]}x{base.shape[0]}, mask is "
                        f"{mask.width}x{mask.height}"
                    )
                return base
        return mask_preview(mask)

    def write(self, image_id: str, mask: ClassMask, result: FilterResult) -> None:
        self.out_path.mkdir(parents=True, exist_ok=True)
        mask.save(self.output_path(image_id, DetectorOutput.mask))
        save_components_csv(
            result.kept, self.output_path(image_id, DetectorOutput.components)
        )
        save_components_csv(
            result.rejected_components,
            self.output_path(image_id, DetectorOutput.rejected),
            extra_columns={
                "reasons": ["+".join(r.reasons) for r in result.rejected]
            },
        )
        overlay = render_overlay(
            self._base(image_id, mask),
            result.kept,
            result.rejected_components,
            self._dots(image_id, mask),
        )
        iio.imwrite(self.output_path(image_id, DetectorOutput.overlay), overlay)

    def process(self, backend: ClassifierBackend, image_id: str) -> DetectionSummary:
        mask, result = self.detect(backend, image_id)
        self.write(image_id, mask, result)
        return DetectionSummary(
            image_id=image_id,
            n_components=len(result.kept) + len(result.rejected),
            n_kept=len(result.kept),
            n_rejected=len(result.rejected),
        )

    def run(
        self, image_ids: list[str] | None = None, num_proc: int = 1
    ) -> list[DetectionSummary]:
        """
        Processes `image_ids` (every image the backend knows by default).

        Args:
            image_ids: Images to process.
            num_proc: Number of processes to use. If 1, no multiprocessing is used.
        """
        if image_ids is None:
            image_ids = self.image_ids()
        image_ids = sorted(image_ids)
        summaries: list[DetectionSummary] = []

        if num_proc <= 1:
            backend = self.build_backend(image_ids)
            for image_id in tqdm(image_ids, desc="Detecting berries"):
                summaries.append(self.process(backend, image_id))
        else:
            with ProcessPoolExecutor(max_workers=num_proc) as executor:
                futures = [
                    executor.submit(_process_image, self, image_id)
                    for image_id in image_ids
                ]
                for future in tqdm(
                    as_completed(futures), total=len(futures), desc="Detecting berries"
                ):
                    summaries.append(future.result())

        return sorted(summaries, key=lambda s: s.image_id)


def _process_image(detector: Detector, image_id: str) -> DetectionSummary:
    # Workers load only the masks of their own image.
    return detector.process(detector.build_backend([image_id]), image_id)
