from .models import DetectionSummary, Detector, DetectorOutput
from .overlay import render_overlay

__all__ = ["DetectionSummary", "Detector", "DetectorOutput", "render_overlay"]
