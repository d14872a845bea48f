from .models import PathsConfig, PipelineConfig, SynthConfig

__all__ = ["PathsConfig", "PipelineConfig", "SynthConfig"]
