from .synth import register_synth

__all__ = ["register_synth"]
