from .detect import register_detect

__all__ = ["register_detect"]
