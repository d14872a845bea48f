from .labelgen import register_labelgen

__all__ = ["register_labelgen"]
