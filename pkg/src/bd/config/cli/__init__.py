from .__main__ import app

from .create import register_config_create

_ = register_config_create(app)

__all__ = ["app"]
