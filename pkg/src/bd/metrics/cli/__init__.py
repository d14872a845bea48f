from .eval import register_eval
from .plot_data import register_plot_data

__all__ = ["register_eval", "register_plot_data"]
