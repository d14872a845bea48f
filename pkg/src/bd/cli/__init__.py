from .__main__ import app

from .version import register_version

from bd.config.cli import app as config_app
from bd.detector.cli import register_detect
from bd.labelgen.cli import register_labelgen
from bd.metrics.cli import register_eval, register_plot_data
from bd.synth.cli import register_synth

__all__ = ["app"]

app.add_typer(config_app, name="config", rich_help_panel="Configuration Commands")

_ = register_synth(app)
_ = register_labelgen(app)
_ = register_detect(app)
_ = register_eval(app)
_ = register_plot_data(app)
_ = register_version(app)

if __name__ == "__main__":
    app()
