import numpy as np
import typer

from pathlib import Path
from typing_extensions import Annotated

from bd.config import SynthConfig

# Separates the augmentation stream from the scene placement stream.
AUGMENT_STREAM = 1


def synth_scene(index: int, config: SynthConfig, out_path: Path) -> int:
    """Generates and writes scene `index`, returns its berry count."""
    from bd.synth import augment_scene, generate_scene

    scene_config = config.scene_config(index)
    scene = generate_scene(scene_config)
    if config.augment:
        rng = np.random.default_rng([scene_config.seed, AUGMENT_STREAM])
        scene = augment_scene(scene, rng)
    scene.save(out_path, config.scene_name(index), group=config.group)
    return scene.n_berries


def register_synth(app: typer.Typer):
    from bd.cli.options import ConfigOption, NumProc, RootOption, VerboseOption

    @app.command(name="synth", rich_help_panel="Pipeline Commands")
    def synth(
        n_scenes: Annotated[
            int | None, typer.Option("--n-scenes", help="Number of scenes.")
        ] = None,
        seed: Annotated[
            int | None, typer.Option("--seed", help="Seed of the first scene.")
        ] = None,
        touch_probability: Annotated[
            float | None,
            typer.Option(
                "--touch-probability",
                help="Chance a berry touches or overlaps a cluster neighbor.",
            ),
        ] = None,
        group: Annotated[
            str | None,
            typer.Option("--group", help="Group label recorded for every scene."),
        ] = None,
        prefix: Annotated[
            str | None, typer.Option("--prefix", help="Scene name prefix.")
        ] = None,
        augment: Annotated[
            bool | None,
            typer.Option(
                "--augment/--no-augment",
                help="Apply random flip, blur and gamma to the rendered images.",
            ),
        ] = None,
        output_path: Annotated[
            Path | None,
            typer.Option("--output", help="Output folder, defaults to <root>."),
        ] = None,
        config_path: ConfigOption = None,
        root: RootOption = None,
        num_proc: NumProc = None,
        verbose: VerboseOption = False,
    ) -> None:
        """
        Generates synthetic berry scenes: grayscale images, color annotations,
        instance masks, dots and scene sidecars.
        """
        from functools import partial
        from rich import print as rprint

        from bd.cli.utils import (
            fail,
            load_config,
            report_failures,
            run_tasks,
            setup_logging,
        )

        setup_logging(verbose)

        try:
            config = load_config(
                config_path,
                root,
                **{
                    "synth.n_scenes": n_scenes,
                    "synth.scene.seed": seed,
                    "synth.scene.touch_probability": touch_probability,
                    "synth.group": group,
                    "synth.prefix": prefix,
                    "synth.augment": augment,
                    "num_proc": num_proc,
                },
            )
            output_path = output_path or config.paths.root
            output_path.mkdir(parents=True, exist_ok=True)
        except Exception as e:
            fail("Unable to start scene generation", e)

        task = partial(synth_scene, config=config.synth, out_path=output_path)
        indices = list(range(config.synth.n_scenes))
        results = run_tasks(task, indices, config.num_proc, "Generating scenes")
        report_failures(results)

        config.save(output_path / "config.json")
        n_berries = sum(count for _, count in results)
        rprint(
            f"✅ Wrote {len(indices)} scenes ({n_berries} berries) to {output_path}"
        )

    return synth
