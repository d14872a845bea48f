import csv

from bd.postfilter import (
    ABLATION_FILTER_SETS,
    FilterConfig,
    ablation,
    save_ablation_csv,
)


def test_ablation_rows(make_component):
    comps = [
        make_component(component_id=1),
        make_component(component_id=2, major=20.0, minor=2.0),
        make_component(component_id=3, edge=0.0),
    ]
    rows = ablation(comps, FilterConfig())

    assert len(rows) == len(ABLATION_FILTER_SETS)
    by_name = {row.filters: (row.kept, row.rejected) for row in rows}
    assert by_name == {
        "none": (3, 0),
        "axis": (2, 1),
        "axis+area": (2, 1),
        "axis+area+edge": (1, 2),
        "area": (2, 1),
        "edge": (2, 1),
    }


def test_ablation_ignores_enabled_flags(make_component):
    comps = [make_component(edge=0.0)]
    rows = ablation(comps, FilterConfig(edge_enabled=False))
    assert {row.filters: row.kept for row in rows}["edge"] == 0


def test_save_ablation_csv(tmp_path, make_component):
    rows = ablation([make_component()], FilterConfig())
    path = save_ablation_csv(rows, tmp_path / "ablation.csv")

    with open(path, newline="") as f:
        table = list(csv.reader(f))
    assert table[0] == ["filters", "kept", "rejected"]
    assert table[1] == ["none", "1", "0"]
    assert len(table) == len(ABLATION_FILTER_SETS) + 1
