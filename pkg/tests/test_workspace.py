import json
from pathlib import Path

import pytest

from plotgarden.workspace import (UnresolvedReference, ValidationError,
                                  WorkspaceSyntaxError, instance_workspace,
                                  parse_workspace, serialize_workspace)
from plotgarden.plot import classify_plot_map
from plotgarden.garden import check_garden_morphism, harvest
from plotgarden.adjunction import algebraic_unit, geometric_unit

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures.ws"


def test_fixture_file_round_trips():
    text = FIXTURES.read_text()
    ws = parse_workspace(text)
    assert serialize_workspace(ws) == text
    assert len(ws.names()) == 15
    assert ws.category_of("sierp") == "plots"
    assert ws.category_of("tight") == "maps"
    assert ws.resolve("sierp").valuation == {"P": "P", "Q": "Q"}
    with pytest.raises(UnresolvedReference):
        ws.resolve("nope")
    with pytest.raises(UnresolvedReference):
        ws.category_of("nope")


def test_fixture_objects_behave():
    ws = parse_workspace(FIXTURES.read_text())
    assert classify_plot_map(ws.resolve("tight"))["is_lentile"]
    assert not classify_plot_map(ws.resolve("homeo"))["is_lentile"]
    assert len(harvest(ws.resolve("sierp_garden")).structure.nodes) == 3


def test_syntax_errors():
    with pytest.raises(WorkspaceSyntaxError) as info:
        parse_workspace('{\n  "format_version": 1,\n}\n')
    assert "line 3" in str(info.value)
    with pytest.raises(WorkspaceSyntaxError):
        parse_workspace("[]")
    with pytest.raises(WorkspaceSyntaxError):
        parse_workspace('{"format_version": 2}')
    with pytest.raises(WorkspaceSyntaxError):
        parse_workspace(json.dumps({"format_version": 1, "shrubs": {}}))
    assert parse_workspace("{}").names() == []


def test_duplicate_names_rejected():
    raw = {"format_version": 1,
           "spaces": {"x": {"points": ["p"], "opens": [[], ["p"]]}},
           "structures": {"x": {"nodes": ["n"], "edges": []}}}
    with pytest.raises(ValidationError):
        parse_workspace(json.dumps(raw))


def test_unresolved_reference_in_entry():
    raw = {"format_version": 1,
           "plots": {"p": {"structure": "missing", "space": "missing",
                           "valuation": []}}}
    with pytest.raises(UnresolvedReference):
        parse_workspace(json.dumps(raw))


def test_unrooted_flag_round_trip():
    raw = {"format_version": 1,
           "spaces": {"sp": {"points": ["P", "Q"],
                             "opens": [[], ["Q"], ["P", "Q"]]}},
           "structures": {"st": {"nodes": ["a"], "edges": []}},
           "plots": {"pl": {"structure": "st", "space": "sp",
                            "valuation": [["a", "P"]], "unrooted": True}}}
    ws = parse_workspace(json.dumps(raw))
    plot = ws.resolve("pl")
    assert plot.unrooted_points == frozenset(["Q"])
    again = instance_workspace("plot", plot, name="pl")
    assert again["plots"]["pl"]["unrooted"] is True
    ws2 = parse_workspace(json.dumps(again))
    assert ws2.resolve("pl").unrooted_points == frozenset(["Q"])

    del raw["plots"]["pl"]["unrooted"]
    with pytest.raises(ValidationError):
        parse_workspace(json.dumps(raw))


def test_instance_round_trip_plot(sierp_plot):
    ws = parse_workspace(json.dumps(instance_workspace("plot", sierp_plot)))
    assert ws.resolve("cex") == sierp_plot


def test_instance_round_trip_garden(sierp_garden):
    raw = instance_workspace("garden", sierp_garden)
    ws = parse_workspace(json.dumps(raw))
    assert ws.resolve("cex") == sierp_garden


def test_instance_round_trip_plot_map(tight_map):
    raw = instance_workspace("plot_map", tight_map)
    ws = parse_workspace(json.dumps(raw))
    assert ws.resolve("cex") == tight_map


def test_instance_round_trip_garden_morphism(sierp_garden):
    eta = algebraic_unit(sierp_garden)
    raw = instance_workspace("garden_morphism", eta)
    ws = parse_workspace(json.dumps(raw))
    back = ws.resolve("cex")
    assert back.frame_map.mapping == eta.frame_map.mapping
    assert back.point_map.mapping == eta.point_map.mapping
    assert check_garden_morphism(back)["passed"]


def test_instance_with_flower_nodes_reloads(sierp_plot):
    unit = geometric_unit(sierp_plot)
    raw = instance_workspace("plot_map", unit)
    ws = parse_workspace(json.dumps(raw))
    back = ws.resolve("cex")
    verdict = classify_plot_map(back)
    assert verdict["is_plot_map"] and verdict["is_lentile"]
    assert "(P;{};^{Q})" in back.target.structure.nodes
