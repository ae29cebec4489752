import pytest

from plotgarden.adjunction import (algebraic_unit, check_naturality,
                                   geometric_unit, unit_report,
                                   verify_idempotency)
from plotgarden.plot import NotLentile, functor_G_arrow, identity_plot_map
from plotgarden.garden import identity_garden_morphism
from conftest import build_plot


def test_geometric_unit_on_sierpinski(sierp_plot):
    unit = geometric_unit(sierp_plot)
    assert unit.source is sierp_plot
    mapping = unit.node_map.mapping
    assert repr(mapping["P"]) == "(P;{};^{Q})"
    assert repr(mapping["Q"]) == "(Q;{P,Q};^{})"
    assert unit.point_map.mapping == {"P": "P", "Q": "Q"}
    succ = unit.target.structure.succ
    assert succ[mapping["P"]] == frozenset([mapping["Q"]])
    assert succ[mapping["Q"]] == frozenset()


def test_unit_report_geometric(sierp_plot):
    out = unit_report("geometric", sierp_plot)
    assert out["kind"] == "geometric"
    assert out["passed"]
    assert [r["id"] for r in out["records"]] == [
        "LAW.250G", "LAW.250F", "LAW.250H"]
    assert out["morphism"] is not None


def test_unit_report_algebraic(sierp_garden):
    out = unit_report("algebraic", sierp_garden)
    assert out["passed"]
    assert [r["id"] for r in out["records"]] == ["LAW.250A"]
    eta = algebraic_unit(sierp_garden)
    assert eta.source is sierp_garden
    assert eta.frame_map.mapping == sierp_garden.covering.mapping
    with pytest.raises(ValueError):
        unit_report("spatial", sierp_garden)


def test_unit_of_plot_without_edges(sierp_space):
    flat = build_plot(["a", "b"], [], sierp_space, {"a": "P", "b": "Q"})
    unit = geometric_unit(flat)
    assert repr(unit.node_map.mapping["a"]) == "(P;{P,Q};^{})"
    assert repr(unit.node_map.mapping["b"]) == "(Q;{P,Q};^{})"


def test_naturality_geometric(tight_map, homeo_map, sierp_plot):
    out = check_naturality("geometric", tight_map)
    assert out["passed"]
    assert [r["id"] for r in out["records"]] == [
        "LAW.250N.R", "LAW.250N.S", "LAW.250N.B"]
    assert check_naturality("geometric", identity_plot_map(sierp_plot))["passed"]
    with pytest.raises(NotLentile):
        check_naturality("geometric", homeo_map)
    with pytest.raises(ValueError):
        check_naturality("spatial", tight_map)


def test_naturality_algebraic(sierp_garden, tight_map):
    out = check_naturality("algebraic",
                           identity_garden_morphism(sierp_garden))
    assert out["passed"]
    assert out["records"][0]["id"] == "LAW.250C"
    assert check_naturality("algebraic", functor_G_arrow(tight_map))["passed"]


def test_idempotency_of_plot(sierp_plot):
    out = verify_idempotency(sierp_plot)
    assert out["kind"] == "plot"
    assert out["passed"]
    assert [r["id"] for r in out["records"]] == [
        "LAW.250M.LE", "LAW.250M.GE", "LAW.250L"]


def test_idempotency_of_garden(sierp_garden):
    out = verify_idempotency(sierp_garden)
    assert out["kind"] == "garden"
    assert out["passed"]
    assert [r["id"] for r in out["records"]] == [
        "LAW.250J", "LAW.250K", "LAW.250A", "LAW.250L"]
