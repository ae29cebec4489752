"""Workspace files: named finite objects in a fixed JSON schema.

A workspace holds spaces, transition structures, frames, beds, plots,
gardens, and maps, each under a name that is unique across the whole
file.  Sets are sorted string arrays, binary tables are arrays of
2-element arrays, covering tables pair an element with an array of
points.  Serialization sorts keys and arrays, so a file survives a
parse/serialize round trip byte for byte.
"""

import json

from .lattice import FrameMorphism, validate_frame
from .topology import ContinuousMap, validate_space
from .transition import NodeMap, TransitionStructure
from .plot import Plot, PlotMap, validate_plot
from .garden import Bed, GardenMorphism, validate_garden

FORMAT_VERSION = 1
CATEGORIES = ("spaces", "structures", "frames", "beds", "plots",
              "gardens", "maps")


class WorkspaceError(ValueError):
    pass


class WorkspaceSyntaxError(WorkspaceError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


class UnresolvedReference(WorkspaceError):
    pass


class ValidationError(WorkspaceError):
    pass


class Workspace:
    def __init__(self):
        self.categories = {c: {} for c in CATEGORIES}
        self.raw = {"format_version": FORMAT_VERSION}

    def add(self, category, name, obj, entry):
        for c in CATEGORIES:
            if name in self.categories[c]:
                raise ValidationError("duplicate name %r" % (name,))
        self.categories[category][name] = obj
        self.raw.setdefault(category, {})[name] = entry

    def resolve(self, name):
        for c in CATEGORIES:
            if name in self.categories[c]:
                return self.categories[c][name]
        raise UnresolvedReference("no object named %r" % (name,))

    def category_of(self, name):
        for c in CATEGORIES:
            if name in self.categories[c]:
                return c
        raise UnresolvedReference("no object named %r" % (name,))

    def names(self):
        return sorted(n for c in CATEGORIES for n in self.categories[c])


def _pairs(raw, what, name):
    out = []
    if not isinstance(raw, list):
        raise ValidationError("%s of %r must be an array" % (what, name))
    for item in raw:
        if not isinstance(item, list) or len(item) != 2:
            raise ValidationError(
                "%s of %r must hold 2-element arrays" % (what, name))
        out.append((item[0], item[1]))
    return out


def _require(entry, name, *fields):
    if not isinstance(entry, dict):
        raise ValidationError("entry %r must be an object" % (name,))
    for f in fields:
        if f not in entry:
            raise ValidationError("entry %r is missing %r" % (name, f))


def _ref(ws, category, name, owner):
    table = ws.categories[category]
    if name not in table:
        raise UnresolvedReference(
            "%r referenced by %r is not a known %s"
            % (name, owner, category.rstrip("s")))
    return table[name]


def parse_workspace(text):
    """Parse and fully validate a workspace file."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise WorkspaceSyntaxError(err.msg, line=err.lineno) from err
    if not isinstance(data, dict):
        raise WorkspaceSyntaxError("top level must be an object")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise WorkspaceSyntaxError("unsupported format_version %r" % (version,))
    for key in data:
        if key != "format_version" and key not in CATEGORIES:
            raise WorkspaceSyntaxError("unknown section %r" % (key,))

    ws = Workspace()
    for category in CATEGORIES:
        section = data.get(category, {})
        if not isinstance(section, dict):
            raise WorkspaceSyntaxError("section %r must be an object"
                                       % (category,))
        for name in sorted(section):
            entry = section[name]
            try:
                obj, canon = _LOADERS[category](ws, name, entry)
            except WorkspaceError:
                raise
            except ValueError as err:
                raise ValidationError("%s %r: %s" % (category.rstrip("s"),
                                                     name, err)) from err
            ws.add(category, name, obj, canon)
    return ws


def _load_space(ws, name, entry):
    _require(entry, name, "points", "opens")
    opens = [frozenset(o) for o in entry["opens"]]
    space = validate_space(entry["points"], opens)
    canon = {"points": sorted(map(str, space.points)),
             "opens": sorted(sorted(map(str, o)) for o in space.opens)}
    return space, canon


def _load_structure(ws, name, entry):
    _require(entry, name, "nodes", "edges")
    st = TransitionStructure(entry["nodes"],
                             edges=_pairs(entry["edges"], "edges", name))
    canon = {"nodes": sorted(map(str, st.nodes)),
             "edges": sorted([a, b] for a, b in st.edges)}
    return st, canon


def _load_frame(ws, name, entry):
    _require(entry, name, "elements", "leq")
    frame = validate_frame(entry["elements"],
                           _pairs(entry["leq"], "leq", name))
    return frame, _frame_entry(frame)


def _load_bed(ws, name, entry):
    _require(entry, name, "frame", "box", "diamond")
    frame = _ref(ws, "frames", entry["frame"], name)
    bed = Bed(frame, dict(_pairs(entry["box"], "box", name)),
              dict(_pairs(entry["diamond"], "diamond", name)))
    canon = {"frame": entry["frame"],
             "box": sorted([x, bed.box[x]] for x in frame.elements),
             "diamond": sorted([x, bed.diamond[x]] for x in frame.elements)}
    return bed, canon


def _load_plot(ws, name, entry):
    _require(entry, name, "structure", "space", "valuation")
    st = _ref(ws, "structures", entry["structure"], name)
    space = _ref(ws, "spaces", entry["space"], name)
    valuation = dict(_pairs(entry["valuation"], "valuation", name))
    if entry.get("unrooted"):
        # harvests may miss points; such plots are admitted when marked
        plot = Plot(st, space, valuation, _allow_unrooted=True)
    else:
        plot = validate_plot(st, space, valuation)
    canon = {"structure": entry["structure"], "space": entry["space"],
             "valuation": sorted([str(n), str(p)]
                                 for n, p in plot.valuation.items())}
    if entry.get("unrooted"):
        canon["unrooted"] = True
    return plot, canon


def _load_garden(ws, name, entry):
    _require(entry, name, "bed", "space", "covering")
    bed = _ref(ws, "beds", entry["bed"], name)
    space = _ref(ws, "spaces", entry["space"], name)
    covering = {}
    for elem, points in _pairs(entry["covering"], "covering", name):
        covering[elem] = frozenset(points)
    garden = validate_garden(bed, space, covering)
    canon = {"bed": entry["bed"], "space": entry["space"],
             "covering": sorted([x, sorted(map(str, covering[x]))]
                                for x in covering)}
    return garden, canon


def _point_map(name, src_space, tgt_space, pairs):
    mapping = dict(pairs)
    for p in src_space.points:
        if p not in mapping:
            raise ValidationError("point_map of %r misses %r" % (name, p))
    for p, q in mapping.items():
        if p not in src_space.points:
            raise ValidationError("point_map of %r names unknown point %r"
                                  % (name, p))
        if q not in tgt_space.points:
            raise ValidationError("point_map of %r sends %r outside the "
                                  "target space" % (name, p))
    return ContinuousMap(src_space, tgt_space, mapping)


def _load_map(ws, name, entry):
    _require(entry, name, "kind", "source", "target", "point_map")
    kind = entry["kind"]
    if kind == "plot_map":
        _require(entry, name, "node_map")
        source = _ref(ws, "plots", entry["source"], name)
        target = _ref(ws, "plots", entry["target"], name)
        nm = NodeMap(source.structure, target.structure,
                     dict(_pairs(entry["node_map"], "node_map", name)))
        pm = _point_map(name, source.space, target.space,
                        _pairs(entry["point_map"], "point_map", name))
        obj = PlotMap(source, target, nm, pm)
        canon = {"kind": kind, "source": entry["source"],
                 "target": entry["target"],
                 "node_map": sorted([str(a), str(b)]
                                    for a, b in nm.mapping.items()),
                 "point_map": sorted([str(a), str(b)]
                                     for a, b in pm.mapping.items())}
        return obj, canon
    if kind == "garden_morphism":
        _require(entry, name, "frame_map")
        source = _ref(ws, "gardens", entry["source"], name)
        target = _ref(ws, "gardens", entry["target"], name)
        mapping = dict(_pairs(entry["frame_map"], "frame_map", name))
        src_fr, tgt_fr = source.bed.frame, target.bed.frame
        for x in src_fr.elements:
            if x not in mapping:
                raise ValidationError("frame_map of %r misses %r" % (name, x))
            if mapping[x] not in tgt_fr._index:
                raise ValidationError("frame_map of %r sends %r outside the "
                                      "target frame" % (name, x))
        fm = FrameMorphism(src_fr, tgt_fr, mapping)
        pm = _point_map(name, target.space, source.space,
                        _pairs(entry["point_map"], "point_map", name))
        obj = GardenMorphism(source, target, fm, pm)
        canon = {"kind": kind, "source": entry["source"],
                 "target": entry["target"],
                 "frame_map": sorted([str(a), str(b)]
                                     for a, b in mapping.items()),
                 "point_map": sorted([str(a), str(b)]
                                     for a, b in pm.mapping.items())}
        return obj, canon
    raise ValidationError("map %r has unknown kind %r" % (name, kind))


_LOADERS = {
    "spaces": _load_space,
    "structures": _load_structure,
    "frames": _load_frame,
    "beds": _load_bed,
    "plots": _load_plot,
    "gardens": _load_garden,
    "maps": _load_map,
}


def serialize_workspace(ws):
    return json.dumps(ws.raw, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Entry builders, used to persist generated instances.

def _space_entry(space):
    return {"points": sorted(map(str, space.points)),
            "opens": sorted(sorted(map(str, o)) for o in space.opens)}


def _structure_entry(st):
    return {"nodes": [str(n) for n in st.nodes],
            "edges": sorted([str(a), str(b)] for a, b in st.edges)}


def _frame_entry(frame):
    els = [str(e) for e in frame.elements]
    leq = sorted([str(a), str(b)] for a in frame.elements
                 for b in frame.up(a))
    return {"elements": els, "leq": leq}


def instance_workspace(kind, obj, name="cex"):
    """A raw workspace dict holding one generated object and its parts."""
    raw = {"format_version": FORMAT_VERSION}

    def put(category, entry_name, entry):
        raw.setdefault(category, {})[entry_name] = entry

    def put_plot(plot, plot_name):
        put("spaces", plot_name + "_space", _space_entry(plot.space))
        put("structures", plot_name + "_nodes", _structure_entry(plot.structure))
        entry = {
            "structure": plot_name + "_nodes", "space": plot_name + "_space",
            "valuation": sorted([str(n), str(p)]
                                for n, p in plot.valuation.items())}
        if not plot.surjective:
            entry["unrooted"] = True
        put("plots", plot_name, entry)

    def put_garden(g, g_name):
        put("spaces", g_name + "_space", _space_entry(g.space))
        put("frames", g_name + "_frame", _frame_entry(g.bed.frame))
        put("beds", g_name + "_bed", {
            "frame": g_name + "_frame",
            "box": sorted([str(x), str(g.bed.box[x])]
                          for x in g.bed.frame.elements),
            "diamond": sorted([str(x), str(g.bed.diamond[x])]
                              for x in g.bed.frame.elements)})
        put("gardens", g_name, {
            "bed": g_name + "_bed", "space": g_name + "_space",
            "covering": sorted([str(x), sorted(map(str, g.alpha(x)))]
                               for x in g.bed.frame.elements)})

    if kind == "plot":
        put_plot(obj, name)
    elif kind == "garden":
        put_garden(obj, name)
    elif kind == "plot_map":
        put_plot(obj.source, name + "_src")
        put_plot(obj.target, name + "_tgt")
        put("maps", name, {
            "kind": "plot_map", "source": name + "_src",
            "target": name + "_tgt",
            "node_map": sorted([str(a), str(b)]
                               for a, b in obj.node_map.mapping.items()),
            "point_map": sorted([str(a), str(b)]
                                for a, b in obj.point_map.mapping.items())})
    elif kind == "garden_morphism":
        put_garden(obj.source, name + "_src")
        put_garden(obj.target, name + "_tgt")
        put("maps", name, {
            "kind": "garden_morphism", "source": name + "_src",
            "target": name + "_tgt",
            "frame_map": sorted([str(a), str(b)]
                                for a, b in obj.frame_map.mapping.items()),
            "point_map": sorted([str(a), str(b)]
                                for a, b in obj.point_map.mapping.items())})
    else:
        raise ValueError("unknown instance kind %r" % (kind,))
    return raw
