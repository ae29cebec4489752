"""Beds, gardens, garden morphisms, flowers, and the harvest functor.

A bed is a finite frame furnished with a box/diamond pair; a garden
covers a finite space with a bed through a surjective frame morphism.
Harvesting a garden grows one flower per admissible root/stalk/bloom
triple, prunes the unhealthy ones down to the greatest healthy set, and
returns the surviving flowers as a plot over the garden's space.
"""

from collections import deque

from .lattice import (Filter, FrameMorphism, check_frame_morphism,
                      filter_images, right_adjoint)
from .topology import ContinuousMap, PointUnknown, set_name, topology_frame
from .transition import NodeMap, TransitionStructure
from .plot import Plot, PlotMap, PostconditionFailure, classify_plot_map


class GardenError(ValueError):
    pass


class BedAxiomViolation(GardenError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = witness
        super().__init__("%s: %s" % (law, witness))


class CoveringNotFrameMorphism(GardenError):
    pass


class CoveringNotSurjective(GardenError):
    pass


class SizeLimit(GardenError):
    pass


class Bed:
    """A finite frame with box and diamond element maps."""

    def __init__(self, frame, box, diamond):
        self.frame = frame
        self.box = dict(box)
        self.diamond = dict(diamond)
        elems = frozenset(frame.elements)
        for table, label in ((self.box, "box"), (self.diamond, "diamond")):
            for x in frame.elements:
                if x not in table:
                    raise GardenError("%s has no value at %r" % (label, x))
                if table[x] not in elems:
                    raise GardenError("%s(%r)=%r is not an element"
                                      % (label, x, table[x]))

    def __eq__(self, other):
        if not isinstance(other, Bed):
            return NotImplemented
        return (self.frame == other.frame and self.box == other.box
                and self.diamond == other.diamond)

    def __repr__(self):
        return "Bed(%d elements)" % (len(self.frame),)


def bed_violations(bed):
    """First witness per broken bed law, as (law, witness) pairs."""
    fr = bed.frame
    out = []
    if bed.box[fr.top] != fr.top:
        out.append(("box-top", "box(%r)=%r" % (fr.top, bed.box[fr.top])))
    meet_w = mono_w = mixed_w = None
    for x in fr.elements:
        for y in fr.elements:
            m = fr.meet(x, y)
            if meet_w is None and bed.box[m] != fr.meet(bed.box[x], bed.box[y]):
                meet_w = "x=%r y=%r" % (x, y)
            if mono_w is None and fr.le(x, y) and not fr.le(
                    bed.diamond[x], bed.diamond[y]):
                mono_w = "x=%r y=%r" % (x, y)
            if mixed_w is None and not fr.le(
                    fr.meet(bed.box[x], bed.diamond[y]), bed.diamond[m]):
                mixed_w = "x=%r y=%r" % (x, y)
    if meet_w:
        out.append(("box-meet", meet_w))
    if mono_w:
        out.append(("diamond-monotone", mono_w))
    if mixed_w:
        out.append(("mixed-law", mixed_w))
    return out


class Garden:
    """A bed covering the topology of a finite space."""

    def __init__(self, bed, space, covering, alpha_sets, top_frame):
        self.bed = bed
        self.space = space
        self.covering = covering        # FrameMorphism onto the topology frame
        self.alpha_sets = alpha_sets    # element -> frozenset of points
        self.top_frame = top_frame

    def alpha(self, x):
        return self.alpha_sets[x]

    def __eq__(self, other):
        if not isinstance(other, Garden):
            return NotImplemented
        return (self.bed == other.bed and self.space == other.space
                and self.alpha_sets == other.alpha_sets)

    def __repr__(self):
        return "Garden(%d elements over %d points)" % (
            len(self.bed.frame), len(self.space.points))


def validate_garden(bed, space, covering, max_elements=32, max_points=8):
    """Check the bed axioms and the covering, then assemble a Garden.

    covering maps each bed element to an open set of points.  Instances
    beyond the size limits are rejected; pass None to lift a limit.
    """
    if max_elements is not None and len(bed.frame) > max_elements:
        raise SizeLimit("%d elements exceeds the limit of %d"
                        % (len(bed.frame), max_elements))
    if max_points is not None and len(space.points) > max_points:
        raise SizeLimit("%d points exceeds the limit of %d"
                        % (len(space.points), max_points))
    broken = bed_violations(bed)
    if broken:
        raise BedAxiomViolation(*broken[0])
    alpha_sets = {}
    for x in bed.frame.elements:
        if x not in covering:
            raise CoveringNotFrameMorphism("no open assigned to %r" % (x,))
        V = frozenset(covering[x])
        if not space.is_open(V):
            raise CoveringNotFrameMorphism(
                "value %s of %r is not open" % (set_name(V), x))
        alpha_sets[x] = V
    top_frame = topology_frame(space)
    mapping = {x: set_name(alpha_sets[x]) for x in bed.frame.elements}
    verdict = check_frame_morphism(mapping, bed.frame, top_frame)
    if not verdict["is_frame_morphism"]:
        raise CoveringNotFrameMorphism("%s at %s" % verdict["violations"][0])
    if not verdict["is_surjective"]:
        raise CoveringNotSurjective("covering misses some open set")
    morphism = FrameMorphism(bed.frame, top_frame, mapping)
    return Garden(bed, space, morphism, alpha_sets, top_frame)


class GardenMorphism:
    """A frame map between beds riding over a continuous point map.

    For a morphism from X to Y, frame_map sends X's bed into Y's and
    point_map runs the other way, from Y's space to X's.
    """

    def __init__(self, source, target, frame_map, point_map):
        self.source = source
        self.target = target
        self.frame_map = frame_map
        self.point_map = point_map

    def __eq__(self, other):
        if not isinstance(other, GardenMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.frame_map == other.frame_map
                and self.point_map == other.point_map)

    def __repr__(self):
        return "GardenMorphism(%r -> %r)" % (self.source, self.target)


def identity_garden_morphism(g):
    fm = FrameMorphism(g.bed.frame, g.bed.frame,
                       {x: x for x in g.bed.frame.elements})
    pm = ContinuousMap(g.space, g.space, {p: p for p in g.space.points})
    return GardenMorphism(g, g, fm, pm)


def compose_garden_morphisms(outer, inner):
    """outer after inner; inner's target garden must equal outer's source."""
    if inner.target != outer.source:
        raise GardenError("morphisms do not compose")
    fm = FrameMorphism(
        inner.source.bed.frame, outer.target.bed.frame,
        {x: outer.frame_map(inner.frame_map(x))
         for x in inner.source.bed.frame.elements})
    pm = ContinuousMap(
        outer.point_map.source, inner.point_map.target,
        {p: inner.point_map(outer.point_map(p))
         for p in outer.point_map.source.points})
    return GardenMorphism(inner.source, outer.target, fm, pm)


def check_garden_morphism(gm):
    """Verdicts for the frame-morphism laws, lax box/diamond, and the square.

    The operator laws are lax by definition; equality is reported
    separately in strict_box/strict_diamond since it often fails without
    being wrong, and the first properly lax element is recorded.
    """
    src, tgt = gm.source, gm.target
    f = gm.frame_map
    report = {"is_frame_morphism": None, "lax_box": True, "lax_diamond": True,
              "square": True, "strict_box": True, "strict_diamond": True,
              "witnesses": {}}
    fm = check_frame_morphism(f.mapping, src.bed.frame, tgt.bed.frame)
    report["is_frame_morphism"] = fm["is_frame_morphism"]
    if fm["violations"]:
        report["witnesses"]["frame"] = fm["violations"][0]
    tf = tgt.bed.frame
    for x in src.bed.frame.elements:
        lb, rb = f(src.bed.box[x]), tgt.bed.box[f(x)]
        if not tf.le(lb, rb):
            if report["lax_box"]:
                report["lax_box"] = False
                report["witnesses"]["lax_box"] = x
        elif lb != rb and report["strict_box"]:
            report["strict_box"] = False
            report["witnesses"]["strict_box"] = x
        ld, rd = f(src.bed.diamond[x]), tgt.bed.diamond[f(x)]
        if not tf.le(ld, rd):
            if report["lax_diamond"]:
                report["lax_diamond"] = False
                report["witnesses"]["lax_diamond"] = x
        elif ld != rd and report["strict_diamond"]:
            report["strict_diamond"] = False
            report["witnesses"]["strict_diamond"] = x
        if report["square"]:
            left = gm.point_map.preimage(src.alpha(x))
            if left != tgt.alpha(f(x)):
                report["square"] = False
                report["witnesses"]["square"] = x
    report["passed"] = (report["is_frame_morphism"] and report["lax_box"]
                        and report["lax_diamond"] and report["square"])
    return report


def point_filters(g, p):
    """The three assignments at a point: nabla, its box transfer, and the
    lower section where diamond misses the point.

    nabla(p) collects the elements whose covering contains p; pbb pulls
    that filter back through box.  Both are filters and come back
    principal; pdd is only a downward-closed set and comes back explicit.
    """
    if p not in g.space.full:
        raise PointUnknown("%r is not a point" % (p,))
    cache = g.__dict__.setdefault("_point_filters", {})
    got = cache.get(p)
    if got is not None:
        return got
    fr = g.bed.frame
    nabla = frozenset(x for x in fr.elements if p in g.alpha(x))
    pbb = frozenset(x for x in fr.elements if p in g.alpha(g.bed.box[x]))
    pdd = frozenset(x for x in fr.elements if p not in g.alpha(g.bed.diamond[x]))
    out = {}
    for members, key in ((nabla, "nabla"), (pbb, "pbb")):
        gen = fr.meet_all(members)
        if fr.up(gen) != members:
            raise PostconditionFailure(
                "%s at %r is not a principal filter" % (key, p))
        out[key] = Filter(fr, gen)
    out["pdd"] = pdd
    cache[p] = out
    return out


class Flower:
    """A root point, a stalk element, and a bloom filter."""

    __slots__ = ("root", "stalk", "bloom")

    def __init__(self, root, stalk, bloom):
        self.root = root
        self.stalk = stalk
        self.bloom = bloom

    def __eq__(self, other):
        if not isinstance(other, Flower):
            return NotImplemented
        return (self.root == other.root and self.stalk == other.stalk
                and self.bloom.generator == other.bloom.generator)

    def __hash__(self):
        return hash((self.root, self.stalk, self.bloom.generator))

    def __repr__(self):
        return "(%s;%s;^%s)" % (self.root, self.stalk, self.bloom.generator)


def _enumerate_flowers(g):
    """All flowers, via the principal characterizations, plus a root index."""
    fr = g.bed.frame
    flowers = []
    by_root = {p: [] for p in g.space.points}
    for p in g.space.points:
        pf = point_filters(g, p)
        gens = sorted(fr.down(pf["pbb"].generator), key=str)
        for a in sorted(pf["pdd"], key=str):
            for c in gens:
                fl = Flower(p, a, Filter(fr, c))
                flowers.append(fl)
                by_root[p].append(fl)
    return flowers, by_root


def _region(g, fl):
    """Roots this flower can step to: covered by the bloom generator but
    not by the stalk."""
    return g.alpha(fl.bloom.generator) - g.alpha(fl.stalk)


def flower_structure(g):
    """Every flower of the garden and the transition relation between them.

    The relation is returned as a successor map; flowers sharing a
    stalk/bloom pattern share one successor set.
    """
    flowers, by_root = _enumerate_flowers(g)
    pattern = {}
    succ = {}
    for fl in flowers:
        key = (fl.stalk, fl.bloom.generator)
        s = pattern.get(key)
        if s is None:
            s = frozenset(x for q in _region(g, fl) for x in by_root[q])
            pattern[key] = s
        succ[fl] = s
    return {"flowers": frozenset(flowers), "edges": succ}


def healthy_witness(g, flowers):
    """First health violation inside the given flower set, or None.

    The set is healthy when each member can escape every element outside
    its bloom and reach every element above its stalk through a
    transition that stays inside the set.
    """
    fr = g.bed.frame
    roots = frozenset(fl.root for fl in flowers)
    for fl in sorted(flowers, key=repr):
        W = _region(g, fl) & roots
        for x in fr.elements:
            if not fr.le(fl.bloom.generator, x) and W <= g.alpha(x):
                return (fl, x, "no transition escapes it")
            if not fr.le(x, fl.stalk) and not (g.alpha(x) & W):
                return (fl, x, "no transition reaches it")
    return None


def harvest(g):
    """Prune the flowers of a garden to the largest healthy set.

    A flower is healthy relative to the survivors when, for every element
    outside its bloom, some surviving transition target's nabla misses
    that element, and for every element not under its stalk, some
    target's nabla contains it.  Both conditions only depend on which
    roots still carry survivors, so the worklist reruns a flower's check
    only when a root it can reach loses its last survivor.  The result
    is order-independent.  Survivors are re-checked against the plain
    definition before the plot is assembled.
    """
    cached = g.__dict__.get("_harvest")
    if cached is not None:
        return cached
    fr = g.bed.frame
    flowers, by_root = _enumerate_flowers(g)
    regions = {}
    for fl in flowers:
        key = (fl.stalk, fl.bloom.generator)
        if key not in regions:
            regions[key] = _region(g, fl)
    watching = {p: [] for p in g.space.points}
    for fl in flowers:
        for p in regions[(fl.stalk, fl.bloom.generator)]:
            watching[p].append(fl)

    live_by_root = {p: set(by_root[p]) for p in g.space.points}
    live_roots = set(p for p in g.space.points if live_by_root[p])
    removed = set()
    bounds = {}  # live reachable root set -> (meet, join) health bounds

    def healthy(fl):
        W = frozenset(regions[(fl.stalk, fl.bloom.generator)] & live_roots)
        got = bounds.get(W)
        if got is None:
            m = fr.meet_all(x for x in fr.elements if W <= g.alpha(x))
            M = fr.join_all(x for x in fr.elements if not (g.alpha(x) & W))
            got = (m, M)
            bounds[W] = got
        m, M = got
        return fr.le(fl.bloom.generator, m) and fr.le(M, fl.stalk)

    queue = deque(flowers)
    queued = set(flowers)
    while queue:
        fl = queue.popleft()
        queued.discard(fl)
        if fl in removed or healthy(fl):
            continue
        removed.add(fl)
        root_set = live_by_root[fl.root]
        root_set.discard(fl)
        if not root_set:
            live_roots.discard(fl.root)
            for other in watching[fl.root]:
                if other not in removed and other not in queued:
                    queue.append(other)
                    queued.add(other)

    survivors = [fl for fl in flowers if fl not in removed]
    final_roots = frozenset(live_roots)
    for fl in survivors:
        W = regions[(fl.stalk, fl.bloom.generator)] & final_roots
        c, a = fl.bloom.generator, fl.stalk
        for x in fr.elements:
            if not fr.le(c, x) and W <= g.alpha(x):
                raise PostconditionFailure(
                    "survivor %r has no escape from %r" % (fl, x))
            if not fr.le(x, a) and not (g.alpha(x) & W):
                raise PostconditionFailure(
                    "survivor %r cannot reach %r" % (fl, x))

    succ_of_pattern = {
        key: frozenset(x for q in region & final_roots
                       for x in live_by_root[q])
        for key, region in regions.items()}
    structure = TransitionStructure(
        survivors,
        succ={fl: succ_of_pattern[(fl.stalk, fl.bloom.generator)]
              for fl in survivors})
    plot = Plot(structure, g.space, {fl: fl.root for fl in survivors},
                _allow_unrooted=True)
    g.__dict__["_harvest"] = plot
    return plot


def functor_F_report(gm):
    """Build the plot map a garden morphism induces between the two
    harvests, with one record per verified postcondition.

    Contravariant: a morphism from X to Y yields a map from Y's harvest
    to X's.  Each flower goes to (point image of root, right adjoint of
    stalk, inverse-image of bloom).  Verified: images are flowers
    (LAW.240G), transitions are preserved (LAW.240H), images survive the
    target pruning (LAW.240I), and the map is lentile (LAW.240J).
    Returns (map or None, records).
    """
    X, Y = gm.source, gm.target
    f = gm.frame_map
    fstar = right_adjoint(f)
    phi = gm.point_map
    src_plot = harvest(Y)
    tgt_plot = harvest(X)
    tgt_nodes = frozenset(tgt_plot.structure.nodes)
    frX = X.bed.frame
    records = []

    def record(law, passed, witness=None):
        records.append({"id": law, "passed": bool(passed), "witness": witness})
        return passed

    image_pattern = {}
    mapping = {}
    flower_fail = pruned = None
    for fl in src_plot.structure.nodes:
        key = (fl.stalk, fl.bloom.generator)
        got = image_pattern.get(key)
        if got is None:
            got = (fstar[fl.stalk],
                   filter_images(f, fl.bloom, "inverse").generator)
            image_pattern[key] = got
        a2, c2 = got
        img = Flower(phi(fl.root), a2, Filter(frX, c2))
        pf = point_filters(X, img.root)
        if flower_fail is None and (
                img.stalk not in pf["pdd"]
                or not frX.le(c2, pf["pbb"].generator)):
            flower_fail = img
        if pruned is None and img not in tgt_nodes:
            pruned = img
        mapping[fl] = img
    if not record("LAW.240G", flower_fail is None, flower_fail):
        return None, records

    preserved = True
    rooted = src_plot.space.full - src_plot.unrooted_points
    for (a, c), (a2, c2) in sorted(image_pattern.items()):
        target_region = X.alpha(c2) - X.alpha(a2)
        for q in sorted((Y.alpha(c) - Y.alpha(a)) & rooted, key=str):
            if phi(q) not in target_region:
                preserved = False
                record("LAW.240H", False, (a, q))
                break
        if not preserved:
            break
    if preserved:
        record("LAW.240H", True)
    else:
        return None, records

    if not record("LAW.240I", pruned is None, pruned):
        return None, records

    result = PlotMap(src_plot, tgt_plot,
                     NodeMap(src_plot.structure, tgt_plot.structure, mapping),
                     phi)
    verdict = classify_plot_map(result)
    ok = verdict["is_plot_map"] and verdict["is_lentile"]
    if not record("LAW.240J", ok, None if ok else verdict["witnesses"]):
        return None, records
    return result, records


def functor_F_arrow(gm):
    """The plot map a garden morphism induces between the two harvests.

    All four postconditions hold for every garden morphism; a violation
    indicates a bug and raises PostconditionFailure.
    """
    result, records = functor_F_report(gm)
    if result is None:
        bad = [r for r in records if not r["passed"]][0]
        raise PostconditionFailure("%s fails: %r" % (bad["id"], bad["witness"]))
    return result


def lift_report(plot):
    """Law records for a plot's lifted operators.

    Re-checks that the lifted tables satisfy the bed laws on the
    topology frame (the empty-diamond law applies exactly when the
    valuation is surjective) and that the valuation preimage is lax
    over both operators, re-derived at node level rather than through
    the point caches the lift itself uses.
    """
    from .plot import _successor_images, lift_operators

    lifted = lift_operators(plot)
    frame = lifted.frame
    bed = Bed(frame, lifted.box_sigma, lifted.diamond_sigma)
    violations = bed_violations(bed)
    empty = set_name(frozenset())
    note = None
    if plot.surjective:
        if bed.diamond[empty] != empty:
            violations.append(("diamond-empty", bed.diamond[empty]))
    elif plot.unrooted_points:
        note = ("diamond-empty not required; unrooted points %s"
                % sorted(map(str, plot.unrooted_points)))
    records = [{"id": "LAW.220G", "passed": not violations,
                "witness": violations[0] if violations else note}]

    st = plot.structure
    sigma = plot.valuation
    node_img = _successor_images(st, sigma)
    bad = None
    for U in plot.space.sorted_opens():
        uname = set_name(U)
        box_u = frame.set_of(bed.box[uname])
        dia_u = frame.set_of(bed.diamond[uname])
        for n in st.nodes:
            if sigma[n] in box_u and not node_img[n] <= U:
                bad = ("box", uname, str(n))
                break
            if sigma[n] in dia_u and not (node_img[n] & U):
                bad = ("diamond", uname, str(n))
                break
        if bad is not None:
            break
    records.append({"id": "LAW.220J", "passed": bad is None, "witness": bad})
    return records
