"""Plots, plot maps, the lentile classifier, and operator lifting.

A plot values the nodes of a transition structure in a finite space
through a surjective map sigma.  Lifting pushes the structure's box and
diamond through sigma onto the open sets: the lift of an open U is the
largest open whose sigma-preimage lands inside the operator applied to
sigma^-1(U).  The lifted pair always satisfies the bed laws, which this
module re-verifies on every construction.
"""

from .lattice import FrameMorphism
from .topology import ContinuousMap, set_name, topology_frame
from .transition import NodeMap


class PlotError(ValueError):
    pass


class ValuationNotTotal(PlotError):
    pass


class ValuationNotSurjective(PlotError):
    pass


class NotLentile(PlotError):
    pass


class PostconditionFailure(RuntimeError):
    """A law that holds for every valid input failed; an implementation bug."""


class Plot:
    """A transition structure valued in a finite space.

    Valuations are required to be surjective; harvesting can produce
    plots with unrooted points, which are admitted internally and
    recorded in unrooted_points.
    """

    def __init__(self, structure, space, valuation, _allow_unrooted=False):
        self.structure = structure
        self.space = space
        self.valuation = dict(valuation)
        for n in structure.nodes:
            if n not in self.valuation:
                raise ValuationNotTotal("no value for node %r" % (n,))
        for n, p in self.valuation.items():
            if p not in space.full:
                raise PlotError("value %r of node %r is not a point" % (p, n))
        rooted = frozenset(self.valuation[n] for n in structure.nodes)
        self.unrooted_points = space.full - rooted
        if self.unrooted_points and not _allow_unrooted:
            raise ValuationNotSurjective(
                "points %r are not hit" % (sorted(self.unrooted_points, key=str),))

    @property
    def surjective(self):
        return not self.unrooted_points

    def __eq__(self, other):
        if not isinstance(other, Plot):
            return NotImplemented
        return (self.structure == other.structure and self.space == other.space
                and self.valuation == other.valuation)

    def __repr__(self):
        return "Plot(%d nodes over %d points)" % (
            len(self.structure.nodes), len(self.space.points))


def validate_plot(structure, space, valuation):
    """Build a Plot, insisting the valuation is total and surjective."""
    return Plot(structure, space, valuation)


class PlotMap:
    """A node map and a continuous point map with a commuting square."""

    def __init__(self, source, target, node_map, point_map):
        self.source = source
        self.target = target
        self.node_map = node_map
        self.point_map = point_map

    def __eq__(self, other):
        if not isinstance(other, PlotMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.node_map == other.node_map
                and self.point_map == other.point_map)

    def __repr__(self):
        return "PlotMap(%r -> %r)" % (self.source, self.target)


def identity_plot_map(plot):
    nm = NodeMap(plot.structure, plot.structure,
                 {n: n for n in plot.structure.nodes})
    pm = ContinuousMap(plot.space, plot.space, {p: p for p in plot.space.points})
    return PlotMap(plot, plot, nm, pm)


def compose_plot_maps(outer, inner):
    """outer after inner; inner's target must be outer's source."""
    if inner.target != outer.source:
        raise PlotError("maps do not compose")
    nm = NodeMap(inner.source.structure, outer.target.structure,
                 {n: outer.node_map.mapping[inner.node_map.mapping[n]]
                  for n in inner.source.structure.nodes})
    pm = ContinuousMap(inner.point_map.source, outer.point_map.target,
                       {p: outer.point_map.mapping[inner.point_map.mapping[p]]
                        for p in inner.point_map.source.points})
    return PlotMap(inner.source, outer.target, nm, pm)


def _successor_images(structure, valuation):
    """Per-node valuation image of the successor set, shared where possible."""
    cache = {}
    out = {}
    for n in structure.nodes:
        s = structure.succ[n]
        key = id(s)
        mask = cache.get(key)
        if mask is None:
            mask = frozenset(valuation[x] for x in s)
            cache[key] = mask
        out[n] = mask
    return out


def classify_plot_map(m):
    """Classify a candidate plot map.

    Reports whether the square commutes (is_plot_map), and for genuine
    plot maps whether each target transition out of an image node lands,
    valued, below some valued source successor (up_condition), inside
    every open neighbourhood's reach (minus_condition), and inside the
    lens closure of the valued successor image (is_lentile).  The three
    verdicts are computed along separate routes; lentile agrees with the
    conjunction of the other two.
    """
    src, tgt = m.source, m.target
    sigma, tau = src.valuation, tgt.valuation
    Phi, phi = m.node_map.mapping, m.point_map.mapping
    report = {"is_plot_map": True, "up_condition": None,
              "minus_condition": None, "is_lentile": None, "witnesses": {}}
    for n in src.structure.nodes:
        if phi[sigma[n]] != tau[Phi[n]]:
            report["is_plot_map"] = False
            report["witnesses"]["square"] = n
            return report

    T = tgt.space
    order = T.specialization()
    opens = T.sorted_opens()
    src_img = _successor_images(src.structure, sigma)
    tgt_img = _successor_images(tgt.structure, tau)

    phi_img = {}      # source-point mask -> its image in T
    lens_memo = {}
    verdicts = {}     # (image set, target successor mask) -> (up, minus, lens, bad)
    up = minus = lentile = True

    def locate(P, bad_point):
        # concrete witness transition: a successor of Phi(P) valued at bad_point
        for R in sorted(tgt.structure.succ[Phi[P]], key=str):
            if tau[R] == bad_point:
                return R
        raise AssertionError("witness vanished")

    for P in src.structure.nodes:
        W = src_img[P]
        E = phi_img.get(W)
        if E is None:
            E = frozenset(phi[s] for s in W)
            phi_img[W] = E
        W2 = tgt_img[Phi[P]]
        key = (E, W2)
        got = verdicts.get(key)
        if got is None:
            up_ok = minus_ok = lens_ok = True
            bad = {}
            for r in sorted(W2, key=str):
                if up_ok and not any((s, r) in order for s in E):
                    up_ok = False
                    bad["up"] = r
                if minus_ok:
                    for V in opens:
                        if r in V and not (V & E):
                            minus_ok = False
                            bad["minus"] = (r, V)
                            break
            lens_set = lens_memo.get(E)
            if lens_set is None:
                lens_set = T.lens(E)
                lens_memo[E] = lens_set
            if not W2 <= lens_set:
                lens_ok = False
                bad["lens"] = sorted(W2 - lens_set, key=str)[0]
            got = (up_ok, minus_ok, lens_ok, bad)
            verdicts[key] = got
        up_ok, minus_ok, lens_ok, bad = got
        if not up_ok and up:
            up = False
            report["witnesses"]["up"] = (P, locate(P, bad["up"]))
        if not minus_ok and minus:
            minus = False
            r, V = bad["minus"]
            report["witnesses"]["minus"] = (P, locate(P, r), set_name(V))
        if not lens_ok and lentile:
            lentile = False
            report["witnesses"]["lentile"] = (P, locate(P, bad["lens"]))

    report["up_condition"] = up
    report["minus_condition"] = minus
    report["is_lentile"] = lentile
    return report


class LiftedBed:
    """The topology of a plot's space furnished with the lifted operators."""

    def __init__(self, frame, box_sigma, diamond_sigma, space, surjective):
        self.frame = frame
        self.box_sigma = box_sigma          # open name -> open name
        self.diamond_sigma = diamond_sigma
        self.space = space
        self.surjective = surjective


def lift_operators(plot):
    """Lift the structure's box/diamond through the valuation onto opens.

    The lift of U under box is the union of the opens V with
    sigma^-1(V) inside box(sigma^-1(U)); likewise for diamond.  The
    defining biconditional is re-verified for every open pair, the bed
    laws are asserted, and the valuation preimage is checked to be lax
    over both operators.  Any failure raises PostconditionFailure.
    """
    space = plot.space
    frame = topology_frame(space)
    st = plot.structure
    sigma = plot.valuation
    node_img = _successor_images(st, sigma)

    imgs_by_point = {p: set() for p in space.points}
    for n in st.nodes:
        imgs_by_point[sigma[n]].add(node_img[n])
    cup = {p: frozenset().union(*imgs_by_point[p]) for p in space.points}

    opens = space.sorted_opens()
    box_table, diamond_table = {}, {}
    eligible_box, eligible_diamond = {}, {}
    for U in opens:
        BU = frozenset(p for p in space.points if cup[p] <= U)
        DU = frozenset(p for p in space.points
                       if all(m & U for m in imgs_by_point[p]))
        eligible_box[U] = BU
        eligible_diamond[U] = DU
        box_table[set_name(U)] = set_name(space.interior(BU))
        diamond_table[set_name(U)] = set_name(space.interior(DU))

    def fail(msg):
        raise PostconditionFailure("lift_operators on %r: %s" % (plot, msg))

    fr = frame
    for U in opens:
        boxU = fr.set_of(box_table[set_name(U)])
        diaU = fr.set_of(diamond_table[set_name(U)])
        for V in opens:
            if (V <= eligible_box[U]) != (V <= boxU):
                fail("box biconditional fails at U=%s V=%s"
                     % (set_name(U), set_name(V)))
            if (V <= eligible_diamond[U]) != (V <= diaU):
                fail("diamond biconditional fails at U=%s V=%s"
                     % (set_name(U), set_name(V)))
        # the preimage of the lifted value must itself be eligible (laxity)
        if not boxU <= eligible_box[U]:
            fail("preimage not lax over box at %s" % set_name(U))
        if not diaU <= eligible_diamond[U]:
            fail("preimage not lax over diamond at %s" % set_name(U))

    if len(st.nodes) <= 64 and len(opens) <= 64:
        _recheck_lift_nodewise(plot, frame, box_table, diamond_table, fail)

    top = set_name(space.full)
    if box_table[top] != top:
        fail("box does not preserve the top open")
    if plot.surjective and diamond_table[set_name(frozenset())] != set_name(frozenset()):
        fail("diamond of the empty open is not empty")
    for U in opens:
        for V in opens:
            nU, nV = set_name(U), set_name(V)
            meet = set_name(U & V)
            if box_table[meet] != set_name(fr.set_of(box_table[nU])
                                           & fr.set_of(box_table[nV])):
                fail("box does not preserve the meet of %s and %s" % (nU, nV))
            if U <= V and not fr.set_of(diamond_table[nU]) <= fr.set_of(diamond_table[nV]):
                fail("diamond not monotone on %s <= %s" % (nU, nV))
            mixed = fr.set_of(box_table[nU]) & fr.set_of(diamond_table[nV])
            if not mixed <= fr.set_of(diamond_table[meet]):
                fail("mixed law fails on %s, %s" % (nU, nV))

    return LiftedBed(frame, box_table, diamond_table, space, plot.surjective)


def _recheck_lift_nodewise(plot, frame, box_table, diamond_table, fail):
    # small instances: recompute every membership from the raw definitions
    st, sigma, space = plot.structure, plot.valuation, plot.space
    inv = {V: frozenset(n for n in st.nodes if sigma[n] in V)
           for V in space.opens}
    for U in space.opens:
        box_nodes = frozenset(n for n in st.nodes if st.succ[n] <= inv[U])
        dia_nodes = frozenset(n for n in st.nodes if st.succ[n] & inv[U])
        best_box = [V for V in space.opens if inv[V] <= box_nodes]
        best_dia = [V for V in space.opens if inv[V] <= dia_nodes]
        if frozenset().union(*best_box) != frame.set_of(box_table[set_name(U)]):
            fail("nodewise box recheck fails at %s" % set_name(U))
        if frozenset().union(*best_dia) != frame.set_of(diamond_table[set_name(U)]):
            fail("nodewise diamond recheck fails at %s" % set_name(U))


def functor_G_object(plot):
    """The garden of a plot: its topology under the lifted operators,
    covered by the identity frame morphism."""
    from . import garden as garden_mod
    cached = plot.__dict__.get("_garden_of")
    if cached is not None:
        return cached
    lifted = lift_operators(plot)
    bed = garden_mod.Bed(lifted.frame, dict(lifted.box_sigma),
                         dict(lifted.diamond_sigma))
    covering = {name: lifted.frame.set_of(name) for name in lifted.frame.elements}
    result = garden_mod.validate_garden(bed, plot.space, covering,
                                        max_elements=None, max_points=None)
    plot.__dict__["_garden_of"] = result
    return result


def functor_G_arrow(m):
    """Send a lentile plot map to the garden morphism it induces.

    Contravariant: a map between plots S -> T becomes a morphism from the
    garden of T to the garden of S, with the inverse-image frame map.
    Raises NotLentile when the map is not lentile.
    """
    from . import garden as garden_mod
    verdict = classify_plot_map(m)
    if not verdict["is_plot_map"]:
        raise NotLentile("square does not commute at %r"
                         % (verdict["witnesses"].get("square"),))
    if not verdict["is_lentile"]:
        raise NotLentile("map is not lentile: %r" % (verdict["witnesses"],))
    from .topology import open_frame
    frame_map = open_frame(m.point_map)
    gm = garden_mod.GardenMorphism(
        source=functor_G_object(m.target),
        target=functor_G_object(m.source),
        frame_map=frame_map,
        point_map=m.point_map,
    )
    report = garden_mod.check_garden_morphism(gm)
    if not report["passed"]:
        raise PostconditionFailure(
            "induced garden morphism fails %r" % (report,))
    return gm
