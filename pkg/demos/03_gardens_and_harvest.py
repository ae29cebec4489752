"""Grow every candidate flower of a garden, then prune to the healthy ones."""

from plotgarden import (TransitionStructure, validate_space, validate_plot,
                        functor_G_object, point_filters, flower_structure,
                        harvest)

space = validate_space(["P", "Q"], [[], ["Q"], ["P", "Q"]])
structure = TransitionStructure(["P", "Q"], edges=[("P", "Q")])
plot = validate_plot(structure, space, {"P": "P", "Q": "Q"})
garden = functor_G_object(plot)
print("garden:", garden)

for p in sorted(space.points):
    pf = point_filters(garden, p)
    print("at %s: nabla ^%s, box transfer ^%s, diamond misses %s"
          % (p, pf["nabla"].generator, pf["pbb"].generator,
             sorted(pf["pdd"])))

grown = flower_structure(garden)
print("%d candidate flowers:" % len(grown["flowers"]))
for fl in sorted(grown["flowers"], key=repr):
    print("  %s -> %s" % (fl, sorted(map(repr, grown["edges"][fl]))))

pruned = harvest(garden)
print("%d survive the harvest:" % len(pruned.structure.nodes))
for fl in pruned.structure.nodes:
    print("  %s  rooted at %s" % (fl, pruned.valuation[fl]))
