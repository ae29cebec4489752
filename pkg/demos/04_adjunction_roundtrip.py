"""Both unit morphisms, the round-trip laws, and naturality over a map."""

import random

from plotgarden import (TransitionStructure, validate_space, validate_plot,
                        functor_G_object, geometric_unit, algebraic_unit,
                        verify_idempotency, check_naturality,
                        random_lentile_map)

space = validate_space(["P", "Q"], [[], ["Q"], ["P", "Q"]])
structure = TransitionStructure(["P", "Q"], edges=[("P", "Q")])
plot = validate_plot(structure, space, {"P": "P", "Q": "Q"})

unit = geometric_unit(plot)
print("geometric unit sends each node to a flower:")
for n in plot.structure.nodes:
    print("  %s -> %s" % (n, unit.node_map.mapping[n]))

garden = functor_G_object(plot)
eta = algebraic_unit(garden)
print("algebraic unit reuses the covering:",
      eta.frame_map.mapping == garden.covering.mapping)

for thing in (plot, garden):
    out = verify_idempotency(thing)
    print("round trip on the %s:" % out["kind"])
    for record in out["records"]:
        print("  %s  %s" % ("PASS" if record["passed"] else "FAIL",
                            record["id"]))

m = random_lentile_map(random.Random("demo"))
out = check_naturality("geometric", m)
print("naturality over a generated map (%d -> %d nodes): %s"
      % (len(m.source.structure.nodes), len(m.target.structure.nodes),
         "PASS" if out["passed"] else "FAIL"))
