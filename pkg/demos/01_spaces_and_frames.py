"""Finite spaces, their closure operators, and the frame of opens."""

from plotgarden import validate_space, topology_frame, enumerate_filters, set_name

space = validate_space(["P", "Q"], [[], ["Q"], ["P", "Q"]])
print("points:", sorted(space.points))
print("opens: ", sorted(set_name(U) for U in space.opens))

for E in [frozenset(["P"]), frozenset(["Q"])]:
    print("closure(%s) = %s, interior = %s, lens = %s" % (
        set_name(E), set_name(space.closure(E)),
        set_name(space.interior(E)), set_name(space.lens(E))))

print("specialization pairs:", sorted(space.specialization()))

frame = topology_frame(space)
print("frame elements:", list(frame.elements))
print("meet of {Q} and {P,Q}:", frame.meet("{Q}", "{P,Q}"))

for filt in enumerate_filters(frame):
    print("filter generated by %s: %s" % (filt.generator,
                                          sorted(filt.members())))
