import random

import pytest

from plotgarden.lattice import (Filter, FrameMorphism, NotAFilter, NotALattice,
                                NotAPoset, FrameLawViolation,
                                check_frame_morphism, enumerate_filters,
                                filter_images, right_adjoint, validate_frame)
from plotgarden.topology import open_frame, topology_frame
from plotgarden.generators import random_space
from conftest import build_space


def chain(labels):
    pairs = [(labels[i], labels[j]) for i in range(len(labels))
             for j in range(i, len(labels))]
    return validate_frame(labels, pairs)


def test_chain_frame_basics():
    fr = chain(["0", "1", "2"])
    assert fr.bottom == "0" and fr.top == "2"
    assert fr.meet("1", "2") == "1"
    assert fr.join("0", "1") == "1"
    assert fr.le("0", "2") and not fr.le("2", "0")
    assert fr.meet_all([]) == "2"
    assert fr.join_all([]) == "0"
    assert fr.up("1") == frozenset(["1", "2"])
    assert fr.down("1") == frozenset(["0", "1"])


def test_not_a_poset():
    with pytest.raises(NotAPoset):
        validate_frame(["a", "b"], [("a", "a"), ("b", "b"),
                                    ("a", "b"), ("b", "a")])


def test_not_a_lattice():
    # two maximal elements, no top
    with pytest.raises(NotALattice):
        validate_frame(["a", "b"], [("a", "a"), ("b", "b")])


def test_distributivity_checked():
    # diamond lattice M3: three incomparable middles
    els = ["0", "x", "y", "z", "1"]
    pairs = [(e, e) for e in els]
    pairs += [("0", e) for e in els] + [(e, "1") for e in els]
    with pytest.raises(FrameLawViolation):
        validate_frame(els, pairs)


def test_frame_morphism_check_and_violations():
    two = chain(["0", "1"])
    three = chain(["0", "m", "1"])
    verdict = check_frame_morphism({"0": "0", "m": "1", "1": "1"}, three, two)
    assert verdict["is_frame_morphism"] and verdict["is_surjective"]

    verdict = check_frame_morphism({"0": "1", "m": "0", "1": "1"}, three, two)
    assert not verdict["is_frame_morphism"]
    assert verdict["violations"]


def test_right_adjoint_galois_property():
    from plotgarden.topology import ContinuousMap, validate_space
    for i in range(25):
        rng = random.Random("galois:%d" % i)
        target = random_space(rng, ["u", "v", "w"])
        points = ["a", "b", "c"]
        mapping = {p: rng.choice(sorted(target.points)) for p in points}
        opens = {frozenset(p for p in points if mapping[p] in V)
                 for V in target.opens}
        source = validate_space(points, opens)
        f = open_frame(ContinuousMap(source, target, mapping))
        fstar = right_adjoint(f)
        for a in f.source.elements:
            for b in f.target.elements:
                assert f.target.le(f(a), b) == f.source.le(a, fstar[b])


def test_filters_are_principal_and_complete():
    fr = topology_frame(build_space(["a", "b"],
                                    [[], ["a"], ["b"], ["a", "b"]]))
    filters = enumerate_filters(fr)
    assert len(filters) == len(fr.elements)
    gens = {f.generator for f in filters}
    assert gens == set(fr.elements)
    # the improper filter generated by bottom is included
    assert fr.bottom in gens
    for f in filters:
        assert set(f.members()) == set(fr.up(f.generator))
        assert f.generator in f


def test_filter_images_direct_and_inverse():
    two = chain(["0", "1"])
    three = chain(["0", "m", "1"])
    f = FrameMorphism(three, two, {"0": "0", "m": "1", "1": "1"})
    inv = filter_images(f, Filter(two, "1"), "inverse")
    assert inv.generator == "m"
    direct = filter_images(f, Filter(three, "m"), "direct")
    assert direct.generator == "1"


def test_inverse_image_of_non_morphism_is_rejected():
    square = topology_frame(build_space(["a", "b"],
                                        [[], ["a"], ["b"], ["a", "b"]]))
    two = chain(["0", "1"])
    broken = FrameMorphism(square, two,
                           {"{}": "0", "{a}": "1", "{b}": "1", "{a,b}": "1"})
    with pytest.raises(NotAFilter):
        filter_images(broken, Filter(two, "1"), "inverse")
