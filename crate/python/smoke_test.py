"""Smoke test for the dendcat extension module.

Build it first:  pip install --no-build-isolation -e crates/python
"""

import json

import dendcat
from dendcat import Element, Plant, Tree, TriModule


def main():
    assert [dendcat.catalan(n) for n in range(1, 6)] == [1, 2, 5, 14, 42]

    trees = Tree.enumerate(3)
    assert len(trees) == 5 and trees == sorted(trees)
    gauche, droite = Tree("((o o) o)"), Tree("(o (o o))")
    assert gauche.leq(droite) and not droite.leq(gauche)
    assert str(gauche.reverse()) == str(droite)

    unit = Element("(o o)")
    assert unit.star(unit) == Element(gauche) + Element(droite)
    assert unit.compose(1, unit) == unit
    assert Element.sum_all(2).diese(Element.sum_all(2)) == Element.sum_all(3)
    assert unit.tau() == -unit
    assert droite.projective() == Element.sum_all(2)

    x = Element(3, [(trees[0], 2), (trees[4], -1)])
    assert Element.from_json(x.to_json()) == x
    assert x.theta().theta_inv() == x
    assert json.loads(x.to_json())["degree"] == 3

    assert len(Plant.trees(3)) == 12
    for t in trees:
        assert t.simple_nct().tree_of_simple() == t
    assert all(p.is_tree() for p in Plant.trees(4))

    m = TriModule("circ1", 2, 2)
    assert m.degrees == (2, 2, 3)
    assert m.check_relations() == 0

    report = json.loads(dendcat.verify("tamari.regularity", 5))
    assert report["passed"], report

    try:
        Element("(o o").star(unit)
    except ValueError:
        pass
    else:
        raise AssertionError("bad tree literal accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
