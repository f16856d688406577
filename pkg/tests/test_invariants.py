import random
from itertools import permutations

import pytest

from integrability import corpus
from integrability.diagram import parse_gauss
from integrability.invariants import (
    component_classes,
    curvatura_integra_mod2,
    linking_matrix,
    relative_class,
    seifert_circles,
    seifert_normal_class,
    si_link_verdict,
    whitney_number,
)
from integrability.verdicts import Tri
from movegen import random_sequence

TREFOIL = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+")
HOPF = parse_gauss("(O1+ U2+);(U1+ O2+)")

# Genus of each corpus link, from standard knot and link tables.
TABLE_GENUS = {
    "unknot": 0,
    "trefoil": 1,
    "figure_eight": 1,
    "hopf": 0,
    "whitehead": 1,
    "borromean": 1,
}


def test_linking_matrix_examples():
    assert linking_matrix(HOPF).tolist() == [[0, 1], [1, 0]]
    assert linking_matrix(corpus.load("split_unlink")).tolist() == [[0, 0], [0, 0]]
    assert linking_matrix(TREFOIL).tolist() == [[3]]


def test_whitney_examples():
    assert whitney_number(corpus.load("unknot"), 0) == 0
    assert whitney_number(TREFOIL, 0) == 3
    assert whitney_number(corpus.load("figure_eight"), 0) == 0


def test_curvatura_examples():
    assert curvatura_integra_mod2(corpus.load("unknot"), 0) == 1
    assert curvatura_integra_mod2(TREFOIL, 0) == 0
    assert curvatura_integra_mod2(corpus.load("figure_eight"), 0) == 1


def test_relative_class_examples():
    assert relative_class(corpus.load("unknot"), 0) == 0
    assert relative_class(TREFOIL, 0) == 3
    assert relative_class(HOPF, 0) == 1


def test_seifert_normal_class_examples():
    for name in ("unknot", "trefoil", "figure_eight"):
        assert seifert_normal_class(corpus.load(name), 0) == 1
    assert seifert_normal_class(HOPF, 0) == 0
    borromean = corpus.load("borromean")
    assert [seifert_normal_class(borromean, i) for i in range(3)] == [1, 1, 1]


def test_si_examples():
    assert si_link_verdict(HOPF).value("SI") is Tri.TRUE
    assert si_link_verdict(TREFOIL).value("SI") is Tri.FALSE
    assert si_link_verdict(corpus.load("borromean")).value("SI") is Tri.FALSE
    assert si_link_verdict(HOPF).value("WI") is Tri.TRUE


def test_si_verdict_cites_its_inputs():
    hit = si_link_verdict(HOPF)["SI"].chain[0]
    assert dict(hit.inputs) == {"seifert_normal_class[0]": "0", "seifert_normal_class[1]": "0"}


def test_circle_examples():
    assert seifert_circles(corpus.load("unknot")).circle_count == 1
    assert seifert_circles(TREFOIL).circle_count == 2
    assert seifert_circles(HOPF).circle_count == 2


@pytest.mark.parametrize("name", sorted(TABLE_GENUS))
def test_circles_give_table_genus(name):
    """Every corpus diagram is alternating, so Seifert's surface has minimal genus."""
    d = corpus.load(name)
    chi = seifert_circles(d).circle_count - d.crossing_count
    assert (2 - chi - len(d.components)) // 2 == TABLE_GENUS[name]


@pytest.mark.parametrize("name", corpus.NAMES)
def test_circles_partition_the_arcs(name):
    d = corpus.load(name)
    flat = [arc for circle in seifert_circles(d).circles for arc in circle]
    expected = [(ci, j) for ci, comp in enumerate(d.components) for j in range(max(len(comp), 1))]
    assert sorted(flat) == sorted(expected)


def test_bad_component_index():
    for fn in (whitney_number, curvatura_integra_mod2, relative_class, seifert_normal_class):
        with pytest.raises(IndexError):
            fn(HOPF, 2)


def test_component_classes_match_single_queries():
    d = corpus.load("whitehead")
    for c in component_classes(d):
        assert c.whitney == whitney_number(d, c.index)
        assert c.curvatura_integra_mod2 == curvatura_integra_mod2(d, c.index)
        assert c.relative_class == relative_class(d, c.index)
        assert c.seifert_normal_class == seifert_normal_class(d, c.index)


def _walk(seed, sequences=30):
    rng = random.Random(seed)
    for name in corpus.NAMES:
        start = corpus.load(name)
        for _ in range(sequences):
            for _, _, after in random_sequence(start, rng, rng.randint(1, 6)):
                yield after


def test_properties_under_random_moves():
    for d in _walk("invariants"):
        lm = linking_matrix(d)
        assert lm.tolist() == [list(r) for r in zip(*lm.entries)]
        circles = seifert_circles(d).circle_count
        assert circles >= 1
        # Euler characteristic of the Seifert surface has the parity of its boundary count
        assert (circles - d.crossing_count - len(d.components)) % 2 == 0


@pytest.mark.parametrize("name", ["hopf", "whitehead", "borromean", "split_unlink"])
def test_si_ignores_labels_and_component_order(name):
    d = corpus.load(name)
    expected = si_link_verdict(d).value("SI")
    shift = {c: c + 100 for c in d.crossings}
    assert si_link_verdict(d.relabeled(shift)).value("SI") is expected
    for order in permutations(range(len(d.components))):
        assert si_link_verdict(d.reordered(order)).value("SI") is expected


def test_reorder_permutes_linking_matrix():
    d = corpus.load("whitehead")
    lm = linking_matrix(d)
    swapped = linking_matrix(d.reordered((1, 0)))
    assert swapped[0, 1] == lm[1, 0]
    assert swapped.whitney_numbers() == tuple(reversed(lm.whitney_numbers()))
