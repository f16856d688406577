import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from integrability import corpus
from integrability.diagram import (
    LinkDiagram,
    MoveKind,
    MoveSpec,
    Passage,
    Role,
    apply_move,
    arcs,
    deletable_bigons,
    deletable_kinks,
    parse_gauss,
    serialize_gauss,
    slidable_triangles,
    triangle_is_cyclic,
)
from integrability.errors import ConsistencyError, GaussSyntaxError, InvalidLocation
from integrability.invariants import linking_matrix, seifert_circles, whitney_number
from movegen import random_sequence, triangle_moves

TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"


def test_parse_bare_trefoil():
    d = parse_gauss(TREFOIL)
    assert len(d.components) == 1
    assert d.crossing_count == 3
    assert {r.sign for r in d.crossings.values()} == {1}


def test_parse_empty_component_is_unknot():
    d = parse_gauss("( )")
    assert len(d.components) == 1
    assert d.crossing_count == 0
    assert serialize_gauss(d) == "()"


def test_unpaired_crossing_is_inconsistent():
    with pytest.raises(ConsistencyError):
        parse_gauss("O1+ U2+")


def test_mismatched_signs_are_inconsistent():
    with pytest.raises(ConsistencyError):
        parse_gauss("(O1+ U1-)")


def test_duplicate_role_is_inconsistent():
    with pytest.raises(ConsistencyError):
        parse_gauss("(O1+ O1+)")


def test_odd_crossings_between_components_rejected():
    with pytest.raises(ConsistencyError, match="odd number"):
        parse_gauss("(O1+ O2+);(U1+ U2+ O3+ U3+ O4+);(U4+)")


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("(O1+ O1+", 1, 9),
        ("(O1+ X1+)", 1, 6),
        ("(O1+ U1+)\n;(O2+ U2+", 2, 10),
        ("(O1+ U1+) (O2+ U2+)", 1, 11),
        ("", 1, 1),
    ],
)
def test_syntax_errors_carry_positions(text, line, column):
    with pytest.raises(GaussSyntaxError) as info:
        parse_gauss(text)
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize("name", corpus.NAMES)
def test_corpus_round_trip(name):
    d = corpus.load(name)
    assert parse_gauss(serialize_gauss(d)) == d


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(corpus.NAMES), st.integers(0, 2**32), st.integers(1, 5))
def test_round_trip_after_moves(name, seed, length):
    rng = random.Random(seed)
    d = corpus.load(name)
    for _, _, d in random_sequence(d, rng, length):
        pass
    assert parse_gauss(serialize_gauss(d)) == d


def test_r1_insert_on_unknot():
    d = apply_move(parse_gauss("( )"), MoveSpec.r1_insert((0, 0), 1))
    assert d.crossing_count == 1
    assert whitney_number(d, 0) == 1


@pytest.mark.parametrize("over_first", [True, False])
@pytest.mark.parametrize("sign", [1, -1])
def test_r1_round_trip(sign, over_first):
    start = corpus.load("trefoil")
    d = apply_move(start, MoveSpec.r1_insert((0, 2), sign, over_first))
    new = d.next_crossing_id() - 1
    assert new in deletable_kinks(d)
    assert apply_move(d, MoveSpec.r1_delete(new)) == start


def test_r1_delete_without_kink():
    with pytest.raises(InvalidLocation):
        apply_move(corpus.load("trefoil"), MoveSpec.r1_delete(1))


def test_r1_delete_unknown_crossing():
    with pytest.raises(InvalidLocation):
        apply_move(corpus.load("trefoil"), MoveSpec.r1_delete(99))


def test_r2_between_split_components_keeps_linking():
    d = corpus.load("split_unlink")
    after = apply_move(d, MoveSpec.r2_insert((0, 0), (1, 0), 1, True))
    assert after.crossing_count == 2
    assert sorted(r.sign for r in after.crossings.values()) == [-1, 1]
    assert linking_matrix(after) == linking_matrix(d)


@pytest.mark.parametrize("parallel", [True, False])
def test_r2_round_trip(parallel):
    start = corpus.load("hopf")
    d = apply_move(start, MoveSpec.r2_insert((0, 1), (1, 0), -1, parallel))
    a, b = d.next_crossing_id() - 2, d.next_crossing_id() - 1
    assert (a, b) in deletable_bigons(d) or (b, a) in deletable_bigons(d)
    assert apply_move(d, MoveSpec.r2_delete(a, b)) == start


def test_r2_delete_needs_opposite_signs():
    with pytest.raises(InvalidLocation):
        apply_move(corpus.load("hopf"), MoveSpec.r2_delete(1, 2))


def test_bad_arc_location():
    with pytest.raises(InvalidLocation):
        apply_move(corpus.load("hopf"), MoveSpec.r1_insert((5, 0), 1))
    with pytest.raises(InvalidLocation):
        apply_move(corpus.load("hopf"), MoveSpec.r1_insert((0, 7), 1))


def test_r3_on_non_triangle():
    with pytest.raises(InvalidLocation):
        apply_move(corpus.load("trefoil"), MoveSpec.r3_slide(1, 2, 3))


def _find_triangle(seed):
    rng = random.Random(seed)
    d = corpus.load("unknot")
    for _ in range(50):
        steps = triangle_moves(apply_move(d, MoveSpec.r1_insert((0, 0), 1)), rng)
        if steps and slidable_triangles(steps[-1][1]):
            return steps[-1][1]
    pytest.skip("no triangle built")


@pytest.mark.parametrize("seed", range(5))
def test_r3_is_an_involution(seed):
    d = _find_triangle(seed)
    tri = slidable_triangles(d)[0]
    once = apply_move(d, MoveSpec.r3_slide(*tri))
    assert once != d
    assert sorted(tri) in [sorted(t) for t in slidable_triangles(once)]
    assert apply_move(once, MoveSpec.r3_slide(*tri)) == d


def test_move_kind_names():
    assert [k.value for k in MoveKind] == ["R1Insert", "R1Delete", "R2Insert", "R2Delete", "R3Slide"]


def test_relabel_and_reorder():
    d = corpus.load("hopf")
    relabeled = d.relabeled({1: 10, 2: 20})
    assert set(relabeled.crossings) == {10, 20}
    swapped = d.reordered((1, 0))
    assert swapped.components == (d.components[1], d.components[0])


def test_passage_text():
    assert str(Passage(3, Role.UNDER, -1)) == "U3-"


def test_diagrams_are_hashable_values():
    assert len({corpus.load("hopf"), parse_gauss("(O1+ U2+);(U1+ O2+)")}) == 1
    assert isinstance(corpus.load("hopf"), LinkDiagram)


def _walk(seed, names=corpus.NAMES, sequences=40):
    rng = random.Random(seed)
    for name in names:
        start = corpus.load(name)
        for _ in range(sequences):
            yield from random_sequence(start, rng, rng.randint(1, 6))


def test_moves_preserve_component_count():
    for before, _, after in _walk("components"):
        assert len(after.components) == len(before.components)


def test_circle_count_changes():
    """R1 adds or removes exactly one circle. A braid-like R3 slide keeps the
    count; a cyclic one (all three strands turning the same way) can change it
    by two, as can R2."""
    seen_cyclic_change = False
    for before, move, after in _walk("circles"):
        delta = seifert_circles(after).circle_count - seifert_circles(before).circle_count
        if move.kind is MoveKind.R1_INSERT:
            assert delta == 1
        elif move.kind is MoveKind.R1_DELETE:
            assert delta == -1
        elif move.kind is MoveKind.R3_SLIDE:
            if triangle_is_cyclic(before, move.location):
                assert delta in (-2, 0, 2)
                seen_cyclic_change |= delta != 0
            else:
                assert delta == 0
        else:
            assert delta in (-2, 0, 2)
    assert seen_cyclic_change


def test_arcs_cover_every_passage():
    d = corpus.load("borromean")
    assert len(arcs(d)) == sum(len(c) for c in d.components)
    assert arcs(corpus.load("split_unlink")) == [(0, 0), (1, 0)]
