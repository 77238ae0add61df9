import pytest

from combinatorics.quiver import build_qp, gentle_relations
from combinatorics.strings import (
    BACKWARD,
    FORWARD,
    arc_curve,
    closed_subsets,
    closed_subsets_bruteforce,
    crossing_vector,
    curve_key,
    derive_curve,
    dimension_vector,
    format_subset,
    interval_decomposition,
    is_closed_subset,
    mu_counts,
    mu_counts_bruteforce,
    polygon_diagonal,
    reverse_curve,
    socle_positions,
    string_of_curve,
    top_positions,
)
from combinatorics.surface import polygon
from utils.errors import StringError

ANNULUS_SUBSETS = [
    (), (3, 5), (1, 2, 3), (3, 4, 5), (1, 2, 3, 5), (2, 3, 4, 5, 6),
    (3,), (2, 3), (2, 3, 5), (2, 3, 5, 6), (2, 3, 4, 5), (1, 2, 3, 5, 6),
    (5,), (5, 6), (3, 5, 6), (3, 4, 5, 6), (1, 2, 3, 4, 5), (1, 2, 3, 4, 5, 6),
]


class TestCurves:
    def test_octagon_curve(self, octagon_doc):
        curve = octagon_doc.curve("gamma")
        assert curve.d == 3
        assert curve.triangles == (1, 2, 3, 4)
        assert curve.start_corner == 1
        assert curve.end_corner == 1

    def test_annulus_curve(self, annulus_doc):
        curve = annulus_doc.curve("gamma")
        assert curve.d == 6
        assert curve.crossings == ("t2", "t3", "t1", "t3", "t1", "t3")

    def test_arc_form(self, octagon_doc):
        curve = octagon_doc.curve("tau3")
        assert curve.is_arc
        assert curve.d == 0
        assert curve_key(curve) == ("arc", "t3")

    @pytest.mark.parametrize("start,crossings,kind", [
        (1, [], "empty-crossings"),
        (9, ["t2"], "start-triangle"),
        (1, ["t2", "t2"], "consecutive-equal"),
        (1, ["t99"], "unknown-arc"),
        (1, ["t9"], "boundary-crossing"),
        (0, ["t2"], "not-an-edge"),
    ])
    def test_invalid_crossings(self, octagon, start, crossings, kind):
        with pytest.raises(StringError) as excinfo:
            derive_curve(octagon, start, crossings)
        assert excinfo.value.kind == kind

    def test_arc_curve_rejects_boundary(self, octagon):
        with pytest.raises(StringError):
            arc_curve(octagon, "t6")

    def test_reverse_keeps_key(self, octagon_doc, octagon):
        curve = octagon_doc.curve("gamma")
        reverse = reverse_curve(octagon, curve)
        assert reverse.crossings == ("t5", "t3", "t2")
        assert reverse.triangles == (4, 3, 2, 1)
        assert curve_key(reverse) == curve_key(curve)

    def test_crossing_vector(self, octagon_doc, octagon):
        assert crossing_vector(octagon, octagon_doc.curve("gamma")) == (0, 1, 1, 0, 1)
        assert crossing_vector(octagon, octagon_doc.curve("tau3")) == (0, 0, 0, 0, 0)

    def test_polygon_diagonals(self):
        triangulation = polygon(8)
        assert polygon_diagonal(triangulation, 8, 0, 3).arc == "t2"
        assert polygon_diagonal(triangulation, 8, 2, 6).crossings == ("t2", "t3", "t4")
        assert polygon_diagonal(triangulation, 8, 6, 2).crossings == ("t2", "t3", "t4")
        with pytest.raises(StringError):
            polygon_diagonal(triangulation, 8, 3, 4)
        with pytest.raises(StringError):
            polygon_diagonal(triangulation, 8, 0, 7)


class TestStrings:
    def test_octagon_string(self, octagon_doc, octagon):
        word = string_of_curve(octagon, octagon_doc.curve("gamma"))
        assert str(word) == "t2 <- t3 -> t5"
        assert [letter.direction for letter in word.letters] == [BACKWARD, FORWARD]
        assert word.indices == (2, 3, 5)

    def test_annulus_string(self, annulus_doc, annulus):
        word = string_of_curve(annulus, annulus_doc.curve("gamma"))
        assert str(word) == "t2 -> t3 -> t1 <- t3 -> t1 <- t3"

    def test_arc_string_is_empty(self, octagon_doc, octagon):
        word = string_of_curve(octagon, octagon_doc.curve("tau3"))
        assert word.d == 0
        assert str(word) == ""

    def test_closedness(self, annulus_doc, annulus):
        word = string_of_curve(annulus, annulus_doc.curve("gamma"))
        assert not is_closed_subset(word, (1, 3, 5))
        assert is_closed_subset(word, (1, 2, 3, 5))

    def test_octagon_subsets(self, octagon_doc, octagon):
        word = string_of_curve(octagon, octagon_doc.curve("gamma"))
        assert closed_subsets(word) == [(), (1,), (3,), (1, 3), (1, 2, 3)]

    def test_annulus_subsets(self, annulus_doc, annulus):
        word = string_of_curve(annulus, annulus_doc.curve("gamma"))
        subsets = closed_subsets(word)
        assert len(subsets) == 18
        assert set(subsets) == set(ANNULUS_SUBSETS)
        assert subsets == closed_subsets_bruteforce(word)

    def test_subsets_are_ordered_by_size(self, annulus_doc, annulus):
        subsets = closed_subsets(string_of_curve(annulus, annulus_doc.curve("gamma")))
        assert subsets == sorted(subsets, key=lambda subset: (len(subset), subset))

    def test_mu_of_final_example(self, annulus_doc, annulus):
        word = string_of_curve(annulus, annulus_doc.curve("gamma2"))
        assert mu_counts(word) == {
            (0, 0, 0): 1,
            (1, 0, 0): 1,
            (1, 0, 1): 2,
            (1, 0, 2): 1,
            (1, 1, 1): 1,
            (1, 1, 2): 1,
        }

    def test_mu_matches_bruteforce(self, annulus_doc, annulus):
        word = string_of_curve(annulus, annulus_doc.curve("gamma"))
        assert mu_counts(word) == mu_counts_bruteforce(word)
        assert sum(mu_counts(word).values()) == 18

    def test_dimension_vector(self, annulus_doc, annulus):
        word = string_of_curve(annulus, annulus_doc.curve("gamma"))
        assert dimension_vector(word, (1, 2, 3, 5)) == (2, 1, 1)

    def test_socle_and_top(self, octagon_doc, octagon):
        word = string_of_curve(octagon, octagon_doc.curve("gamma"))
        assert socle_positions(word) == [1, 3]
        assert top_positions(word) == [2]

    def test_intervals_of_closed_subsets_are_closed(self, annulus_doc, annulus):
        word = string_of_curve(annulus, annulus_doc.curve("gamma"))
        for subset in closed_subsets(word):
            for first, last in interval_decomposition(subset):
                assert is_closed_subset(word, tuple(range(first, last + 1)))

    def test_forward_pairs_avoid_relations(self, annulus_doc, annulus):
        word = string_of_curve(annulus, annulus_doc.curve("gamma"))
        forbidden = gentle_relations(build_qp(annulus))
        pairs = zip(word.letters, word.letters[1:])
        assert all((first.arrow, second.arrow) not in forbidden for first, second in pairs)

    def test_relation_in_the_word_is_rejected(self, annulus_doc, annulus, monkeypatch):
        word = string_of_curve(annulus, annulus_doc.curve("gamma"))
        composition = (word.letters[0].arrow, word.letters[1].arrow)
        monkeypatch.setattr("combinatorics.strings.gentle_relations", lambda qp: frozenset({composition}))
        with pytest.raises(StringError) as excinfo:
            string_of_curve(annulus, annulus_doc.curve("gamma"))
        assert excinfo.value.kind == "forbidden-relation"
        assert "letters 1 and 2" in excinfo.value.message


def test_interval_decomposition():
    assert interval_decomposition((1, 3, 5)) == [(1, 1), (3, 3), (5, 5)]
    assert interval_decomposition((5, 1, 2, 3)) == [(1, 3), (5, 5)]
    assert interval_decomposition(()) == []


def test_format_subset():
    assert format_subset(()) == "{}"
    assert format_subset((1, 3)) == "{1,3}"
