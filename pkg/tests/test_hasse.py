from posetsat import GroundSet, SetFamily, cover_edges, emit_hasse

from conftest import family


def test_chain_covers():
    fam = family(2, [], [1], [1, 2])
    edges = cover_edges(fam)
    assert len(edges) == 2
    dot = emit_hasse(fam)
    assert dot.count("->") == 2
    assert 'label="{}"' in dot and 'label="{1,2}"' in dot


def test_butterfly_shape_has_four_edges():
    fam = family(4, [1], [2], [1, 2, 3], [1, 2, 4])
    assert len(cover_edges(fam)) == 4


def test_boolean_square():
    fam = SetFamily.from_masks(GroundSet(2), range(4))
    assert len(cover_edges(fam)) == 4


def test_intermediate_member_blocks_cover():
    fam = family(3, [1], [1, 2], [1, 2, 3])
    edges = cover_edges(fam)
    # {1} -> {1,2} -> {1,2,3}; no direct {1} -> {1,2,3} edge
    assert len(edges) == 2


def test_dot_is_deterministic():
    fam = family(3, [2], [1, 2], [2, 3])
    assert emit_hasse(fam) == emit_hasse(fam)
    assert emit_hasse(fam).startswith("digraph hasse {")
