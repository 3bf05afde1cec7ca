import random

import networkx as nx
import pytest
from hypothesis import given, settings

from helpers import to_nx, trees
from treeskel.graph import (
    Forest,
    GraphError,
    GraphFormatError,
    bipartition,
    component_sets,
    contract_subgraphs,
    parse_graph,
    remove_vertices,
    serialize_graph,
)
from treeskel.trees import (
    all_labeled_trees,
    canonical_form,
    isomorphic,
    prufer_to_tree,
    random_tree,
    unlabeled_trees,
)


def test_parse_first_appearance_order_and_comments():
    f = parse_graph("# a path\nb a\n\n  a c  \nz\n")
    assert f.vertices == ("b", "a", "c", "z")
    assert f.edge_set() == {frozenset("ab"), frozenset("ac")}
    assert f.degree("z") == 0
    assert not f.is_tree()


@pytest.mark.parametrize(
    "text, line",
    [("a b\nb c\nc a", 3), ("a a", 1), ("a b\nb a", 2), ("a b c", 1), ("a b\n\n# x\nb b", 4)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(text)
    assert exc.value.line == line


def test_forest_rejects_cycles_and_bad_labels():
    with pytest.raises(GraphError):
        Forest("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(GraphError):
        Forest(["a", ""])
    with pytest.raises(GraphError):
        Forest(["a", "a"])
    with pytest.raises(GraphError):
        Forest(["a"], [("a", "b")])


def test_serialize_roundtrip_is_canonical():
    f = parse_graph("d c\nb a\nx\nc a")
    text = serialize_graph(f)
    assert text == "a b\na c\nc d\nx\n"
    assert parse_graph(text) == f


def test_components_and_removal():
    f = parse_graph("a b\nc d\nd e\nf")
    assert component_sets(f) == [["a", "b"], ["c", "d", "e"], ["f"]]
    g = remove_vertices(f, ["d"])
    assert component_sets(g) == [["a", "b"], ["c"], ["e"], ["f"]]
    with pytest.raises(GraphError):
        remove_vertices(f, ["q"])


def test_contract_path():
    p5 = parse_graph("a b\nb c\nc d\nd e")
    res = contract_subgraphs(p5, [{"d", "e"}, {"a", "b"}])
    assert res.contracted.vertices == ("C#1", "c", "C#2")
    assert res.contracted.edge_set() == {frozenset(("C#1", "c")), frozenset(("c", "C#2"))}
    assert res.members("C#1") == {"a", "b"}
    assert res.members("c") == {"c"}


def test_contract_skips_taken_labels_and_validates():
    f = parse_graph("C#1 a\na b")
    res = contract_subgraphs(f, [{"a", "b"}])
    assert res.contracted.vertices == ("C#1", "C#2")
    with pytest.raises(GraphError):
        contract_subgraphs(f, [{"C#1", "b"}])  # not connected
    with pytest.raises(GraphError):
        contract_subgraphs(f, [{"a"}, {"a", "b"}])
    with pytest.raises(GraphError):
        contract_subgraphs(f, [set()])


def test_labeled_tree_counts_match_cayley():
    for n in range(1, 7):
        assert sum(1 for _ in all_labeled_trees(n)) == max(1, n ** (n - 2))


def test_prufer_decoding():
    t = prufer_to_tree([3, 3, 3], 5)
    assert t.degree("3") == 4
    with pytest.raises(ValueError):
        prufer_to_tree([0], 5)


def test_unlabeled_tree_counts():
    # number of trees up to isomorphism on n = 1..10 vertices
    expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
    assert [len(unlabeled_trees(n)) for n in range(1, 11)] == expected


def test_unlabeled_trees_pairwise_non_isomorphic():
    ts = unlabeled_trees(8)
    for i, a in enumerate(ts):
        for b in ts[i + 1 :]:
            assert not nx.is_isomorphic(to_nx(a), to_nx(b))


@settings(max_examples=60, deadline=None)
@given(trees(1, 11), trees(1, 11))
def test_canonical_form_agrees_with_networkx(a, b):
    assert isomorphic(a, b) == nx.is_isomorphic(to_nx(a), to_nx(b))


@settings(max_examples=60, deadline=None)
@given(trees(1, 12))
def test_canonical_form_ignores_labels(t):
    rng = random.Random(len(t))
    names = [f"v{i}" for i in range(len(t))]
    rng.shuffle(names)
    m = dict(zip(t.vertices, names))
    assert canonical_form(t.relabel(m)) == canonical_form(t)


def test_coloured_canonical_form_distinguishes_tags():
    p3 = parse_graph("a b\nb c")
    assert canonical_form(p3, {"a": "X", "b": "S", "c": "S"}) == canonical_form(
        p3, {"a": "S", "b": "S", "c": "X"}
    )
    assert canonical_form(p3, {"a": "X", "b": "S", "c": "S"}) != canonical_form(
        p3, {"a": "S", "b": "X", "c": "S"}
    )


@settings(max_examples=60, deadline=None)
@given(trees(1, 14))
def test_bipartition_is_proper(t):
    a, b = bipartition(t)
    assert a | b == set(t.vertices) and not a & b
    assert t.vertices[0] in a
    for u, v in t.edges:
        assert (u in a) != (v in a)


def test_random_tree_is_tree():
    rng = random.Random(0)
    for n in range(1, 15):
        t = random_tree(n, rng)
        assert len(t) == n and t.is_tree()


def test_induced_keeps_order():
    f = parse_graph("a b\nb c\nc d")
    g = f.induced(["d", "b", "c"])
    assert g.vertices == ("b", "c", "d")
    assert g.neighbors("c") == ("b", "d")
