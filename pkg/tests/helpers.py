"""Shared strategies and fixtures for the test modules."""

from fractions import Fraction

import networkx as nx
from hypothesis import strategies as st

from treeskel.graph import Forest, parse_graph
from treeskel.trees import prufer_to_tree


@st.composite
def trees(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    if n <= 2:
        return prufer_to_tree([], n)
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return prufer_to_tree(seq, n)


def to_nx(f: Forest) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(f.vertices)
    g.add_edges_from(f.edges)
    return g


def Q(*xs):
    return tuple(Fraction(x) for x in xs)


# named fixtures from the worked examples
P5 = parse_graph("a b\nb c\nc d\nd e")
K2 = parse_graph("a b")
K13 = parse_graph("c l1\nc l2\nc l3")
# spider: centre m, arms m-p1-p2 and m-q1-q2, leaf s
S221 = parse_graph("m p1\np1 p2\nm q1\nq1 q2\nm s")
# two stars joined at their centres: adjacent always-zero vertices at 0
DOUBLE_STAR = parse_graph("a1 w1\na2 w1\nw1 w2\nw2 b1\nw2 b2")
