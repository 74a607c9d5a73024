import itertools

import pytest

from cayleypop.exceptions import CapacityError, InvalidOrderError, InvalidWeightsError, SelfLoopError
from cayleypop.groups import (
    GeneratorSet,
    ProductGroup,
    cayley_digraph,
    cayley_graph,
    direct_product,
    export_dot,
    free_group_ball,
    free_group_ball_size,
    group_from_json,
    make_cyclic,
)


def small_groups():
    return [
        make_cyclic(1),
        make_cyclic(4),
        make_cyclic(7),
        direct_product(make_cyclic(4), make_cyclic(3)),
        direct_product(make_cyclic(2), direct_product(make_cyclic(2), make_cyclic(3))),
        direct_product(make_cyclic(4), make_cyclic(8)),
    ]


@pytest.mark.parametrize("G", small_groups(), ids=repr)
def test_group_axioms_exhaustive(G):
    els = list(G.elements())
    assert G.identity == 0
    for a in els:
        assert G.multiply(a, G.inverse(a)) == G.identity
        assert G.multiply(G.identity, a) == a == G.multiply(a, G.identity)
    for a, b, c in itertools.product(els, repeat=3):
        assert G.multiply(a, G.multiply(b, c)) == G.multiply(G.multiply(a, b), c)


def test_cyclic_examples():
    assert make_cyclic(4).multiply(1, 3) == 0
    assert make_cyclic(20).inverse(1) == 19
    assert make_cyclic(5) == make_cyclic(5)


def test_cyclic_rejects_zero_order():
    with pytest.raises(InvalidOrderError):
        make_cyclic(0)


def test_product_overflow():
    with pytest.raises(CapacityError):
        direct_product(make_cyclic(1 << 13), make_cyclic(1 << 12))


def test_product_indexing():
    assert direct_product(make_cyclic(4), make_cyclic(8)).order == 32
    K = direct_product(make_cyclic(4), make_cyclic(20))
    assert K.compose(1, 10) == 30
    assert K.decompose(30) == (1, 10)
    for a in range(4):
        for b in range(20):
            assert K.decompose(K.compose(a, b)) == (a, b)


def test_trivial_factor_matches_table():
    G = make_cyclic(6)
    P = direct_product(make_cyclic(1), G)
    for a in G.elements():
        for b in G.elements():
            assert P.multiply(a, b) == G.multiply(a, b)


def test_translations_match_multiply():
    K = direct_product(make_cyclic(4), make_cyclic(5))
    for h in K.elements():
        left, right = K.left_translation(h), K.right_translation(h)
        for g in K.elements():
            assert left[g] == K.multiply(h, g)
            assert right[g] == K.multiply(g, h)


def test_group_json_round_trip():
    K = direct_product(make_cyclic(4), make_cyclic(9))
    assert group_from_json(K.to_json()) == K


def test_generator_set_validation():
    S = GeneratorSet((1, 2))
    assert S.weights == (0.5, 0.5)
    with pytest.raises(InvalidWeightsError):
        GeneratorSet((1, 2), (0.5, 0.4))
    with pytest.raises(ValueError):
        GeneratorSet((1, 1), (0.5, 0.5))


@pytest.mark.parametrize("N", range(3, 13))
def test_cycle_graph(N):
    C = cayley_graph(make_cyclic(N), [1])
    assert len(C.edges) == N
    assert all(C.degree(v) == 2 for v in C.vertices)
    assert len(C.components()) == 1


def test_cycle_graph_n8_two_regular():
    C = cayley_graph(make_cyclic(8), [1])
    assert sorted(C.neighbors(0)) == [1, 7]


def test_self_loop_rejected():
    with pytest.raises(SelfLoopError):
        cayley_graph(make_cyclic(5), [0, 1])
    with pytest.raises(SelfLoopError):
        cayley_digraph(make_cyclic(5), [0])


def test_inverse_pair_edges_collapse():
    C = cayley_graph(make_cyclic(6), [1, 5])
    assert len(C.edges) == 6


def _brute_edges(gens, n_left=4, n_right=8):
    # independent tuple arithmetic on Z4 x Z8
    edges = set()
    for j, n in itertools.product(range(n_left), range(n_right)):
        for sj, sn in gens:
            a, b = (j, n), ((j + sj) % n_left, (n + sn) % n_right)
            edges.add(frozenset([a, b]))
    return edges


def test_decorated_graph_structure():
    K = direct_product(make_cyclic(4), make_cyclic(8))
    C1 = cayley_graph(K, [K.compose(0, 1)])
    assert len(C1.vertices) == 32 and len(C1.edges) == 32
    comps = C1.components()
    assert len(comps) == 4 and all(len(c) == 8 for c in comps)

    C2 = cayley_graph(K, [K.compose(0, 1), K.compose(1, 1)])
    assert len(C2.edges) == len(_brute_edges([(0, 1), (1, 1)])) == 64


def test_digraph_color_classes_are_permutations():
    K = direct_product(make_cyclic(4), make_cyclic(8))
    D = cayley_digraph(K, [K.compose(0, 1), K.compose(1, 1)])
    assert len(D.arcs) == 64
    assert D.colors == [0, 1]
    for c in D.colors:
        assert D.color_permutation(c) is not None


def test_small_digraphs():
    D = cayley_digraph(make_cyclic(2), [1])
    assert sorted(D.arcs) == [(0, 1, 0), (1, 0, 0)]
    D4 = cayley_digraph(make_cyclic(4), [1])
    assert D4.cycles_of_color(0) == [[0, 1, 2, 3]]


def _brute_ball(n, r):
    letters = [chr(ord("a") + i) for i in range(n)]
    letters += [c.upper() for c in letters]
    words = set()
    for length in range(r + 1):
        for w in itertools.product(letters, repeat=length):
            stack = []
            for c in w:
                if stack and stack[-1] == c.swapcase():
                    stack.pop()
                else:
                    stack.append(c)
            words.add("".join(stack))
    return words


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("r", range(5))
def test_free_group_ball_counts(n, r):
    ball = free_group_ball(n, r)
    assert len(ball.vertices) == free_group_ball_size(n, r)
    if n < 3 or r < 4:
        assert set(ball.labels) == {w or "e" for w in _brute_ball(n, r)}


def test_free_group_ball_examples():
    assert free_group_ball(2, 1).labels == ("e", "a", "A", "b", "B")
    assert len(free_group_ball(2, 3).vertices) == 53
    ball0 = free_group_ball(2, 0)
    assert len(ball0.vertices) == 1 and ball0.arcs == ()


def test_free_group_ball_arcs_left_multiply():
    ball = free_group_ball(2, 2)
    label = dict(enumerate(ball.labels))
    arcs = {(label[a], label[b], c) for a, b, c in ball.arcs}
    assert ("e", "a", 0) in arcs
    assert ("A", "e", 0) in arcs
    assert ("b", "ab", 0) in arcs
    assert ("a", "ba", 1) in arcs
    assert ("ab", "aab", 0) not in arcs


def test_export_dot_counts():
    dot = export_dot(cayley_digraph(make_cyclic(2), [1]))
    assert dot.startswith("digraph")
    assert dot.count("->") == 2

    dot = export_dot(cayley_graph(make_cyclic(4), [1]))
    assert dot.startswith("graph")
    assert dot.count("[label=") == 4
    assert dot.count("--") == 4

    K = direct_product(make_cyclic(4), make_cyclic(8))
    dot = export_dot(cayley_digraph(K, [K.compose(0, 1), K.compose(1, 1)]))
    assert dot.count("->") == 64
    assert dot.count("color=red") == 32 and dot.count("color=green") == 32
    assert 'label="(1,3)"' in dot


def test_export_dot_deterministic_and_labeler():
    G = make_cyclic(5)
    g = cayley_graph(G, [1, 2])
    assert export_dot(g) == export_dot(cayley_graph(G, [1, 2]))
    assert 'label="n3"' in export_dot(g, labeler=lambda v: f"n{v}")
    assert 'label="ab"' in export_dot(free_group_ball(2, 2))
