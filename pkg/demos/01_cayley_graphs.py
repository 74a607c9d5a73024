# %% [markdown]
# # Cayley graphs and digraphs
#
# Vertices are group elements; a generator `s` joins `g` to `s g`.
# Everything here is plain DOT text, so any Graphviz tool can lay it out.

# %%
from cayleypop import cayley_digraph, cayley_graph, direct_product, export_dot, free_group_ball, make_cyclic

# %% The cycle Z_8 with S = {1}
C8 = cayley_graph(make_cyclic(8), [1])
print(f"Z_8: {len(C8.vertices)} vertices, {len(C8.edges)} edges, degrees {sorted({C8.degree(v) for v in C8.vertices})}")

# %% The Z4-decorated cycle: four disjoint copies of Z_8 under S alone ...
K = direct_product(make_cyclic(4), make_cyclic(8))
S, xiS = K.compose(0, 1), K.compose(1, 1)
one = cayley_digraph(K, [S])
print(f"Z4 x Z8, {{S}}: {len(one.arcs)} arcs, cycles {[len(c) for c in one.cycles_of_color(0)]}")

# %% ... which the extra generator xi*S stitches together (green arcs)
two = cayley_digraph(K, [S, xiS])
print(f"Z4 x Z8, {{S, xiS}}: {len(two.arcs)} arcs in colors {two.colors}")
print(export_dot(two).splitlines()[40])

# %% A ball in the free group on a, b: a piece of the 4-regular tree
ball = free_group_ball(2, 3)
print(f"F2 ball of radius 3: {len(ball.vertices)} words, {len(ball.arcs)} arcs")
print("first words:", ball.labels[:9])

# %%
if __name__ == "__main__":
    import sys

    if len(sys.argv) > 1:
        with open(sys.argv[1], "w") as fh:
            fh.write(export_dot(two, name="decorated"))
        print("wrote", sys.argv[1])
