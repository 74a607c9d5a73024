# %% [markdown]
# # From complex amplitudes to chip stacks
#
# A complex number is stored as four nonnegative stacks `(b0, b1, b2, b3)`
# and read back as `(b0 - b2) + i (b1 - b3)`. Adding `(1, 0, 1, 0)`
# changes the stacks but not the reading.

# %%
from cayleypop import AlgebraElement, PosQuad, chi_elem, chi_quad, make_cyclic, section_elem, section_scalar
from cayleypop.experiments import hamiltonian_h2

# %%
z = 3 - 2j
stacks = section_scalar(z)
print(z, "->", stacks.beta, "->", chi_quad(stacks))
print("with kernel padding:", chi_quad(stacks + PosQuad((5, 1, 5, 1))))

# %% Products survive the round trip: (1 + xi)^2 reads as (1 + i)^2 = 2i
q = PosQuad((1, 1, 0, 0))
print((q * q).beta, chi_quad(q * q), (1 + 1j) ** 2)

# %% Porting a Hamiltonian with complex hopping on Z_20
G = make_cyclic(20)
H = hamiltonian_h2(G)
ported = section_elem(H)
for g, c in ported.terms():
    print(f"  element {G.label(g):>2}: stacks {c.beta}")
print("reads back exactly:", chi_elem(ported) == H)

# %% The ported operator is a legal population generator: all weights sum to 1
print("total weight:", ported.total_weight())
