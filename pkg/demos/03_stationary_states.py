# %% [markdown]
# # Stationary states seen through chip dynamics
#
# A Fourier mode `psi_k` is ported to the decorated cycle and evolved. The
# read-back amplitude at every site is multiplied by the same eigenvalue each
# step, even though the raw stacks look nothing like a plane wave.

# %%
import numpy as np

from cayleypop import ExperimentConfig, run_experiment

# %% Real hopping (S + S*)/2, exact arithmetic
r = run_experiment(ExperimentConfig("stationary-h1", N=20, k=1, steps=10))
print(f"eps_1 = {r.expected_epsilon:.7f}, worst ratio deviation {r.max_ratio_deviation():.1e}")

# %% The same run with a million chips on the largest stack
r = run_experiment(ExperimentConfig("stationary-h1", N=20, k=1, steps=10, mode="chip", initial_chips=10**6))
print("chips lost per step:", [lost for _, lost in r.ledger.losses])
for rep in r.reports[1:4]:
    print(f"step {rep.step}: |ratio| in [{np.nanmin(abs(rep.ratio)):.5f}, {np.nanmax(abs(rep.ratio)):.5f}]")

# %% Complex hopping, including a mode with negative eigenvalue
for k in (1, 3, 11):
    r = run_experiment(ExperimentConfig("stationary-h2", N=20, k=k, steps=10))
    print(f"k={k:2d}: eps={r.expected_epsilon:+.7f}, deviation {r.max_ratio_deviation():.1e}")

# %% Optional picture of the raw stacks and their projection
if __name__ == "__main__":
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        plt = None
    if plt is not None:
        r = run_experiment(ExperimentConfig("stationary-h1", N=20, k=1, steps=10, mode="chip", initial_chips=1000))
        fig, axes = plt.subplots(2, 1, figsize=(7, 5))
        axes[0].imshow(r.trajectory[10].values.reshape(4, 20), aspect="auto")
        axes[0].set_title("chip stacks after 10 steps (rows: xi^0..xi^3)")
        p = r.reports[10].projection
        axes[1].plot(p.real, "o-", label="re")
        axes[1].plot(p.imag, "s-", label="im")
        axes[1].legend()
        fig.savefig("stationary.png", dpi=100)
        print("wrote stationary.png")
