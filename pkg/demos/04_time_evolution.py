# %% [markdown]
# # exp(itH) from m population steps
#
# Chips start on one site. Each step keeps a fraction gamma in place and
# sends gamma*t/(2m) along xi*S and xi*S^-1. After m steps the read-back,
# rescaled by gamma^-m, approximates exp(itH) applied to the start site.

# %%
from cayleypop import ExperimentConfig, run_experiment

# %% Exact occupancies: only the (1 + itH/m)^m truncation error remains
r = run_experiment(ExperimentConfig("time-evolution", N=20, m=100, t=1.0))
print({k: round(v, 6) for k, v in r.fidelity.items()})

# %% Integer chips: flooring every split costs chips and accuracy
for chips in (20_000, 50_000, 200_000):
    r = run_experiment(ExperimentConfig("time-evolution", N=20, m=100, t=1.0, mode="chip", initial_chips=chips))
    f = r.fidelity
    print(f"{chips:>7} chips: lost {f['chips_lost']:>5}, relative L2 vs exp(itH) {f['relative_l2_vs_exact']:.4f}")

# %% Hopping weight t/m instead of t/(2m) runs the clock twice as fast
r = run_experiment(ExperimentConfig("time-evolution", N=20, m=100, t=1.0, paper_literal_d10=True))
print("effective time", r.fidelity["effective_time"], "error", round(r.fidelity["relative_l2_vs_exact"], 6))

# %% Snapshots of the read-back amplitude
for rep in r.reports[::5]:
    print(rep.step, " ".join(f"{abs(z):.2f}" for z in rep.projection[6:15]))
