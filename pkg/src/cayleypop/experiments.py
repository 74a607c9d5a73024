"""Stationary-state and time-evolution experiments on the Z4-decorated cycle.

Each run builds a population generator over ``Z4 x Z_N``, evolves chips (or
exact real occupancies), and reads the result back on ``Z_N`` by comparing
the four stacks above every site.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .dynamics import (
    ChipState,
    ComplexState,
    DynamicalMatrix,
    LossLedger,
    RealState,
    Trajectory,
    build_exponential_generator,
    check_conservation,
    evolve,
    section_state,
)
from .exceptions import ConfigError, DomainError
from .groups import CyclicGroup, cayley_digraph, export_dot, group_from_json
from .oracle import exact_exponential, fourier_mode, relative_l2, truncated_product
from .semiring import AlgebraElement, XI_GROUP, decorated_group, lift_to_decorated, section_elem

__all__ = [
    "CONFIG_VERSION",
    "EXPERIMENTS",
    "ExperimentConfig",
    "ProjectionReport",
    "ExperimentResult",
    "hamiltonian_h1",
    "hamiltonian_h2",
    "stationary_epsilon",
    "project_state",
    "run_experiment",
    "run_experiment_1",
    "run_experiment_2",
    "run_experiment_3",
    "emit_outputs",
]

CONFIG_VERSION = 1
EXPERIMENTS = ("stationary-h1", "stationary-h2", "time-evolution")
MODES = ("exact", "chip")
RATIO_DENOM_TOL = 1e-9


@dataclass
class ExperimentConfig:
    experiment: str = "stationary-h1"
    N: int = 20
    k: int = 1
    t: float = 1.0
    m: int = 100
    steps: int = 10
    mode: str = "exact"
    initial_chips: int = 20000
    paper_literal_d10: bool = False
    output_dir: str | None = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"experiment must be one of {EXPERIMENTS}, got {self.experiment!r}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not isinstance(self.N, int) or self.N < 1:
            raise ConfigError(f"N must be a positive integer, got {self.N!r}")
        if not isinstance(self.k, int) or not 0 <= self.k < self.N:
            raise ConfigError(f"k must lie in Z_{self.N}, got {self.k!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ConfigError(f"m must be >= 1, got {self.m!r}")
        if not isinstance(self.steps, int) or self.steps < 0:
            raise ConfigError(f"steps must be >= 0, got {self.steps!r}")
        if not isinstance(self.initial_chips, int) or self.initial_chips < 1:
            raise ConfigError(f"initial_chips must be >= 1, got {self.initial_chips!r}")
        if not (isinstance(self.t, (int, float)) and self.t > 0 and math.isfinite(self.t)):
            raise ConfigError(f"t must be a positive number, got {self.t!r}")
        if self.experiment == "time-evolution" and self.N % 2:
            raise ConfigError("time evolution starts at site N/2 and needs an even N")

    @property
    def group(self) -> CyclicGroup:
        return CyclicGroup(self.N)

    def to_dict(self) -> dict[str, Any]:
        data = {
            "version": CONFIG_VERSION,
            "group": {"type": "cyclic", "N": self.N},
            "experiment": self.experiment,
            "k": self.k,
            "t": float(self.t),
            "m": self.m,
            "steps": self.steps,
            "mode": self.mode,
            "initial_chips": self.initial_chips,
            "paper_literal_d10": self.paper_literal_d10,
        }
        if self.output_dir is not None:
            data["output_dir"] = str(self.output_dir)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        data = dict(data)
        version = data.pop("version", None)
        if version != CONFIG_VERSION:
            raise ConfigError(f"unsupported config version {version!r}; expected {CONFIG_VERSION}")
        known = {"group", "experiment", "k", "t", "m", "steps", "mode", "initial_chips",
                 "paper_literal_d10", "output_dir"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config fields: {', '.join(unknown)}")
        kwargs = {}
        if "group" in data:
            group = data.pop("group")
            if not isinstance(group, dict) or group.get("type") != "cyclic" or set(group) != {"type", "N"}:
                raise ConfigError(f"group must be {{'type': 'cyclic', 'N': <int>}}, got {group!r}")
            kwargs["N"] = group["N"]
        kwargs.update(data)
        return cls(**kwargs)

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_dict(data)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


@dataclass
class ProjectionReport:
    """Projected amplitudes on Z_N at one step, with step-to-step ratios."""

    step: int
    projection: np.ndarray
    ratio: np.ndarray | None = None
    population: float = 0.0

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.projection))


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    generator: DynamicalMatrix
    trajectory: Trajectory
    reports: list[ProjectionReport]
    expected_epsilon: complex | None = None
    gamma: float = 1.0
    fidelity: dict[str, float] = field(default_factory=dict)

    @property
    def ledger(self) -> LossLedger | None:
        return self.trajectory.ledger

    def max_ratio_deviation(self) -> float:
        """Largest ``|ratio - epsilon|`` over all steps and sites with a defined ratio."""
        devs = [
            np.nanmax(np.abs(r.ratio - self.expected_epsilon))
            for r in self.reports
            if r.ratio is not None and not np.all(np.isnan(r.ratio))
        ]
        return float(max(devs, default=math.nan))


def _shift(G: CyclicGroup) -> AlgebraElement:
    return AlgebraElement.basis(G, 1)


def hamiltonian_h1(G: CyclicGroup) -> AlgebraElement:
    """``(S + S*) / 2``: symmetric hopping on the cycle."""
    S = _shift(G)
    return (S + S.star()).scale(0.5)


def hamiltonian_h2(G: CyclicGroup) -> AlgebraElement:
    """``(S + S* + iS - iS*) / 4``: hopping with complex amplitudes."""
    S = _shift(G)
    return (S + S.star() + S.scale(1j) - S.star().scale(1j)).scale(0.25)


def stationary_epsilon(experiment: str, N: int, k: int) -> float:
    theta = 2 * math.pi * k / N
    if experiment == "stationary-h1":
        return math.cos(theta)
    if experiment == "stationary-h2":
        return 0.5 * (math.cos(theta) + math.sin(theta))
    raise ValueError(f"no stationary eigenvalue for {experiment!r}")


def project_state(state: ChipState | RealState) -> ComplexState:
    """Read a population on ``Z4 x G`` back on G: ``(N0 - N2) + i (N1 - N3)`` per site."""
    K = state.group
    if not (hasattr(K, "left") and K.left == XI_GROUP):
        raise DomainError(f"projection needs a Z4 x G population, got a state on {K!r}")
    stacks = np.asarray(state.values, dtype=float).reshape(4, K.right.order)
    return ComplexState(K.right, (stacks[0] - stacks[2]) + 1j * (stacks[1] - stacks[3]))


def _step_ratio(cur: np.ndarray, prev: np.ndarray) -> np.ndarray:
    ratio = np.full(cur.shape, np.nan + 0j)
    ok = np.abs(prev) > RATIO_DENOM_TOL
    ratio[ok] = cur[ok] / prev[ok]
    return ratio


def _initial_chips(real: RealState, chips: int) -> ChipState:
    # largest stack gets exactly `chips`, everything else floored proportionally
    scale = chips / real.values.max()
    return ChipState(real.group, np.floor(real.values * scale).astype(np.int64))


def _run_stationary(cfg: ExperimentConfig, H: AlgebraElement) -> ExperimentResult:
    G = cfg.group
    D = DynamicalMatrix(lift_to_decorated(section_elem(H)))
    ok, dev = check_conservation(D)
    if not ok:
        raise DomainError(f"ported generator does not conserve chips (deviation {dev:.3e})")
    initial = section_state(ComplexState(G, fourier_mode(cfg.N, cfg.k)))
    if cfg.mode == "chip":
        initial = _initial_chips(initial, cfg.initial_chips)
    traj = evolve(D, initial, cfg.steps, cfg.mode)

    reports, prev = [], None
    for t, state in enumerate(traj.states):
        proj = project_state(state).values
        ratio = None if prev is None else _step_ratio(proj, prev)
        reports.append(ProjectionReport(t, proj, ratio, float(state.total())))
        prev = proj
    eps = stationary_epsilon(cfg.experiment, cfg.N, cfg.k)
    return ExperimentResult(cfg, D, traj, reports, expected_epsilon=eps)


def run_experiment_1(cfg: ExperimentConfig) -> ExperimentResult:
    """Stationary mode ``psi_k`` of ``(S + S*)/2`` ported to the decorated cycle."""
    if cfg.experiment != "stationary-h1":
        raise ConfigError(f"experiment 1 needs kind 'stationary-h1', got {cfg.experiment!r}")
    return _run_stationary(cfg, hamiltonian_h1(cfg.group))


def run_experiment_2(cfg: ExperimentConfig) -> ExperimentResult:
    """Stationary mode of the complex hopping, ported as ``(S + S* + xi S + xi^3 S*)/4``."""
    if cfg.experiment != "stationary-h2":
        raise ConfigError(f"experiment 2 needs kind 'stationary-h2', got {cfg.experiment!r}")
    return _run_stationary(cfg, hamiltonian_h2(cfg.group))


def sample_steps(m: int) -> list[int]:
    stride = max(1, m // 10)
    steps = list(range(0, m + 1, stride))
    if steps[-1] != m:
        steps.append(m)
    return steps


def run_experiment_3(cfg: ExperimentConfig) -> ExperimentResult:
    """``exp(i t H) delta_{N/2}`` from ``m`` population steps, compared with the exact evolution.

    With ``paper_literal_d10`` the hopping weight is ``t/m`` instead of ``t/(2m)``,
    which realizes ``exp(2 i t H)``; the oracle comparison then uses time ``2t``.
    """
    if cfg.experiment != "time-evolution":
        raise ConfigError(f"experiment 3 needs kind 'time-evolution', got {cfg.experiment!r}")
    G = cfg.group
    H = hamiltonian_h1(G)
    t_eff = 2 * cfg.t if cfg.paper_literal_d10 else cfg.t
    D, gamma = build_exponential_generator(H, t_eff, cfg.m)
    ok, dev = check_conservation(D)
    if not ok:
        raise DomainError(f"time-evolution generator does not conserve chips (deviation {dev:.3e})")

    K = decorated_group(G)
    start = K.compose(0, cfg.N // 2)
    if cfg.mode == "chip":
        counts = np.zeros(K.order, dtype=np.int64)
        counts[start] = cfg.initial_chips
        initial = ChipState(K, counts)
    else:
        values = np.zeros(K.order)
        values[start] = 1.0
        initial = RealState(K, values)
    traj = evolve(D, initial, cfg.m, cfg.mode)

    reports = []
    for t in sample_steps(cfg.m):
        state = traj.states[t]
        proj = project_state(state).values * gamma ** (-t)
        reports.append(ProjectionReport(t, proj, None, float(state.total())))

    psi0 = np.zeros(cfg.N, dtype=complex)
    psi0[cfg.N // 2] = 1.0
    final = project_state(traj.states[-1]).values * gamma ** (-cfg.m)
    exact = exact_exponential(H, t_eff, psi0).values
    trunc = truncated_product(H, t_eff, cfg.m, psi0).values
    fidelity = {
        "effective_time": t_eff,
        "gamma": gamma,
        "relative_l2_vs_exact": relative_l2(final, exact),
        "relative_l2_vs_truncated": relative_l2(final, trunc),
        "truncation_error": relative_l2(trunc, exact),
    }
    if traj.ledger is not None:
        fidelity["chips_lost"] = traj.ledger.total_lost
    return ExperimentResult(cfg, D, traj, reports, gamma=gamma, fidelity=fidelity)


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    runner = {
        "stationary-h1": run_experiment_1,
        "stationary-h2": run_experiment_2,
        "time-evolution": run_experiment_3,
    }[cfg.experiment]
    return runner(cfg)


def _num(x: float) -> str:
    return repr(float(x))


def _write_csv(path: Path, header: list[str], rows) -> None:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc


def emit_outputs(result: ExperimentResult, out_dir: str | Path, graph: bool = False) -> list[Path]:
    """Write CSV/JSON artifacts of a run and return the paths written."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"{out}: cannot create output directory ({exc.strerror or exc})") from exc
    cfg = result.config
    N = cfg.N
    written = []

    def traj_rows():
        for t, state in enumerate(result.trajectory.states):
            stacks = state.values.reshape(4, N)
            for j in range(4):
                for n in range(N):
                    v = stacks[j, n]
                    yield t, j, n, (int(v) if cfg.mode == "chip" else _num(v))

    path = out / "trajectory.csv"
    _write_csv(path, ["step", "j", "n", "value"], traj_rows())
    written.append(path)

    path = out / "projection.csv"
    _write_csv(
        path,
        ["step", "n", "re", "im"],
        ((r.step, n, _num(z.real), _num(z.imag)) for r in result.reports for n, z in enumerate(r.projection)),
    )
    written.append(path)

    if result.expected_epsilon is not None:
        eps = result.expected_epsilon
        path = out / "ratios.csv"
        _write_csv(
            path,
            ["step", "n", "ratio_abs", "expected_epsilon", "ratio_re", "ratio_im"],
            (
                (r.step, n, _num(abs(z)), _num(eps), _num(z.real), _num(z.imag))
                for r in result.reports
                if r.ratio is not None
                for n, z in enumerate(r.ratio)
            ),
        )
        written.append(path)

    if result.ledger is not None:
        path = out / "loss.csv"
        rows = [(0, 0, result.ledger.initial_total)] + list(result.ledger.entries)
        _write_csv(path, ["step", "chips_lost", "total_remaining"], rows)
        written.append(path)

    if result.fidelity:
        path = out / "fidelity.json"
        path.write_text(json.dumps(result.fidelity, indent=2, sort_keys=True) + "\n")
        written.append(path)

    path = out / "config.json"
    path.write_text(cfg.dumps())
    written.append(path)

    if graph:
        K = result.generator.group
        gens = [h for h, _ in result.generator.terms if h != K.identity]
        digraph = cayley_digraph(K, gens)
        path = out / "graph.dot"
        path.write_text(export_dot(digraph))
        written.append(path)
    return written
