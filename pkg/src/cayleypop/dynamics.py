"""Population and amplitude dynamics on l2(G) driven by the left regular representation.

A generator ``q = sum_h a_h h`` acts as ``|g> -> sum_h a_h |h g>``. Population
generators (nonnegative real coefficients) can be run on integer chip stacks,
where every split is floored and the discarded chips are booked in a
:class:`LossLedger`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np

from .exceptions import CapacityError, DomainError, GroupMismatchError, InvalidWeightsError
from .groups import WEIGHT_TOL, FiniteGroup, GeneratorSet, ProductGroup
from .semiring import (
    AlgebraElement,
    PosQuad,
    SemiringElement,
    XI_GROUP,
    decorated_group,
    lift_to_decorated,
    section_elem,
)

__all__ = [
    "ChipState",
    "RealState",
    "ComplexState",
    "DynamicalMatrix",
    "LossLedger",
    "Trajectory",
    "DENSE_LIMIT",
    "build_dynamical_matrix",
    "apply_exact",
    "apply_chip",
    "evolve",
    "check_conservation",
    "check_translation_invariance",
    "is_self_adjoint",
    "build_exponential_generator",
    "section_state",
    "uniform_state",
    "delta_state",
]

DENSE_LIMIT = 4096
CONSERVATION_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class _State:
    group: FiniteGroup
    values: np.ndarray

    dtype = float

    def __post_init__(self):
        values = np.asarray(self.values, dtype=self.dtype)
        if values.shape != (self.group.order,):
            raise ValueError(f"state of shape {values.shape} does not match group order {self.group.order}")
        self._validate(values)
        object.__setattr__(self, "values", _frozen(values))

    def _validate(self, values):
        pass

    def __len__(self):
        return self.group.order

    def __eq__(self, other):
        return type(other) is type(self) and self.group == other.group and np.array_equal(self.values, other.values)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def total(self):
        return self.values.sum()

    def decorated_view(self) -> np.ndarray:
        """Values reshaped to ``(4, |G|)`` for states over ``Z4 x G``."""
        if not isinstance(self.group, ProductGroup) or self.group.left != XI_GROUP:
            raise DomainError(f"{self.group!r} is not of the form Z4 x G")
        return self.values.reshape(4, self.group.right.order)


@dataclass(frozen=True, eq=False)
class ChipState(_State):
    """Integer chip stacks ``N_g``."""

    dtype = np.int64

    def _validate(self, values):
        if (values < 0).any():
            raise DomainError("chip counts must be nonnegative")

    @property
    def counts(self) -> np.ndarray:
        return self.values

    def total(self) -> int:
        return int(self.values.sum())


@dataclass(frozen=True, eq=False)
class RealState(_State):
    """Nonnegative real occupancies."""

    dtype = float

    def _validate(self, values):
        if (values < 0).any():
            raise DomainError("real occupancies must be nonnegative")


@dataclass(frozen=True, eq=False)
class ComplexState(_State):
    """Complex amplitudes."""

    dtype = complex

    @property
    def amplitudes(self) -> np.ndarray:
        return self.values

    def normalized(self) -> "ComplexState":
        return ComplexState(self.group, self.values / self.norm())


State = Union[ChipState, RealState, ComplexState]


def uniform_state(G: FiniteGroup) -> RealState:
    return RealState(G, np.ones(G.order))


def delta_state(G: FiniteGroup, g: int, weight=1.0, kind=RealState) -> State:
    v = np.zeros(G.order, dtype=kind.dtype)
    v[G.check(g)] = weight
    return kind(G, v)


class DynamicalMatrix:
    """Operator ``pi_L(q)`` for a generator ``q`` in R+G or CG.

    Semiring generators must have real (``xi^0``) coefficients; build them over
    ``Z4 x G`` with :func:`~cayleypop.semiring.lift_to_decorated` first.
    """

    def __init__(self, generator: SemiringElement | AlgebraElement):
        if isinstance(generator, SemiringElement):
            if not generator.is_scalar():
                raise DomainError(
                    "semiring generator has xi-coefficients; lift it to Z4 x G before building the operator"
                )
            coeffs = [(h, c.beta[0]) for h, c in generator.terms()]
            self.is_population = True
        elif isinstance(generator, AlgebraElement):
            coeffs = [(h, c) for h, c in generator.terms()]
            self.is_population = all(c.imag == 0 and c.real >= 0 for _, c in coeffs)
            if self.is_population:
                coeffs = [(h, c.real) for h, c in coeffs]
        else:
            raise TypeError(f"unsupported generator {generator!r}")
        self.generator = generator
        self.group = generator.group
        self._terms = [(h, coeff, self.group.left_translation(h)) for h, coeff in coeffs]

    @property
    def terms(self) -> list[tuple[int, complex | float]]:
        return [(h, c) for h, c, _ in self._terms]

    @property
    def is_real(self) -> bool:
        return all(not isinstance(c, complex) for _, c, _ in self._terms)

    def matvec(self, values: np.ndarray) -> np.ndarray:
        dtype = np.result_type(values.dtype, float if self.is_real else complex)
        out = np.zeros(len(values), dtype=dtype)
        for _, c, perm in self._terms:
            out[perm] += c * values
        return out

    def rmatvec(self, values: np.ndarray) -> np.ndarray:
        """Adjoint action: ``(D^dagger v)[g] = sum_h conj(a_h) v[h g]``."""
        dtype = np.result_type(values.dtype, float if self.is_real else complex)
        out = np.zeros(len(values), dtype=dtype)
        for _, c, perm in self._terms:
            out += np.conj(c) * values[perm]
        return out

    def to_dense(self) -> np.ndarray:
        n = self.group.order
        if n > DENSE_LIMIT:
            raise CapacityError(f"dense matrix of order {n} exceeds {DENSE_LIMIT}")
        M = np.zeros((n, n), dtype=float if self.is_real else complex)
        cols = np.arange(n)
        for _, c, perm in self._terms:
            M[perm, cols] += c
        return M

    def scaled(self, r: float) -> "DynamicalMatrix":
        return DynamicalMatrix(self.generator.scale(r))

    def __repr__(self):
        return f"DynamicalMatrix({self.generator!r})"


def build_dynamical_matrix(G: FiniteGroup, S: GeneratorSet) -> DynamicalMatrix:
    """``D = sum_j p_j pi_L(g_j)``: split every stack by the weights and move part j to ``g_j g``."""
    total = math.fsum(S.weights)
    if abs(total - 1.0) > WEIGHT_TOL or any(p < 0 for p in S.weights):
        raise InvalidWeightsError(f"weights must be nonnegative and sum to 1, got sum {total!r}")
    q = SemiringElement(G, {s: PosQuad.scalar(p) for s, p in S})
    return DynamicalMatrix(q)


def _check_same_group(D: DynamicalMatrix, state: State) -> None:
    if D.group != state.group:
        raise GroupMismatchError(f"operator acts on {D.group!r}, state lives on {state.group!r}")


def apply_exact(D: DynamicalMatrix, state: State) -> State:
    _check_same_group(D, state)
    if isinstance(state, ComplexState):
        return ComplexState(state.group, D.matvec(state.values))
    if not D.is_population:
        raise DomainError("a non-population generator cannot act on a real population state")
    return RealState(state.group, D.matvec(np.asarray(state.values, dtype=float)))


def apply_chip(D: DynamicalMatrix, state: ChipState) -> tuple[ChipState, int]:
    """One integer step: stack ``N_g`` sends ``floor(p_h N_g)`` chips to ``h g`` for every term."""
    _check_same_group(D, state)
    if not D.is_population:
        raise DomainError("chip dynamics needs a generator with nonnegative real coefficients")
    counts = state.counts
    out = np.zeros_like(counts)
    for _, p, perm in D._terms:
        out[perm] += np.floor(p * counts).astype(np.int64)
    new = ChipState(state.group, out)
    return new, state.total() - new.total()


@dataclass
class LossLedger:
    """Per-step chip losses caused by flooring."""

    initial_total: int
    entries: list[tuple[int, int, int]] = field(default_factory=list)

    def record(self, step: int, lost: int, remaining: int) -> None:
        self.entries.append((step, lost, remaining))

    @property
    def losses(self) -> list[tuple[int, int]]:
        return [(s, lost) for s, lost, _ in self.entries]

    @property
    def total_lost(self) -> int:
        return sum(lost for _, lost, _ in self.entries)


@dataclass
class Trajectory:
    states: list
    ledger: LossLedger | None = None

    def __getitem__(self, t):
        return self.states[t]

    def __len__(self):
        return len(self.states)


def evolve(
    D: DynamicalMatrix,
    state: State,
    steps: int,
    mode: Literal["exact", "chip"] | None = None,
) -> Trajectory:
    """Apply ``D`` repeatedly; ``trajectory[t] = D^t state``."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if mode is None:
        mode = "chip" if isinstance(state, ChipState) else "exact"
    if mode == "chip":
        if not isinstance(state, ChipState):
            raise DomainError("chip mode needs a ChipState")
        ledger = LossLedger(state.total())
        states = [state]
        for t in range(1, steps + 1):
            state, lost = apply_chip(D, state)
            ledger.record(t, lost, state.total())
            states.append(state)
        return Trajectory(states, ledger)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(state, ChipState):
        state = RealState(state.group, state.values.astype(float))
    states = [state]
    for _ in range(steps):
        state = apply_exact(D, state)
        states.append(state)
    return Trajectory(states)


def check_conservation(D: DynamicalMatrix, tol: float = CONSERVATION_TOL) -> tuple[bool, float]:
    """Check ``D psi0 = psi0`` and ``D^dagger psi0 = psi0`` for the uniform state."""
    ones = np.ones(D.group.order)
    dev = max(
        float(np.max(np.abs(D.matvec(ones) - ones))),
        float(np.max(np.abs(D.rmatvec(ones) - ones))),
    )
    return dev <= tol, dev


def check_translation_invariance(D: DynamicalMatrix | np.ndarray, group: FiniteGroup | None = None) -> bool:
    """Check ``pi_R(g) D = D pi_R(g)`` for every ``g``, where ``pi_R(g)|g'> = |g' g^-1>``.

    Accepts a :class:`DynamicalMatrix` or an explicit square matrix plus its group.
    """
    if isinstance(D, DynamicalMatrix):
        group = D.group
        M = D.to_dense()
    else:
        if group is None:
            raise ValueError("a dense matrix needs its group")
        M = np.asarray(D)
    n = group.order
    if n > DENSE_LIMIT:
        raise CapacityError(f"translation check on order {n} exceeds {DENSE_LIMIT}")
    if M.shape != (n, n):
        raise ValueError(f"matrix shape {M.shape} does not match group order {n}")
    for g in group.elements():
        # U_g M U_g^-1 has entries M[r(a), r(b)] with r(a) = a g
        r = group.right_translation(g)
        if not np.array_equal(M[np.ix_(r, r)], M):
            return False
    return True


def is_self_adjoint(obj: GeneratorSet | SemiringElement | AlgebraElement | DynamicalMatrix,
                    group: FiniteGroup | None = None) -> bool:
    """Whether the generated dynamical matrix is self-adjoint.

    For a weighted generator set this is the condition that ``S`` is closed under
    inversion with equal weights on inverse pairs.
    """
    if isinstance(obj, DynamicalMatrix):
        obj = obj.generator
    if isinstance(obj, GeneratorSet):
        if group is None:
            raise ValueError("a generator set needs its group")
        weights = dict(obj)
        return all(
            group.inverse(s) in weights and weights[group.inverse(s)] == p for s, p in weights.items()
        )
    return obj.star() == obj


def build_exponential_generator(H: AlgebraElement, t: float, m: int) -> tuple[DynamicalMatrix, float]:
    """Population generator for one step of ``(1 + i t H / m)^m``.

    Returns ``(D, gamma)`` where ``D = gamma * lift(section(1 + (i t / m) H))`` over
    ``Z4 x G`` and ``gamma`` makes every column sum to one. After ``m`` steps the
    projected state must be rescaled by ``gamma**-m``.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if not t > 0:
        raise ValueError("t must be positive")
    G = H.group
    step = AlgebraElement.identity(G) + H.scale(1j * t / m)
    lifted = lift_to_decorated(section_elem(step))
    gamma = 1.0 / lifted.total_weight()
    return DynamicalMatrix(lifted.scale(gamma)), gamma


def section_state(psi: ComplexState | np.ndarray, group: FiniteGroup | None = None) -> RealState:
    """Port amplitudes on G to nonnegative occupancies on ``Z4 x G`` via the section."""
    if isinstance(psi, ComplexState):
        group, values = psi.group, psi.values
    else:
        values = np.asarray(psi, dtype=complex)
    K = decorated_group(group)
    a, b = values.real, values.imag
    out = np.zeros((4, group.order))
    out[0] = np.where(a >= 0, a, 0.0)
    out[2] = np.where(a < 0, -a, 0.0)
    out[1] = np.where(b >= 0, b, 0.0)
    out[3] = np.where(b < 0, -b, 0.0)
    return RealState(K, out.ravel())
