"""Population dynamics over Cayley graphs and its Z4-decoration for simulating quantum dynamics."""

from .dynamics import (
    ChipState,
    ComplexState,
    DynamicalMatrix,
    LossLedger,
    RealState,
    Trajectory,
    apply_chip,
    apply_exact,
    build_dynamical_matrix,
    build_exponential_generator,
    check_conservation,
    check_translation_invariance,
    evolve,
    is_self_adjoint,
    section_state,
)
from .exceptions import *  # noqa: F401,F403
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    ProjectionReport,
    emit_outputs,
    hamiltonian_h1,
    hamiltonian_h2,
    project_state,
    run_experiment,
    run_experiment_1,
    run_experiment_2,
    run_experiment_3,
)
from .groups import (
    CayleyDigraph,
    CayleyGraph,
    CyclicGroup,
    FiniteGroup,
    GeneratorSet,
    ProductGroup,
    cayley_digraph,
    cayley_graph,
    direct_product,
    export_dot,
    free_group_ball,
    make_cyclic,
)
from .oracle import (
    EigenPair,
    dense_eigensystem,
    dft_eigensystem,
    exact_exponential,
    to_dense,
    truncated_product,
)
from .semiring import (
    AlgebraElement,
    PosQuad,
    SemiringElement,
    chi_elem,
    chi_quad,
    decorated_group,
    inner_product,
    lift_to_decorated,
    lower_from_decorated,
    section_elem,
    section_scalar,
    star,
    trace,
)

__version__ = "0.1.0"
