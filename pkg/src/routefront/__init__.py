"""Multi-objective routing solver: evolve trade-off alternatives for
vehicle routing with time windows instead of a single compromise tour.

Fitness is assigned from dominance counts: an individual's rank is the
number of population members that dominate it, mapped linearly onto a
positive range so convex-dominated trade-offs survive selection. A
non-dominated archive preserves every alternative found.
"""

from .frontdoc import (
    FrontDocument,
    FrontEntry,
    FrontSchemaError,
    build_front_document,
    read_front,
    write_front,
)
from .ga import (
    GAConfig,
    GenerationSnapshot,
    RunResult,
    apply_steering,
    crossover,
    initialize_population,
    mutate,
    run,
    select_parent,
    step_generation,
)
from .heuristics import nearest_neighbor_solution
from .model import (
    OBJECTIVE_NAMES,
    Customer,
    CustomerVisit,
    Instance,
    InvalidSolutionError,
    ObjectiveVector,
    Solution,
    TimingPolicy,
    distance,
    evaluate,
    make_solution,
    trace_solution,
    validate_solution,
)
from .pareto import (
    Archive,
    FitnessParams,
    Individual,
    assign_fitness,
    brute_force_front,
    dominates,
    domination_counts,
)
from .solomon import (
    SolomonParseError,
    format_solomon,
    generate_random_instance,
    parse_solomon,
)

__version__ = "0.1.0"

__all__ = [
    "Archive",
    "Customer",
    "CustomerVisit",
    "FitnessParams",
    "FrontDocument",
    "FrontEntry",
    "FrontSchemaError",
    "GAConfig",
    "GenerationSnapshot",
    "Individual",
    "Instance",
    "InvalidSolutionError",
    "OBJECTIVE_NAMES",
    "ObjectiveVector",
    "RunResult",
    "Solution",
    "SolomonParseError",
    "TimingPolicy",
    "apply_steering",
    "assign_fitness",
    "brute_force_front",
    "build_front_document",
    "crossover",
    "distance",
    "dominates",
    "domination_counts",
    "evaluate",
    "format_solomon",
    "generate_random_instance",
    "initialize_population",
    "make_solution",
    "mutate",
    "nearest_neighbor_solution",
    "parse_solomon",
    "read_front",
    "run",
    "select_parent",
    "step_generation",
    "trace_solution",
    "validate_solution",
    "write_front",
]
