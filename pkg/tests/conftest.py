import numpy as np
import pytest

from frontforge.explicit_front import ExplicitFrontParams, front_nonlinearity
from frontforge.nonlinearity import make_bistable_cubic, make_combustion
from frontforge.solver import SolverOptions, choose_weight, solve_front

ORACLE_PARAMS = ExplicitFrontParams(t=1.0, c=2.0)


@pytest.fixture(scope="session")
def oracle_nl():
    return front_nonlinearity(ORACLE_PARAMS)


@pytest.fixture(scope="session")
def oracle_solution(oracle_nl):
    return solve_front(oracle_nl, SolverOptions())


@pytest.fixture(scope="session")
def oracle_solution_refined(oracle_nl):
    return solve_front(oracle_nl, SolverOptions(refine=1))


@pytest.fixture(scope="session")
def cubic_nl():
    return make_bistable_cubic(0.25)


@pytest.fixture(scope="session")
def cubic_solution(cubic_nl):
    return solve_front(cubic_nl, SolverOptions(seed="exponential"))


@pytest.fixture(scope="session")
def cubic_solution_alt_seed(cubic_nl):
    return solve_front(cubic_nl, SolverOptions(seed="kernel"))


@pytest.fixture(scope="session")
def combustion_pair():
    """Fronts for amplitudes 1.5 and 1.0 at beta = 0.3, same weight and grid."""
    nl_hi = make_combustion(0.3, 1.5)
    nl_lo = make_combustion(0.3, 1.0)
    a = min(choose_weight(nl_hi), choose_weight(nl_lo))
    sol_hi = solve_front(nl_hi, SolverOptions(a=a))
    sol_lo = solve_front(nl_lo, SolverOptions(a=a))
    return sol_hi, sol_lo


def monotone_nonincreasing(arr: np.ndarray, axis: int) -> bool:
    return bool(np.all(np.diff(arr, axis=axis) <= 0.0))
