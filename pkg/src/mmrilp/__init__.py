"""Min-max regret solvers for 0-1 integer programs with interval costs."""
from .benders import solve_bda
from .bruteforce import exact_minmax_regret
from .core import solve
from .heuristics import solve_amu
from .heuristics import solve_sba
from .model import BinarySolution
from .model import IntervalIlpInstance
from .regret import robustness_cost
from .rilp import parse_rilp
from .rilp import write_rilp


__all__ = [
    "BinarySolution",
    "IntervalIlpInstance",
    "exact_minmax_regret",
    "parse_rilp",
    "robustness_cost",
    "solve",
    "solve_amu",
    "solve_bda",
    "solve_sba",
    "write_rilp",
]
