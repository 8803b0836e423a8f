"""Exact-arithmetic lab for higher-order mixing experiments.

Core pieces: effective abelian groups (`groups`), shift systems with exactly
computable cylinder measures (`systems`), sum-set largeness certificates
(`largeness`), finite Ramsey limit extraction (`ramsey`), and the scenario
runner (`experiments`) exposed through a CLI and a FastAPI service.
"""

from .experiments import Report, list_scenarios, run_config, run_experiment, verify_report
from .groups import FolnerFamily, GroupContext, Hom, fin_support, integers, int_vectors
from .largeness import (FiniteSumsFamily, LargenessCert, SeedMatrix,
                        enumerate_fs, enumerate_sigma, sigma_star_evidence)
from .ramsey import SimplexArray, find_homogeneous, rlimit_estimate
from .systems import (BernoulliShift, CylinderPattern, LedrappierSystem,
                      PulledBackAction, fair_coin)

__version__ = "0.1.0"

__all__ = [
    "Report", "list_scenarios", "run_config", "run_experiment", "verify_report",
    "FolnerFamily", "GroupContext", "Hom", "fin_support", "integers", "int_vectors",
    "FiniteSumsFamily", "LargenessCert", "SeedMatrix",
    "enumerate_fs", "enumerate_sigma", "sigma_star_evidence",
    "SimplexArray", "find_homogeneous", "rlimit_estimate",
    "BernoulliShift", "CylinderPattern", "LedrappierSystem", "PulledBackAction",
    "fair_coin",
]
