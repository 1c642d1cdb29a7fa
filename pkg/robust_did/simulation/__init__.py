"""
Robust-DID Simulation Module

Monte-Carlo designs, their analytic truths and coverage studies.
"""

from .coverage import CoverageRow, SimulationReport, run_coverage_study, simulation_seed
from .dgp import DgpSpec, default_roles, gen_ashenfelter, gen_covariate_example, gen_staggered, generate, standard_normal
from .truths import IdentifiedSet, TruthSet, analytic_truths, selection_gap, staggered_att, staggered_mu


__all__ = [
    # Designs
    "DgpSpec",
    "default_roles",
    "gen_ashenfelter",
    "gen_covariate_example",
    "gen_staggered",
    "generate",
    "standard_normal",
    # Truths
    "IdentifiedSet",
    "TruthSet",
    "analytic_truths",
    "selection_gap",
    "staggered_att",
    "staggered_mu",
    # Coverage
    "CoverageRow",
    "SimulationReport",
    "run_coverage_study",
    "simulation_seed",
]
