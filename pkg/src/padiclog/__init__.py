"""Exact computation of the distribution matrix attached to a weight-2
logarithm matrix, through base-p digits, with two independent oracles."""
from .distribution import DistributionValue, chromatic, digits, mu, mu_two_variable, run_structure
from .exact import QuadElem, QuadRing, quad_vp, vp
from .hecke import HeckeData, Mat2, classify, companion, hensel_unit_root, hensel_vp, root_matrix
from .logmatrix import cyclotomic, eval_lemma_check, log_truncation
from .oracle import constant_term_sum, mu_oracle, roots_of_unity_sum

__all__ = [
    "DistributionValue",
    "HeckeData",
    "Mat2",
    "QuadElem",
    "QuadRing",
    "chromatic",
    "classify",
    "companion",
    "constant_term_sum",
    "cyclotomic",
    "digits",
    "eval_lemma_check",
    "hensel_unit_root",
    "hensel_vp",
    "log_truncation",
    "mu",
    "mu_oracle",
    "mu_two_variable",
    "quad_vp",
    "root_matrix",
    "roots_of_unity_sum",
    "run_structure",
    "vp",
]
