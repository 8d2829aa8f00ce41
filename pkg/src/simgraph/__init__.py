"""Numerical toolkit for similarity graphs with difficult-to-learn samples:
structured graph construction, closed-form and dense spectra, linear-probing
error bounds, margin/temperature corrections, matrix-factorization losses,
probing with label corruption, a synthetic contrastive-training harness, and
Gaussian perturbation checks.
"""

from .params import DegreeConstants, GraphParams, ValidationError, \
    degree_constants, removed_degree
from .graph import GraphMode, NormalizedGraph, SimilarityGraph, \
    build_adjacency, normalize, without_difficult_target
from .eigensolver import AsymmetricInputError, symmetric_eigenvalues
from .spectrum import Spectrum, closed_form_removed, \
    closed_form_with_components, closed_form_without, component_matrices, \
    dense_eigenvalues, weyl_lambda_bound, weyl_min_combination
from .bounds import BoundReport, bound_margin, bound_removed, \
    bound_temperature, bound_with, bound_without, compare_bounds, \
    removal_crossover_threshold, temperature_nd_threshold
from .corrections import MarginMatrix, TemperatureMatrix, margin_matrix, \
    normalized_margin, temperature_matrix, verify_margin_correction, \
    verify_temperature_correction
from .factorize import DivergenceError, OptimizeConfig, OptimizeResult, \
    gradient, mf_loss, optimize, phi_tilde, psd_rank_k_residual, spectral_loss
from .probe import ProbeResult, corrupt_labels, fit_linear_probe, predict, \
    probe_error, welch_t_test
from .pipeline import SCENARIOS, run_probe, scenario_bound, scenario_setup
from .harness import SelectionMatrix, SyntheticDataset, TrainConfig, \
    VARIANTS, augment, batch_loss, cosine_similarity_matrix, \
    different_class_ratio, make_dataset, select_pairs, train
from .perturb import LambdaShiftReport, PerturbConfig, SpectralLawReport, \
    empirical_spectral_law, mc_lambda_shift, perturb_normalized, \
    sample_symmetric_gaussian

__version__ = "0.1.0"
