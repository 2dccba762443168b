from .base_experiment import BaseExperiment, Criterion, converges
from .geometry_experiments import EnergyExperiment, MobiusCheckExperiment, ResidualExperiment
from .inversion_experiments import EigenExperiment, InvertAnExperiment, InvertLnExperiment
from .operator_experiments import HodgeExperiment, OperatorApplyExperiment, SelfAdjointExperiment
from .probe_experiments import LorentzNormExperiment, WeightedProbeExperiment, WenteProbeExperiment
from .regularity_experiments import BootstrapExperiment, ResidueExperiment

EXPERIMENTS = {
    experiment.name: experiment
    for experiment in (EnergyExperiment, ResidualExperiment, OperatorApplyExperiment, SelfAdjointExperiment,
                       HodgeExperiment, InvertAnExperiment, InvertLnExperiment, WenteProbeExperiment,
                       WeightedProbeExperiment, EigenExperiment, ResidueExperiment, BootstrapExperiment,
                       MobiusCheckExperiment, LorentzNormExperiment)
}

__all__ = [
    'BaseExperiment',
    'Criterion',
    'converges',
    'EXPERIMENTS',
    'EnergyExperiment',
    'ResidualExperiment',
    'OperatorApplyExperiment',
    'SelfAdjointExperiment',
    'HodgeExperiment',
    'InvertAnExperiment',
    'InvertLnExperiment',
    'WenteProbeExperiment',
    'WeightedProbeExperiment',
    'EigenExperiment',
    'ResidueExperiment',
    'BootstrapExperiment',
    'MobiusCheckExperiment',
    'LorentzNormExperiment',
]
