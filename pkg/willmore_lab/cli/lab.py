import logging

from willmore_lab.cli.config import ExperimentConfig
from willmore_lab.cli.experiments import EXPERIMENTS, BaseExperiment, Criterion
from willmore_lab.errors import ConformalityError, GaugeError, SmallEnergyError, SolverError

logger = logging.getLogger('willmore_lab')

NUMERICAL_ERRORS = (SolverError, ConformalityError, GaugeError, SmallEnergyError)


class Lab:
    """
    Runs experiments from configs

    One experiment per run, results stay on the experiment object for the report writer.
    A numerical failure becomes a failed criterion of the experiment, a ValueError is a usage error and propagates.
    """

    def __init__(self, config: ExperimentConfig):
        """
        :param config: config of the run, config.command picks the experiment
        """
        self._config = config

    @property
    def config(self) -> ExperimentConfig:
        return self._config

    def build(self) -> BaseExperiment:
        """
        the experiment of config.command, not computed yet
        """
        return EXPERIMENTS[self._config.command](self._config)

    def run(self, render: bool = True) -> BaseExperiment:
        """
        computes the experiment of the config and prints its tables
        :param render: print the tables
        :return: the computed experiment, failed if a solver or the geometry gave up
        """
        experiment = self.build()
        logger.info('running %s with seed %d', experiment.name, self._config.seed)
        try:
            if render:
                experiment.compute_render()
            else:
                experiment.compute()
        except NUMERICAL_ERRORS as e:
            logger.error('%s failed: %s', experiment.name, e)
            experiment.criteria.append(Criterion(f'{type(e).__name__}: {e}', None, 0.0))
        return experiment
