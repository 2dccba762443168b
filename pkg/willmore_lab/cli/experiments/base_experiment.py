import operator
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from willmore_lab import settings
from willmore_lab.cli.config import ExperimentConfig
from willmore_lab.cli.render import render_table
from willmore_lab.disk_field import PolarField, PolarGrid
from willmore_lab.geometry import GaussPair, Geometry, analyze
from willmore_lab.solvers.reports import _clean
from willmore_lab.surfaces import CatalogSurface, sample

RELATIONS = {'<=': operator.le, '<': operator.lt, '>=': operator.ge, '>': operator.gt}
# errors at or below this are roundoff, refinement orders between such rungs carry no information
ROUNDOFF_FLOOR = 1e-10


@dataclass
class Criterion:
    """
    An in-run assertion, a run exits 0 only when every criterion passes
    """
    name: str
    value: Optional[float]
    threshold: float
    relation: str = '<='

    @property
    def passed(self) -> bool:
        if self.value is None or np.isnan(self.value):
            return False
        return bool(RELATIONS[self.relation](self.value, self.threshold))

    def to_dict(self) -> dict:
        return {'name': self.name, 'value': _clean(self.value), 'threshold': _clean(self.threshold),
                'relation': self.relation, 'passed': self.passed}

    def __str__(self) -> str:
        return f'{self.name}: {self.value} {self.relation} {self.threshold}'


def converges(errors: Sequence[float], orders: Sequence[float], floor: float = ROUNDOFF_FLOOR) -> float:
    """
    smallest observed order between rungs whose finer error is still above the roundoff floor
    :return: the order, inf when every finer rung sits at the floor, nan when an order is undefined
    """
    informative = [o for o, e in zip(orders, errors[1:]) if e > floor]
    if not informative:
        return np.inf
    return float(np.min(informative))


class BaseExperiment(ABC):
    """
    The base class for all experiments

    compute() fills self.results with json friendly values and self.criteria with in-run assertions,
    render() prints the tables.
    """
    name = ''
    default_n_r = settings.DEFAULT_N_R

    def __init__(self, config: ExperimentConfig):
        """
        :param config: the config of the run
        """
        self.config = config
        self.results: Dict[str, object] = {}
        self.criteria: List[Criterion] = []
        self.fields: Dict[str, PolarField] = {}
        self.tables: Dict[str, pd.DataFrame] = {}
        # sampled immersions written out as csv and ply
        self.exports: Dict[str, object] = {}

    def compute_render(self) -> None:
        """
        method which calculates results and prints the tables for the experiment
        :return: None
        """
        self.compute()
        self.render()

    @abstractmethod
    def compute(self) -> None:
        """
        method which calculates results for the experiment
        :return: None
        """
        pass

    def render(self) -> None:
        """
        prints every table the experiment built, then the criteria
        :return: None
        """
        for title, table in self.tables.items():
            render_table(table, title)
        if self.criteria:
            render_table(self.criteria_table(), 'Criteria')

    #
    # Helpers
    #
    @property
    def surface(self) -> Optional[str]:
        return self.config.surface

    def grid(self, n_r: int = None) -> PolarGrid:
        """
        grid of the config, or a refined copy with n_r radial nodes and twice as many angles
        """
        base_n_r, n_theta = self.config.grid_shape(self.default_n_r)
        if n_r is None or n_r == base_n_r:
            return PolarGrid(base_n_r, n_theta, self.config.fd_order)
        return PolarGrid(n_r, max(settings.MIN_N_THETA, 2 * n_r), self.config.fd_order)

    def geometry(self, entry: CatalogSurface, grid: PolarGrid = None) -> Union[Geometry, GaussPair]:
        """
        gauged geometry of a catalog chart, synthetic entries give their (n, H) pair
        """
        sampled = sample(entry, self.grid() if grid is None else grid)
        return sampled if isinstance(sampled, GaussPair) else analyze(sampled)

    def check(self, name: str, value: Optional[float], threshold: float, relation: str = '<=') -> Criterion:
        criterion = Criterion(name, None if value is None else float(value), float(threshold), relation)
        self.criteria.append(criterion)
        return criterion

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    @property
    def failures(self) -> List[Criterion]:
        return [c for c in self.criteria if not c.passed]

    def criteria_table(self) -> pd.DataFrame:
        return pd.DataFrame([c.to_dict() for c in self.criteria]).set_index('name')

    def to_dict(self) -> dict:
        return {
            'experiment': self.name,
            'results': _clean(self.results),
            'criteria': [c.to_dict() for c in self.criteria],
            'passed': self.passed,
        }
