import logging
from typing import Dict, List

import numpy as np
import pandas as pd
from tqdm import tqdm

from willmore_lab import settings
from willmore_lab.cli.experiments.base_experiment import BaseExperiment, converges
from willmore_lab.cli.render import ladder_table, series_table
from willmore_lab.disk_field import PeriodicGrid, sup
from willmore_lab.disk_field.utils import observed_orders
from willmore_lab.geometry import analyze, check_laplacian_identity, check_normal_derivative_identity
from willmore_lab.solvers import GaussOperators, make_rng
from willmore_lab.surfaces import (
    apply_mobius,
    conformal_patch_energy,
    energy_report,
    get_surface,
    li_yau_flag,
    parametric_energy,
    random_mobius,
    sample,
)
from willmore_lab.willmore import cross_form_check, ladder_grid
from willmore_lab.willmore.residuals import INTERIOR, RESIDUALS

logger = logging.getLogger('willmore_lab')

ENERGY_TOL = 1e-6
ORDER_MIN = 2.0
# residual floor of non willmore charts, in units where the scalar residual of the t=2 torus is 1
NON_WILLMORE_FLOOR = 0.1
CROSS_FORM_TOL = 1e-2
FLAT_IDENTITY_TOL = 1e-12
# flat charts are exact up to this many laplacian roundoff floors of the finest rung
FLAT_ROUNDOFF_FACTOR = 100
MOBIUS_DRIFT_TOL = 1e-4
MOBIUS_SURFACES = ('sphere_stereo', 'catenoid', 'enneper', 'torus_rev', 'clifford_torus')


class EnergyExperiment(BaseExperiment):
    """
    Willmore energy of a catalog surface against its closed form, with the li yau flag
    """
    name = 'energy'

    def compute(self) -> None:
        entry = get_surface(self.surface or 'sphere_stereo')
        report = energy_report(entry, self.grid())
        self.results['energy'] = report.to_dict()
        if report.closed_form is not None:
            self.check('energy_closed_form', report.relative_error, ENERGY_TOL)
        if self.config.csv and entry.chart is not None:
            self.exports[entry.id] = sample(entry, self.grid())
        if self.config.csv and entry.periodic is not None:
            n_r, _ = self.config.grid_shape(self.default_n_r)
            self.exports[f'{entry.id}_closed'] = sample(entry, PeriodicGrid(2 * n_r, 2 * n_r))
        self.tables['Willmore Energy'] = series_table(report.to_dict(), entry.label)


class ResidualExperiment(BaseExperiment):
    """
    Both forms of the willmore equation and the pointwise chart identities along a refinement ladder

    Willmore charts must converge to zero at order >= 2, charts known not to be willmore must stay above a floor.
    """
    name = 'residual'

    def __init__(self, config):
        super().__init__(config)
        self.ladder = list(config.ladder or settings.DEFAULT_LADDER)
        self.forms = ['classical', 'divergence'] if config.form == 'both' else [config.form]
        self.sups: Dict[str, List[float]] = {}
        self.norms: Dict[str, Dict[str, dict]] = {}

    #
    # Calculation
    #
    def compute(self) -> None:
        """
        master function for the residual ladder
        :return: None
        """
        entry = get_surface(self.surface or 'catenoid')
        if entry.synthetic or entry.chart is None:
            raise ValueError(f'Invalid surface for residuals: {entry.label} has no conformal disk chart')
        names = list(self.forms)
        if entry.m == 3 and 'classical' in names and 'scalar_m3' not in names:
            names.append('scalar_m3')
        names += ['normal_derivative', 'laplacian_phi']

        geom = None
        for n_r in tqdm(self.ladder, desc='residual ladder', disable=not self.config.progress):
            geom = analyze(sample(entry, ladder_grid(n_r)))
            for name, residual in self._residual_fields(geom, names).items():
                self.sups.setdefault(name, []).append(sup(residual, INTERIOR))
                self.norms.setdefault(name, {})[str(n_r)] = {'sup': self.sups[name][-1]}
            logger.debug('residual rung %d done', n_r)

        self.compute_orders(entry, names)
        if entry.m == 3:
            self.compute_cross_form(entry, geom)
        self.fields.update({f'{form}_residual': RESIDUALS[form](geom).residual_field for form in self.forms})

    def _residual_fields(self, geom, names: List[str]) -> dict:
        out = {}
        ops = GaussOperators(geom.n)
        for name in names:
            if name == 'normal_derivative':
                out[name] = check_normal_derivative_identity(geom.frames, geom.second)
            elif name == 'laplacian_phi':
                out[name] = check_laplacian_identity(geom.immersion, geom.second, geom.lam)
            elif name == 'divergence':
                out[name] = RESIDUALS[name](geom, ops).residual_field
            else:
                out[name] = RESIDUALS[name](geom).residual_field
        return out

    def compute_orders(self, entry, names: List[str]) -> None:
        """
        observed orders and the criteria of every form and identity
        :return: None
        """
        flat = entry.id == 'flat'
        for name in names:
            sups = self.sups[name]
            orders = observed_orders(sups, self.ladder)
            self.results[name] = {'ladder': self.norms[name], 'refinement_orders': orders}
            self.tables[f'{name} residual'] = ladder_table(self.norms[name], orders)

            identity = name in ('normal_derivative', 'laplacian_phi')
            if flat:
                self.check(f'{name}_flat_exact', sups[-1], self.flat_tolerance())
            elif identity or entry.willmore:
                self.check(f'{name}_order', converges(sups, orders), ORDER_MIN, '>=')
            elif entry.willmore is False:
                self.check(f'{name}_floor', sups[-1], NON_WILLMORE_FLOOR, '>')

    def flat_tolerance(self) -> float:
        """
        exactness threshold of the flat chart, the larger of FLAT_IDENTITY_TOL and the roundoff of the finest rung
        """
        return max(FLAT_IDENTITY_TOL, FLAT_ROUNDOFF_FACTOR * ladder_grid(self.ladder[-1]).roundoff_floor)

    def compute_cross_form(self, entry, geom) -> None:
        """
        factor between L_n H and e^(2 lambda) times the classical residual on the finest rung
        :return: None
        """
        cross = cross_form_check(geom)
        self.results['cross_form'] = cross
        self.tables['Cross Form'] = series_table(cross, entry.label)
        if entry.willmore is False:
            self.check('cross_form_defect', cross['defect'], CROSS_FORM_TOL)


class MobiusCheckExperiment(BaseExperiment):
    """
    Energy drift under random admissible mobius maps

    Closed surfaces compare the willmore energy on their periodic parametrization, disk charts compare the
    conformal energy int (|H|^2 - K) dvol. Drifts are relative to max(|E|, 1).
    """
    name = 'mobius-check'

    def compute(self) -> None:
        surfaces = [self.surface] if self.surface else list(MOBIUS_SURFACES)
        rows = {}
        for surface in surfaces:
            entry = get_surface(surface)
            if entry.synthetic:
                raise ValueError(f'Invalid surface for the mobius check: {entry.label} is synthetic')
            drifts, before, energies = self.drifts(entry)
            self.results[entry.label] = {'energy': before, 'transformed': energies, 'drifts': drifts,
                                         'max_drift': max(drifts)}
            if entry.periodic is not None:
                self.results[entry.label]['li_yau'] = li_yau_flag(before)
            self.check(f'mobius_drift[{entry.label}]', max(drifts), MOBIUS_DRIFT_TOL)
            rows[entry.label] = {'energy': before, 'max_drift': max(drifts), 'mean_drift': float(np.mean(drifts))}
        self.tables['Mobius Invariance'] = pd.DataFrame.from_dict(rows, orient='index')

    def drifts(self, entry):
        """
        :return: (relative drifts, energy before, energies after)
        """
        n_r, _ = self.config.grid_shape(self.default_n_r)
        if entry.periodic is not None:
            target = sample(entry, PeriodicGrid(2 * n_r, 2 * n_r))
            energy, points = parametric_energy, target.values
        else:
            target = sample(entry, self.grid())
            energy, points = conformal_patch_energy, target.phi.values

        rng = make_rng(self.config.seed)
        before = energy(target)
        scale = max(abs(before), 1.0)
        energies, drifts = [], []
        for _ in tqdm(range(self.config.transforms), desc=f'mobius {entry.label}', disable=not self.config.progress):
            T = random_mobius(rng, points)
            energies.append(energy(apply_mobius(target, T)))
            drifts.append(abs(energies[-1] - before) / scale)
        logger.info('mobius drift of %s: max %.3e', entry.label, max(drifts))
        return drifts, before, energies
