import numpy as np
import pandas as pd

from willmore_lab import settings
from willmore_lab.cli.experiments.base_experiment import BaseExperiment
from willmore_lab.cli.render import series_table
from willmore_lab.surfaces import cap, expected_residue, get_surface
from willmore_lab.willmore import bootstrap_report, decay_profiles, residue

RESIDUE_TOL = 0.01
SPREAD_TOL = 0.01
BOOTSTRAP_STABILITY_TOL = 0.20
BOOTSTRAP_FAMILY = (0.01, 0.02, 0.04)


class ResidueExperiment(BaseExperiment):
    """
    Residue of L_n H at the origin, recovered from fluxes through dyadic annuli
    """
    name = 'residue'
    default_n_r = settings.RESIDUE_GRID_N_R

    def compute(self) -> None:
        surface = self.surface or 'log_singular'
        params = {'H0': list(self.config.H0)} if self.config.H0 is not None else {}
        entry = get_surface(surface, **params) if surface.startswith('log_singular') else get_surface(surface)
        geom = self.geometry(entry)

        report = residue(geom, self.config.radii)
        profile = decay_profiles(geom)
        self.results = {'surface': entry.label, 'residue': report.to_dict(), 'decay': profile.to_dict()}
        if entry.id == 'log_singular':
            c0_norm = float(np.linalg.norm(report.c0))
            self.check('flux_spread', report.spread / max(c0_norm, settings.RESIDUE_FLOOR), SPREAD_TOL)
            expected = expected_residue(entry.params['H0'])
            error = float(np.linalg.norm(report.c0 - expected) / np.linalg.norm(expected))
            self.results['expected_c0'] = expected
            self.check('residue_recovered', error, RESIDUE_TOL)
            self.check('radii_resolved', len(report.extras['unresolved_radii']), 0)

        fluxes = pd.DataFrame(np.stack(report.flux_per_radius), index=report.radii,
                              columns=[f'c_{i}' for i in range(np.size(report.c0))])
        fluxes.index.name = 'radius'
        self.tables['Fluxes'] = fluxes
        self.tables['Residue'] = series_table({f'H0_{i}': float(h) for i, h in enumerate(np.atleast_1d(report.H0))},
                                              entry.label)
        self.tables['Decay'] = pd.DataFrame({'delta': profile.delta_r, 'nu': profile.nu_r}, index=profile.radii)


class BootstrapExperiment(BaseExperiment):
    """
    The chain of estimates from small energy to a pointwise gradient bound, on a family of near flat caps
    """
    name = 'bootstrap'

    def compute(self) -> None:
        if self.surface:
            entries = [get_surface(self.surface)]
        else:
            entries = [cap(rho) for rho in self.config.family or BOOTSTRAP_FAMILY]

        rows = {}
        scheme = self.config.scheme or 'neumann_series'
        for entry in entries:
            report = bootstrap_report(self.geometry(entry), self.config.epsilon, scheme)
            self.results[entry.label] = report.to_dict()
            rows[entry.label] = {'energy': report.energy, 'final_ratio': report.final_ratio,
                                 'localization_defect': report.localization_defect, 'remainder': report.remainder,
                                 **{f'C_{k}': v for k, v in report.constants.items()}}

        table = pd.DataFrame.from_dict(rows, orient='index')
        ratios = table['final_ratio'].astype(float).to_numpy()
        spread = float((ratios.max() - ratios.min()) / ratios.min()) if np.all(ratios > 0) else None
        self.results['final_ratio_spread'] = spread
        self.check('final_ratio_stability', spread, BOOTSTRAP_STABILITY_TOL)
        self.tables['Bootstrap'] = table
