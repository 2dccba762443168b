import numpy as np
import pandas as pd

from willmore_lab import settings
from willmore_lab.cli.experiments.base_experiment import BaseExperiment
from willmore_lab.cli.render import series_table
from willmore_lab.disk_field import integrate, norm_l2, sup
from willmore_lab.solvers import GaussOperators, make_rng, random_scalar_field
from willmore_lab.surfaces import get_surface
from willmore_lab.willmore import (
    constant_vector_image,
    hodge_system_fields,
    self_adjointness_check,
    willmore_operator_apply,
    willmore_pairing,
)
from willmore_lab.willmore.residuals import INTERIOR

PAIRING_TOL = 1e-6
SELFADJOINT_TOL = 1e-6
ENERGY_IDENTITY_TOL = 0.02


class OperatorApplyExperiment(BaseExperiment):
    """
    L_n H of a catalog surface in strong form, checked against the weak pairing with a compact test function
    """
    name = 'operator-apply'

    def compute(self) -> None:
        entry = get_surface(self.surface or 'catenoid')
        geom = self.geometry(entry)
        ops = GaussOperators(geom.n)
        applied = willmore_operator_apply(geom.n, geom.H, ops)

        phi = random_scalar_field(geom.grid, make_rng(self.config.seed), compact=True)
        weak = np.atleast_1d(willmore_pairing(geom.n, geom.H, phi, ops))
        strong = np.atleast_1d(integrate(applied * phi))
        scale = max(float(np.linalg.norm(strong)), norm_l2(applied) * norm_l2(phi), np.finfo(float).tiny)
        defect = float(np.linalg.norm(weak - strong)) / scale

        e1 = np.eye(geom.m)[0]
        image = constant_vector_image(geom.n, e1, ops)
        self.results = {
            'surface': entry.label,
            'l2': norm_l2(applied, INTERIOR),
            'sup': sup(applied, INTERIOR),
            'weak_pairing': weak,
            'strong_pairing': strong,
            'pairing_defect': defect,
            'constant_image_l2': norm_l2(image),
        }
        if not entry.synthetic:
            self.check('weak_strong_pairing', defect, PAIRING_TOL)
        self.fields['L_n_H'] = applied
        self.fields['constant_image'] = image
        self.tables['Willmore Operator'] = series_table(
            {k: v for k, v in self.results.items() if np.ndim(v) == 0}, entry.label)


class SelfAdjointExperiment(BaseExperiment):
    """
    Relative defect |<L_n v, w> - <v, L_n w>| over random compactly supported v, w and random smooth n
    """
    name = 'selfadjoint-check'
    default_samples = 1000

    def compute(self) -> None:
        samples = self.config.samples or self.default_samples
        amplitude = 0.2 if self.config.amplitude is None else self.config.amplitude
        report = self_adjointness_check(self.grid(), samples, self.config.seed, self.config.m, amplitude,
                                        self.config.ladder, self.config.progress)
        self.results = report.to_dict()
        worst = max(max(defects) for defects in report.ratios.values())
        self.check('selfadjoint_defect', worst, SELFADJOINT_TOL)
        self.tables['Self Adjointness'] = pd.DataFrame(
            {n_r: {'max': max(d), 'mean': float(np.mean(d)), 'samples': len(d)} for n_r, d in report.ratios.items()}
        ).transpose()


class HodgeExperiment(BaseExperiment):
    """
    Hodge decomposition of the willmore field into (A, B), the jacobian systems they solve and the energy identity
    """
    name = 'hodge'

    def compute(self) -> None:
        entry = get_surface(self.surface or 'sphere_stereo')
        geom = self.geometry(entry)
        report = hodge_system_fields(geom)
        self.results = report.to_dict()
        self.check('hodge_roundtrip', report.roundtrip, settings.HODGE_TOL)
        self.check('hodge_orthogonality', max(report.orthogonality.values()), settings.HODGE_TOL)
        if entry.id == 'sphere_stereo':
            self.check('energy_identity', report.energy_identity['relative_defect'], ENERGY_IDENTITY_TOL)

        self.fields.update({'A': report.A, 'B': report.B, 'harmonic': report.harmonic})
        summary = {'roundtrip': report.roundtrip, 'harmonic_defect': report.harmonic_defect}
        summary.update({f'orthogonality {k}': v for k, v in report.orthogonality.items()})
        summary.update({f'jacobian {k}': v for k, v in report.jacobian_defects.items()})
        summary.update({f'energy {k}': v for k, v in report.energy_identity.items()})
        summary.update(report.boundary_checks)
        self.tables['Hodge System'] = series_table(summary, entry.label)
