import json
from typing import Optional, Sequence, Tuple

from willmore_lab import settings

COMMANDS = ('energy', 'residual', 'operator-apply', 'selfadjoint-check', 'hodge', 'invert-an', 'invert-ln',
            'wente-probe', 'weighted-probe', 'eigen', 'residue', 'bootstrap', 'mobius-check', 'lorentz-norm')
RESIDUAL_FORMS = ('classical', 'divergence', 'scalar_m3', 'both')


def _as_tuple(value, cast=float) -> Optional[Tuple]:
    """
    '32,64,128', [32, 64] or None
    """
    if value is None:
        return None
    if isinstance(value, str):
        value = [v for v in value.split(',') if v.strip()]
    return tuple(cast(v) for v in value)


class ExperimentConfig:
    """
    Everything an experiment run depends on

    Options left at None take the default of the experiment that runs. The config is serialized into every
    report, so two runs with equal configs produce byte identical reports.
    """

    def __init__(self,
                 command: str,
                 surface: Optional[str] = None,
                 n_r: Optional[int] = None,
                 n_theta: Optional[int] = None,
                 fd_order: int = settings.DEFAULT_FD_ORDER,
                 ladder: Optional[Sequence[int]] = None,
                 form: str = 'both',
                 samples: Optional[int] = None,
                 seed: int = 0,
                 epsilon: float = settings.SMALL_ENERGY_EPSILON,
                 tol: float = settings.ITERATION_TOL,
                 max_iterations: int = settings.MAX_ITERATIONS,
                 scheme: Optional[str] = None,
                 data_class: str = 'h_minus_1',
                 m: int = 3,
                 amplitude: Optional[float] = None,
                 k: int = 2,
                 H0: Optional[Sequence[float]] = None,
                 radii: Optional[Sequence[float]] = None,
                 family: Optional[Sequence[float]] = None,
                 transforms: int = 20,
                 which: str = '2,inf',
                 output: Optional[str] = None,
                 csv: bool = False,
                 progress: bool = False
                 ) -> None:
        """
        :param command: experiment to run, one of COMMANDS
        :param surface: catalog surface id, for example 'torus_rev(t=2)'
        :param n_r: radial node count, n_theta defaults to 2 n_r
        :param fd_order: finite difference order of the radial derivatives
        :param ladder: radial node counts of a refinement ladder
        :param form: residual form, 'both' runs the classical and the divergence form
        :param samples: monte carlo sample count
        :param seed: seed of the philox generator
        :param epsilon: small energy threshold on int |grad n|^2
        :param tol: stopping tolerance of the iterative schemes
        :param max_iterations: iteration cap of the iterative schemes
        :param scheme: solver scheme, compared against the direct solve
        :param data_class: 'h_minus_1' or 'l1' data for invert-ln
        :param m: ambient dimension of random gauss maps
        :param amplitude: size of random gauss map perturbations
        :param k: count of eigenpairs
        :param H0: residue vector of the log_singular family
        :param radii: radii of the residue flux fit
        :param family: cap radii of the bootstrap family
        :param transforms: random mobius maps per surface
        :param which: lorentz norm, '2,1', '2,inf' or '2,2'
        :param output: report path, a directory or a .json file
        :param csv: also dump the computed fields as csv
        :param progress: show progress bars
        """
        self.command = command
        self.surface = surface
        self.n_r = None if n_r is None else int(n_r)
        self.n_theta = None if n_theta is None else int(n_theta)
        self.fd_order = int(fd_order)
        self.ladder = _as_tuple(ladder, int)
        self.form = form
        self.samples = None if samples is None else int(samples)
        self.seed = int(seed)
        self.epsilon = float(epsilon)
        self.tol = float(tol)
        self.max_iterations = int(max_iterations)
        self.scheme = scheme
        self.data_class = data_class
        self.m = int(m)
        self.amplitude = None if amplitude is None else float(amplitude)
        self.k = int(k)
        self.H0 = _as_tuple(H0)
        self.radii = _as_tuple(radii)
        self.family = _as_tuple(family)
        self.transforms = int(transforms)
        self.which = which
        self.output = output
        self.csv = bool(csv)
        self.progress = bool(progress)
        self._validate_inputs()

    def _validate_inputs(self) -> None:
        """
        Ensures the inputs are valid
        :raise ValueError: if inputs are invalid
        """
        if self.command not in COMMANDS:
            raise ValueError(f'Invalid command: {self.command}, expected one of {COMMANDS}')
        if self.n_r is not None and self.n_r < 2:
            raise ValueError(f'Invalid n_r: {self.n_r}')
        if self.n_theta is not None and (self.n_theta < settings.MIN_N_THETA or self.n_theta % 2):
            raise ValueError(f'Invalid n_theta: {self.n_theta}, must be even and at least {settings.MIN_N_THETA}')
        if self.fd_order < 2 or self.fd_order % 2:
            raise ValueError(f'Invalid fd_order: {self.fd_order}')
        if self.ladder is not None and (len(self.ladder) < 2 or list(self.ladder) != sorted(set(self.ladder))):
            raise ValueError(f'Invalid ladder: {self.ladder}, expected at least two increasing node counts')
        if self.form not in RESIDUAL_FORMS:
            raise ValueError(f'Invalid form: {self.form}, expected one of {RESIDUAL_FORMS}')
        if self.samples is not None and self.samples < 1:
            raise ValueError(f'Invalid samples: {self.samples}')
        if self.seed < 0:
            raise ValueError(f'Invalid seed: {self.seed}')
        if self.epsilon <= 0:
            raise ValueError(f'Invalid epsilon: {self.epsilon}')
        if self.tol <= 0 or self.max_iterations < 1:
            raise ValueError(f'Invalid iteration controls: tol {self.tol}, max_iterations {self.max_iterations}')
        if self.data_class not in ('h_minus_1', 'l1'):
            raise ValueError(f'Invalid data_class: {self.data_class}')
        if not 3 <= self.m <= 4:
            raise ValueError(f'Invalid m: {self.m}, random gauss maps are built for m = 3 and m = 4')
        if self.k < 1:
            raise ValueError(f'Invalid k: {self.k}')
        if self.H0 is not None and len(self.H0) < 3:
            raise ValueError(f'Invalid H0: {self.H0}')
        if self.radii is not None and (len(self.radii) < 4 or not all(0 < r <= 1 for r in self.radii)):
            raise ValueError(f'Invalid radii: {self.radii}, expected at least four radii in (0, 1]')
        if self.family is not None and not all(f > 0 for f in self.family):
            raise ValueError(f'Invalid family: {self.family}')
        if self.transforms < 1:
            raise ValueError(f'Invalid transforms: {self.transforms}')

    def grid_shape(self, default_n_r: int = settings.DEFAULT_N_R) -> Tuple[int, int]:
        n_r = default_n_r if self.n_r is None else self.n_r
        n_theta = max(settings.MIN_N_THETA, 2 * n_r) if self.n_theta is None else self.n_theta
        return n_r, n_theta

    def copy(self, **kwargs) -> 'ExperimentConfig':
        """
        a new config with some values replaced
        """
        base = self.to_dict()
        base.update(kwargs)
        return ExperimentConfig(**base)

    def to_dict(self) -> dict:
        return {
            'command': self.command,
            'surface': self.surface,
            'n_r': self.n_r,
            'n_theta': self.n_theta,
            'fd_order': self.fd_order,
            'ladder': None if self.ladder is None else list(self.ladder),
            'form': self.form,
            'samples': self.samples,
            'seed': self.seed,
            'epsilon': self.epsilon,
            'tol': self.tol,
            'max_iterations': self.max_iterations,
            'scheme': self.scheme,
            'data_class': self.data_class,
            'm': self.m,
            'amplitude': self.amplitude,
            'k': self.k,
            'H0': None if self.H0 is None else list(self.H0),
            'radii': None if self.radii is None else list(self.radii),
            'family': None if self.family is None else list(self.family),
            'transforms': self.transforms,
            'which': self.which,
            'output': self.output,
            'csv': self.csv,
            'progress': self.progress,
        }

    @classmethod
    def from_file(cls, path: str, **flags) -> 'ExperimentConfig':
        """
        config from a json file, values in the file win over the flags
        :param path: json object with ExperimentConfig keyword arguments
        :param flags: values given on the command line
        """
        with open(path) as handle:
            loaded = json.load(handle)
        if not isinstance(loaded, dict):
            raise ValueError(f'Invalid config file {path}: expected a json object')
        unknown = set(loaded) - set(cls('energy').to_dict())
        if unknown:
            raise ValueError(f'Invalid config keys in {path}: {sorted(unknown)}')
        return cls(**{**flags, **loaded})

    def __repr__(self) -> str:
        return f'ExperimentConfig({self.to_dict()})'
