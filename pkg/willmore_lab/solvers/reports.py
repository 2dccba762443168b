from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from willmore_lab.disk_field import PolarField, norm_l2


def _clean(value):
    """
    json friendly floats, nan and inf become None
    """
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return _clean(value.tolist())
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    value = float(value)
    return value if np.isfinite(value) else None


@dataclass
class SolveReport:
    """
    Output of an elliptic solve or an iterative scheme
    """
    solution: PolarField
    iterations: int = 0
    contraction_ratios: List[float] = field(default_factory=list)
    final_residual: float = 0.0
    estimate_ratio: Optional[float] = None
    scheme: str = ''
    extras: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'scheme': self.scheme,
            'iterations': self.iterations,
            'contraction_ratios': _clean(self.contraction_ratios),
            'final_residual': _clean(self.final_residual),
            'estimate_ratio': _clean(self.estimate_ratio),
            'solution_l2': _clean(norm_l2(self.solution)),
            'extras': _clean(self.extras),
        }


@dataclass
class EigenReport:
    """
    Eigenpairs of the willmore operator nearest to zero
    """
    eigenvalues: List[float]
    eigenfields: List[PolarField]
    orthonormality_defect: float
    diagonality_defect: float
    iterations: int
    regularity_probe: Dict[int, List[float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'eigenvalues': _clean(self.eigenvalues),
            'orthonormality_defect': _clean(self.orthonormality_defect),
            'diagonality_defect': _clean(self.diagonality_defect),
            'iterations': self.iterations,
            'regularity_probe': {str(k): _clean(v) for k, v in self.regularity_probe.items()},
        }


@dataclass
class ProbeReport:
    """
    Monte carlo measurement of an estimate constant, ratios keyed by the radial node count of each rung
    constants are reported, never asserted
    """
    probe: str
    samples: int
    ratios: Dict[int, List[float]] = field(default_factory=dict)
    extras: Dict[str, object] = field(default_factory=dict)

    def max_ratios(self) -> Dict[int, float]:
        return {n_r: max(values) for n_r, values in self.ratios.items() if values}

    def stability(self) -> Optional[float]:
        """
        largest relative change of the max ratio between consecutive rungs, None for a single rung
        """
        maxima = [v for _, v in sorted(self.max_ratios().items())]
        if len(maxima) < 2:
            return None
        changes = [abs(b - a) / abs(a) for a, b in zip(maxima[:-1], maxima[1:]) if a != 0]
        return max(changes) if changes else None

    def to_dict(self) -> dict:
        return {
            'probe': self.probe,
            'samples': self.samples,
            'max_ratios': {str(k): _clean(v) for k, v in self.max_ratios().items()},
            'stability': _clean(self.stability()),
            'ratios': {str(k): _clean(v) for k, v in self.ratios.items()},
            'extras': _clean(self.extras),
        }
