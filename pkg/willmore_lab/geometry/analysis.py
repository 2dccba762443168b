import logging
from dataclasses import dataclass

from willmore_lab.disk_field import PolarField, PolarGrid
from willmore_lab.exterior.fields import ambient_dimension
from willmore_lab.geometry.curvature import SecondFundamental, ShapeOperators, second_fundamental, shape_operators
from willmore_lab.geometry.frames import FrameBundle, build_frames, coulomb_gauge
from willmore_lab.geometry.immersion import Immersion, require_conformal

logger = logging.getLogger('willmore_lab')


@dataclass
class Geometry:
    """
    Everything derived from a conformal immersion, computed once by analyze
    """
    immersion: Immersion
    frames: FrameBundle
    second: SecondFundamental
    shape: ShapeOperators
    lam: PolarField
    defect: float

    @property
    def n(self) -> PolarField:
        """
        gauss map blade field
        """
        return self.frames.gauss

    @property
    def H(self) -> PolarField:
        return self.second.H

    @property
    def m(self) -> int:
        return self.immersion.m

    @property
    def grid(self) -> PolarGrid:
        return self.immersion.grid

    @property
    def source(self) -> str:
        return self.immersion.source


@dataclass
class GaussPair:
    """
    A gauss map and a mean curvature field that do not come from an immersion
    used for synthetic singular data where only n and H enter
    """
    n: PolarField
    H: PolarField
    source: str = 'synthetic'
    synthetic: bool = True

    @property
    def m(self) -> int:
        return ambient_dimension(self.n.cshape[-1])

    @property
    def grid(self) -> PolarGrid:
        return self.n.grid


def analyze(im: Immersion, gauge: bool = True) -> Geometry:
    """
    conformal factor, frames, second fundamental form and shape operators of an immersion
    :param im: conformal immersion
    :param gauge: apply the coulomb gauge to the normal frame
    :return: Geometry
    :raise ConformalityError: if the chart is degenerate or not conformal
    """
    lam, defect = require_conformal(im)
    frames = build_frames(im)
    if gauge:
        frames = coulomb_gauge(frames)
    second = second_fundamental(frames)
    shape = shape_operators(frames, second)
    logger.debug('analyzed %s on %s, conformal defect %.3e', im.source, im.grid, defect)
    return Geometry(im, frames, second, shape, lam, defect)
