"""
Pointwise identities of conformal charts, each returned as an error field that vanishes in the continuum
"""
import numpy as np

from willmore_lab.disk_field import PolarField, div, grad, integrate, laplacian, perp_grad
from willmore_lab.disk_field.grid import Region
from willmore_lab.errors import GaugeError
from willmore_lab.exterior import apply_projector, embed_vectors, normal_projectors, wedge_star
from willmore_lab.geometry.curvature import SecondFundamental, ShapeOperators, gauss_curvature, second_fundamental
from willmore_lab.geometry.frames import FrameBundle
from willmore_lab.geometry.immersion import Immersion, conformal_factor


def check_normal_derivative_identity(fb: FrameBundle, sf: SecondFundamental) -> PolarField:
    """
    grad n_a + (-1)^(m-1) *(n ^ perp_grad n_a) - sum_b (grad n_a, n_b) n_b + 2 H^a grad Phi
    grad Phi = e^lambda (e1, e2)
    :param fb: frames of a conformal chart
    :param sf: second fundamental form of the same frames
    :return: error field of cshape (2, m-2, m)
    """
    normals = fb.normals
    gradient = grad(normals).values
    perp = embed_vectors(perp_grad(normals).values)
    gauss = np.broadcast_to(fb.gauss.values[:, :, None, None, :], perp.shape)
    starred = wedge_star(gauss, perp)
    sign = -1.0 if fb.m % 2 == 0 else 1.0

    gauge = np.einsum('rtiab,rtbm->rtiam', fb.gauge_conn.values, normals.values)
    d_phi = np.exp(fb.lam.values)[..., None] * np.stack([fb.e1.values, fb.e2.values], axis=2)
    mean = 2 * sf.H_comp.values[:, :, None, :, None] * d_phi[:, :, :, None, :]
    return PolarField(fb.grid, gradient + sign * starred - gauge + mean, name='normal_derivative_error')


def check_laplacian_identity(im: Immersion, sf: SecondFundamental, lam: PolarField = None) -> PolarField:
    """
    laplacian(Phi) - 2 e^(2 lambda) H
    :param im: the immersion
    :param sf: its second fundamental form
    :param lam: conformal factor, read from the immersion when omitted
    :return: error field of cshape (m,)
    """
    if lam is None:
        lam, _ = conformal_factor(im)
    rhs = 2 * np.exp(2 * lam.values) * sf.H.values
    return PolarField(im.grid, laplacian(im.phi).values - rhs, name='laplacian_phi_error')


def normal_laplacian(fb: FrameBundle, sf: SecondFundamental) -> PolarField:
    """
    normal laplacian of H through the frame expansion, valid in coulomb gauge
    e^(2 lambda) lap_n H = sum_a lap(H^a) n_a + 2 sum_ab grad H^a . w_ab n_b + sum_abc H^a w_ab . w_bc n_c
    with w_ab = (grad n_a, n_b)
    :param fb: coulomb gauged frames
    :param sf: second fundamental form
    :return: field of cshape (m,)
    :raise GaugeError: if the frames are not gauged
    """
    if not fb.gauged:
        raise GaugeError('normal_laplacian needs coulomb gauged frames, call coulomb_gauge first')
    H = sf.H_comp
    omega = fb.gauge_conn.values
    n = fb.normals.values

    first = laplacian(H).values
    second = 2 * np.einsum('rtia,rtiab->rtb', grad(H).values, omega)
    third = np.einsum('rta,rtiab,rtibc->rtc', H.values, omega, omega)
    coefficients = first + second + third
    values = np.einsum('rtc,rtcm->rtm', coefficients, n) * np.exp(-2 * fb.lam.values)
    return PolarField(fb.grid, values, name='normal_laplacian')


def normal_laplacian_direct(fb: FrameBundle, sf: SecondFundamental) -> PolarField:
    """
    pi_n div(pi_n grad H) / e^(2 lambda) with the projector taken from the gauss map, no frame expansion
    """
    P = normal_projectors(fb.gauss.values)
    projected = PolarField(fb.grid, apply_projector(P, grad(sf.H).values))
    values = apply_projector(P, div(projected).values) * np.exp(-2 * fb.lam.values)
    return PolarField(fb.grid, values, name='normal_laplacian_direct')


def projector_routes_defect(fb: FrameBundle) -> float:
    """
    max over nodes of |P_gauss - sum_a n_a n_a^T|, the two routes to pi_n
    """
    gauss_route = normal_projectors(fb.gauss.values)
    frame_route = np.einsum('rtam,rtan->rtmn', fb.normals.values, fb.normals.values)
    return float(np.max(np.abs(gauss_route - frame_route)))


def shape_operator_defect(fb: FrameBundle, so: ShapeOperators, sf: SecondFundamental) -> float:
    """
    max over nodes and normals of |A~(H) . n_a| assembled from A_w against the sum B (B . H) formula
    """
    gram_route = np.einsum('rtm,rtam->rta', so.A_tilde(sf.H).values, fb.normals.values)
    formula_route = np.einsum('rtm,rtam->rta', so.A_tilde_of_H.values, fb.normals.values)
    return float(np.max(np.abs(gram_route - formula_route)))


def total_curvature(fb: FrameBundle, region: Region = None, sf: SecondFundamental = None) -> float:
    """
    int K dvol = int K e^(2 lambda) dx over a region of the chart
    """
    K = gauss_curvature(sf if sf is not None else second_fundamental(fb))
    return integrate(K * PolarField(fb.grid, np.exp(2 * fb.lam.values)), region)
