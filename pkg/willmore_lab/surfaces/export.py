from typing import Tuple, Union

import numpy as np
import pandas as pd

from willmore_lab.disk_field.io import PathLike, field_to_frame
from willmore_lab.geometry import Immersion
from willmore_lab.surfaces.parametric import PeriodicImmersion


def _vertices_and_faces(target: Union[Immersion, PeriodicImmersion]) -> Tuple[np.array, np.array]:
    """
    node positions and triangles, each grid quad split along its diagonal
    disk charts wrap in theta, periodic surfaces wrap in both directions
    """
    if isinstance(target, PeriodicImmersion):
        values = target.values
        rows, cols = values.shape[:2]
        wrap_rows = True
    else:
        values = target.phi.values
        rows, cols = values.shape[:2]
        wrap_rows = False
    vertices = values[..., :3].reshape(-1, 3)

    i, j = np.meshgrid(np.arange(rows if wrap_rows else rows - 1), np.arange(cols), indexing='ij')
    i_next = (i + 1) % rows
    j_next = (j + 1) % cols
    a = i * cols + j
    b = i_next * cols + j
    c = i_next * cols + j_next
    d = i * cols + j_next
    faces = np.concatenate([np.stack([a, b, c], axis=-1).reshape(-1, 3), np.stack([a, c, d], axis=-1).reshape(-1, 3)])
    return vertices, faces


def write_ply(target: Union[Immersion, PeriodicImmersion], path: PathLike) -> None:
    """
    ascii ply of the first three coordinates, for external viewers
    """
    vertices, faces = _vertices_and_faces(target)
    header = '\n'.join([
        'ply',
        'format ascii 1.0',
        f'comment {target.source}',
        f'element vertex {vertices.shape[0]}',
        'property double x',
        'property double y',
        'property double z',
        f'element face {faces.shape[0]}',
        'property list uchar int vertex_indices',
        'end_header',
    ])
    vertex_lines = pd.DataFrame(vertices).to_csv(sep=' ', header=False, index=False, float_format='%.17g')
    face_frame = pd.DataFrame(faces)
    face_frame.insert(0, 'count', 3)
    face_lines = face_frame.to_csv(sep=' ', header=False, index=False)
    with open(path, 'w') as handle:
        handle.write(header + '\n')
        handle.write(vertex_lines)
        handle.write(face_lines)


def immersion_frame(target: Union[Immersion, PeriodicImmersion]) -> pd.DataFrame:
    """
    one row per node with the chart coordinates and phi_0 ... phi_(m-1)
    """
    if isinstance(target, Immersion):
        frame = field_to_frame(target.phi)
        return frame.rename(columns={f'v{i}': f'phi_{i}' for i in range(target.m)})
    grid = target.grid
    frame = pd.DataFrame(target.values.reshape(-1, target.m), columns=[f'phi_{i}' for i in range(target.m)])
    frame.insert(0, 'v', grid.v.ravel())
    frame.insert(0, 'u', grid.u.ravel())
    return frame


def write_immersion_csv(target: Union[Immersion, PeriodicImmersion], path: PathLike) -> None:
    immersion_frame(target).to_csv(path, index=False, float_format='%.17g')
