from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from willmore_lab import settings
from willmore_lab.disk_field.field import PolarField
from willmore_lab.disk_field.grid import PolarGrid

HEADER_BYTES = 32
PathLike = Union[str, Path]


def field_to_frame(f: PolarField) -> pd.DataFrame:
    """
    one row per node: r, theta and the flattened components v0 ... v(d-1)
    """
    grid = f.grid
    flat = f.values.reshape(grid.n_r * grid.n_theta, -1)
    frame = pd.DataFrame(flat, columns=[f'v{i}' for i in range(flat.shape[1])])
    frame.insert(0, 'theta', grid.theta.ravel())
    frame.insert(0, 'r', grid.r.ravel())
    return frame


def write_csv(f: PolarField, path: PathLike) -> None:
    """
    writes a field as csv, floats are written with 17 significant digits so the file round trips exactly
    """
    field_to_frame(f).to_csv(path, index=False, float_format='%.17g')


def read_csv(path: PathLike, fd_order: int = settings.DEFAULT_FD_ORDER) -> PolarField:
    """
    reads a csv written by write_csv
    :param path: the csv path
    :param fd_order: finite difference order of the rebuilt grid
    :return: field with cshape (d,)
    """
    frame = pd.read_csv(path, float_precision='round_trip')
    n_r = frame['r'].nunique()
    n_theta = frame['theta'].nunique()
    if n_r * n_theta != len(frame):
        raise ValueError(f'Invalid field csv {path}: {len(frame)} rows for {n_r} radii and {n_theta} angles')
    grid = PolarGrid(n_r=n_r, n_theta=n_theta, fd_order=fd_order)
    columns = [col for col in frame.columns if col.startswith('v')]
    values = frame[columns].to_numpy().reshape(n_r, n_theta, len(columns))
    return PolarField(grid, values)


def write_binary(f: PolarField, path: PathLike) -> None:
    """
    raw little endian layout: 8 byte magic, int64 n_r, int64 n_theta, int64 d, then float64 values in node order
    """
    grid = f.grid
    values = np.ascontiguousarray(f.values.reshape(grid.n_r, grid.n_theta, -1), dtype='<f8')
    header = settings.BINARY_MAGIC + np.array([grid.n_r, grid.n_theta, values.shape[2]], dtype='<i8').tobytes()
    with open(path, 'wb') as handle:
        handle.write(header)
        handle.write(values.tobytes())


def read_binary(path: PathLike, fd_order: int = settings.DEFAULT_FD_ORDER) -> PolarField:
    """
    reads a file written by write_binary
    :raise ValueError: on a bad magic or a truncated payload
    """
    raw = Path(path).read_bytes()
    magic = raw[:len(settings.BINARY_MAGIC)]
    if magic != settings.BINARY_MAGIC:
        raise ValueError(f'Invalid field file {path}: bad magic {magic!r}')
    n_r, n_theta, d = np.frombuffer(raw[len(settings.BINARY_MAGIC):HEADER_BYTES], dtype='<i8')
    payload = np.frombuffer(raw[HEADER_BYTES:], dtype='<f8')
    if payload.shape[0] != n_r * n_theta * d:
        raise ValueError(f'Invalid field file {path}: expected {n_r * n_theta * d} values, found {payload.shape[0]}')
    grid = PolarGrid(n_r=int(n_r), n_theta=int(n_theta), fd_order=fd_order)
    return PolarField(grid, payload.reshape(int(n_r), int(n_theta), int(d)).astype(float))
