from typing import Callable, Optional, Tuple

import numpy as np

from willmore_lab.disk_field.grid import PolarGrid, Region
from willmore_lab.disk_field.utils import check_finite


class PolarField:
    """
    A function on the unit disk sampled on a PolarGrid

    values has shape (n_r, n_theta, *cshape). Scalars use cshape (1,), ambient vectors (m,),
    gradient pairs (2, m) where axis 0 of cshape is the derivative direction.
    Fields solved with a boundary condition also carry their values at r = 1 in `boundary`,
    shape (n_theta, *cshape); derivative stencils use them when present.
    """

    def __init__(self, grid: PolarGrid, values: np.array, boundary: Optional[np.array] = None, name: str = None):
        """
        :param grid: the grid the field lives on
        :param values: node values, shape (n_r, n_theta) for scalars or (n_r, n_theta, *cshape)
        :param boundary: optional values at r = 1, shape (n_theta, *cshape)
        :param name: label used in reports and error messages
        """
        values = np.asarray(values, dtype=float)
        if values.ndim == 2:
            values = values[..., None]
        if values.shape[:2] != grid.shape:
            raise ValueError(f'Invalid values shape {values.shape} for {grid}')

        if boundary is not None:
            boundary = np.asarray(boundary, dtype=float)
            if boundary.ndim == 1:
                boundary = boundary[:, None]
            boundary = np.broadcast_to(boundary, (grid.n_theta,) + values.shape[2:]).copy()

        self.grid = grid
        self.name = name
        self.values = check_finite(values, name or 'field')
        self.boundary = boundary

    @classmethod
    def from_function(cls, grid: PolarGrid, func: Callable, boundary: bool = False, name: str = None) -> 'PolarField':
        """
        samples a function of the cartesian coordinates
        :param grid: the grid to sample on
        :param func: func(x1, x2) returning an array or a sequence of arrays (stacked as the last axis)
        :param boundary: also sample the function at r = 1 and attach it as boundary values
        :param name: label of the field
        """
        values = _stack(func(grid.x1, grid.x2), grid.shape)
        edge = None
        if boundary:
            theta = grid.theta_nodes
            edge = _stack(func(np.cos(theta), np.sin(theta)), theta.shape)
        return cls(grid, values, boundary=edge, name=name)

    @classmethod
    def zeros(cls, grid: PolarGrid, cshape: Tuple[int, ...] = (1,), boundary: bool = False) -> 'PolarField':
        values = np.zeros(grid.shape + tuple(cshape))
        edge = np.zeros((grid.n_theta,) + tuple(cshape)) if boundary else None
        return cls(grid, values, boundary=edge)

    @classmethod
    def constant(cls, grid: PolarGrid, value) -> 'PolarField':
        value = np.atleast_1d(np.asarray(value, dtype=float))
        values = np.broadcast_to(value, grid.shape + value.shape).copy()
        return cls(grid, values, boundary=np.broadcast_to(value, (grid.n_theta,) + value.shape))

    #
    # Shape
    #
    @property
    def cshape(self) -> Tuple[int, ...]:
        return self.values.shape[2:]

    @property
    def codomain_dim(self) -> int:
        return int(np.prod(self.cshape))

    @property
    def is_scalar(self) -> bool:
        return self.cshape == (1,)

    def with_values(self, values: np.array, boundary: Optional[np.array] = None, name: str = None) -> 'PolarField':
        """
        new field on the same grid
        """
        return PolarField(self.grid, values, boundary=boundary, name=name or self.name)

    def with_boundary(self, boundary) -> 'PolarField':
        """
        same values with boundary values attached, a scalar broadcasts over the boundary
        """
        boundary = np.asarray(boundary, dtype=float)
        if boundary.ndim == len(self.cshape) and boundary.shape[:1] == (self.grid.n_theta,):
            boundary = boundary[..., None]
        boundary = np.broadcast_to(boundary, (self.grid.n_theta,) + self.cshape)
        return PolarField(self.grid, self.values, boundary=boundary, name=self.name)

    def without_boundary(self) -> 'PolarField':
        return PolarField(self.grid, self.values, name=self.name)

    def component(self, index) -> 'PolarField':
        """
        scalar field of one component, index into cshape
        """
        boundary = None if self.boundary is None else self.boundary[(slice(None),) + np.index_exp[index]][..., None]
        return PolarField(self.grid, self.values[(slice(None), slice(None)) + np.index_exp[index]][..., None],
                          boundary=boundary)

    def components(self) -> list:
        return [self.component(i) for i in range(self.cshape[-1])]

    #
    # Pointwise algebra
    #
    def _coerce(self, other):
        if isinstance(other, PolarField):
            if other.grid != self.grid:
                raise ValueError(f'Fields live on different grids: {self.grid} and {other.grid}')
            return other.values, other.boundary
        value = np.asarray(other, dtype=float)
        return value, (value if value.ndim == 0 else None)

    def _combine(self, other, op) -> 'PolarField':
        other_values, other_boundary = self._coerce(other)
        values = op(self.values, other_values)
        boundary = None
        if self.boundary is not None and other_boundary is not None:
            boundary = op(self.boundary, other_boundary)
        return PolarField(self.grid, values, boundary=boundary)

    def __add__(self, other) -> 'PolarField':
        return self._combine(other, np.add)

    def __radd__(self, other) -> 'PolarField':
        return self._combine(other, np.add)

    def __sub__(self, other) -> 'PolarField':
        return self._combine(other, np.subtract)

    def __rsub__(self, other) -> 'PolarField':
        return self._combine(other, lambda a, b: b - a)

    def __mul__(self, other) -> 'PolarField':
        if isinstance(other, PolarField):
            return self._combine(other, _broadcast_multiply)
        return self._combine(other, np.multiply)

    def __rmul__(self, other) -> 'PolarField':
        return self.__mul__(other)

    def __truediv__(self, other) -> 'PolarField':
        if isinstance(other, PolarField):
            return self._combine(other, lambda a, b: _broadcast_multiply(a, 1.0 / b))
        return self._combine(other, np.true_divide)

    def __neg__(self) -> 'PolarField':
        return self * -1.0

    def dot(self, other: 'PolarField') -> 'PolarField':
        """
        pointwise inner product over the last axis
        """
        return self._combine(other, lambda a, b: np.sum(a * b, axis=-1)[..., None])

    def magnitude(self) -> 'PolarField':
        """
        pointwise euclidean norm over every component
        """
        flat = self.values.reshape(self.grid.shape + (-1,))
        return PolarField(self.grid, np.sqrt(np.sum(flat ** 2, axis=-1)))

    def restrict(self, region: Region) -> 'PolarField':
        """
        field multiplied by the indicator of a region
        """
        mask = self.grid.region_mask(region)
        return PolarField(self.grid, self.values * mask.reshape(mask.shape + (1,) * len(self.cshape)))

    def __repr__(self) -> str:
        label = f' {self.name}' if self.name else ''
        return f'PolarField{label}(cshape={self.cshape}, grid={self.grid})'


def _stack(result, shape) -> np.array:
    """
    turns a scalar, array or sequence of arrays into an array of shape (*shape, d)
    """
    if isinstance(result, (list, tuple)):
        return np.stack([np.broadcast_to(np.asarray(part, dtype=float), shape) for part in result], axis=-1)
    return np.broadcast_to(np.asarray(result, dtype=float), shape)[..., None]


def _broadcast_multiply(a: np.array, b: np.array) -> np.array:
    """
    multiplies node arrays whose component shapes broadcast from the right, a scalar (1,) broadcasts over all
    """
    if a.shape[-1:] == (1,) and a.ndim < b.ndim:
        a = a.reshape(a.shape[:-1] + (1,) * (b.ndim - a.ndim + 1))
    elif b.shape[-1:] == (1,) and b.ndim < a.ndim:
        b = b.reshape(b.shape[:-1] + (1,) * (a.ndim - b.ndim + 1))
    return a * b
