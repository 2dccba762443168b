import numba as nb
import numpy as np


@nb.njit
def pairwise_sum(values: np.array) -> float:
    """
    sums a 1d array with a fixed pairwise reduction tree
    the tree only depends on the length of the array so the result is bit stable across runs
    :param values: 1d float array
    :return: the sum
    """
    n = values.shape[0]
    if n == 0:
        return 0.0

    buffer = values.copy()
    while n > 1:
        half = n // 2
        for i in range(half):
            buffer[i] = buffer[2 * i] + buffer[2 * i + 1]
        # odd leftover is carried to the next level untouched
        if n % 2 == 1:
            buffer[half] = buffer[n - 1]
            n = half + 1
        else:
            n = half
    return buffer[0]


@nb.njit(parallel=True)
def pairwise_sum_rows(values: np.array) -> np.array:
    """
    pairwise sum of every row of a 2d array, rows are independent so the parallel loop is deterministic
    :param values: 2d float array
    :return: 1d array with one sum per row
    """
    num_rows = values.shape[0]
    out = np.empty(num_rows)
    for i in nb.prange(num_rows):
        out[i] = pairwise_sum(values[i])
    return out


@nb.njit
def fornberg_weights(z: float, nodes: np.array, order: int) -> np.array:
    """
    finite difference weights on arbitrary nodes by Fornberg's recursion
    :param z: the point the derivatives are approximated at
    :param nodes: the stencil nodes, need not be uniform or sorted
    :param order: highest derivative order wanted
    :return: array of shape (len(nodes), order + 1), column k holds the weights of the k-th derivative
    """
    n = nodes.shape[0]
    c = np.zeros((n, order + 1))
    c1 = 1.0
    c4 = nodes[0] - z
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - z
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 = c2 * c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c


def check_finite(values: np.array, name: str = 'field') -> np.array:
    """
    makes sure an operation did not produce nan or inf values
    :param values: the array to check
    :param name: name used in the error message
    :return: values, unchanged
    :raise ValueError: if any value is nan or inf
    """
    finite = np.isfinite(values)
    if not finite.all():
        amount_nan = int(np.isnan(values).sum())
        amount_inf = int(np.isinf(values).sum())
        raise ValueError(f'Non finite values in {name}: {amount_nan} nan, {amount_inf} inf '
                         f'out of {values.size} entries')
    return values


def observed_orders(errors, sizes) -> list:
    """
    observed convergence orders along a refinement ladder
    :param errors: error measured at each rung
    :param sizes: resolution (node count) of each rung
    :return: list with one order per consecutive pair of rungs, nan where an error is zero
    """
    orders = []
    for (e_coarse, e_fine), (n_coarse, n_fine) in zip(zip(errors[:-1], errors[1:]), zip(sizes[:-1], sizes[1:])):
        if e_coarse <= 0 or e_fine <= 0:
            orders.append(float('nan'))
        else:
            orders.append(float(np.log(e_coarse / e_fine) / np.log(n_fine / n_coarse)))
    return orders
