"""
Cached quadrature rules. Normal rules integrate against the standard normal
density and have weights summing to 1.
"""
import itertools
import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial.hermite_e import hermegauss
from numpy.polynomial.legendre import leggauss


def _frozen(*arrays: np.ndarray) -> Tuple[np.ndarray, ...]:
    for array in arrays:
        array.setflags(write=False)
    return arrays


@lru_cache(maxsize=32)
def normal_rule(n_nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Hermite nodes for E[g(Z)], Z ~ N(0, 1)."""
    nodes, weights = hermegauss(n_nodes)
    return _frozen(nodes, weights / math.sqrt(2.0 * math.pi))


@lru_cache(maxsize=32)
def tensor_normal_rule(n_nodes: int, dimension: int) -> Tuple[np.ndarray, np.ndarray]:
    """Product rule for E[g(Z)], Z ~ N(0, I_dimension); points are (n_nodes^dimension, dimension)."""
    nodes, weights = normal_rule(n_nodes)
    points = np.array(list(itertools.product(nodes, repeat=dimension)))
    products = np.array([math.prod(w) for w in itertools.product(weights, repeat=dimension)])
    return _frozen(points, products)


@lru_cache(maxsize=32)
def legendre_rule(n_nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    return _frozen(*leggauss(n_nodes))
