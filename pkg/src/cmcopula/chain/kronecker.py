from functools import reduce
from typing import Sequence, Union

import numpy as np
from numpy.typing import ArrayLike

from cmcopula.chain.exceptions import DimensionMismatchError, ScenarioError
from cmcopula.chain.generator import STRUCTURAL_TOL, GeneratorMatrix, GeneratorPath, validate_generator

MatrixLike = Union[ArrayLike, GeneratorMatrix]


def kron(a: MatrixLike, b: MatrixLike) -> np.ndarray:
    """
    Kronecker product of two matrices.

    Args:
        a: Left factor (m x n).
        b: Right factor (p x q).

    Returns:
        The mp x nq product.
    """
    return np.kron(np.asarray(a, dtype=float), np.asarray(b, dtype=float))


def kron_product(*matrices: MatrixLike) -> np.ndarray:
    """
    Iterated Kronecker product M_1 (x) ... (x) M_N.

    Args:
        matrices: Factors, leftmost first.

    Returns:
        The product matrix.

    Raises:
        ValueError: If no factor is given.
    """
    if not matrices:
        raise ValueError("kron_product needs at least one factor.")
    return reduce(kron, matrices[1:], np.asarray(matrices[0], dtype=float))


def embed(matrix: MatrixLike, k: int, components: Sequence[int]) -> np.ndarray:
    """
    Lifts a component matrix to the product space: I_1 (x) ... (x) M (x) ... (x) I_N.

    Args:
        matrix: |S_k| x |S_k| matrix acting on component k.
        k: Component index.
        components: Component sizes of the product space.

    Returns:
        The d x d lifted matrix.

    Raises:
        DimensionMismatchError: If the matrix size differs from |S_k|.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (components[k], components[k]):
        raise DimensionMismatchError(components[k], matrix.shape[0], f"size of component {k}")
    factors = [np.eye(size) for size in components]
    factors[k] = matrix
    return kron_product(*factors)


def kron_sum(*generators: MatrixLike, tol: float = STRUCTURAL_TOL) -> GeneratorMatrix:
    """
    Kronecker sum of component generators: sum over k of I (x) ... (x) Psi_k (x) ... (x) I.

    The result is the generator of components that move independently and never jump together.

    Args:
        generators: One intensity matrix per component.
        tol: Validation tolerance for the inputs and the result.

    Returns:
        The certified product-space generator.

    Raises:
        ValueError: If no generator is given.
    """
    if not generators:
        raise ValueError("kron_sum needs at least one generator.")
    certified = [validate_generator(generator, tol) for generator in generators]
    components = [generator.dimension for generator in certified]
    total = sum(embed(generator.entries, k, components) for k, generator in enumerate(certified))
    return validate_generator(total, tol * max(1, int(np.prod(components))))


def kron_sum_path(*paths: GeneratorPath, tol: float = STRUCTURAL_TOL) -> GeneratorPath:
    """
    Cellwise Kronecker sum of generator paths that share a scenario.

    Args:
        paths: One generator path per component.
        tol: Validation tolerance.

    Returns:
        The product-space generator path.

    Raises:
        ValueError: If no path is given.
        ScenarioError: If the paths live on different scenarios.
    """
    if not paths:
        raise ValueError("kron_sum_path needs at least one path.")
    scenario = paths[0].scenario
    for path in paths[1:]:
        if path.scenario is not scenario and not np.array_equal(path.grid, scenario.grid):
            raise ScenarioError("Kronecker sum of generator paths requires a common scenario grid.")
    cells = tuple(kron_sum(*(path.cells[i] for path in paths), tol=tol) for i in range(scenario.n_cells))
    return GeneratorPath(scenario, cells)
