from .uniform import SccDecomposition, solve_uniform_directed_additive1, solve_uniform_undirected

__all__ = ['SccDecomposition', 'solve_uniform_directed_additive1', 'solve_uniform_undirected']
