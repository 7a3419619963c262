from .dp import DPState, TreewidthDP, TwdpStrategy, solve_treewidth
from .treedecomp import (DecompositionError, NiceTreeDecomposition, NodeKind, TreeDecomposition, augment_all_bags,
                         heuristic_td, make_nice, validate_td)

__all__ = ['DPState', 'TreewidthDP', 'TwdpStrategy', 'solve_treewidth', 'DecompositionError',
           'NiceTreeDecomposition', 'NodeKind', 'TreeDecomposition', 'augment_all_bags', 'heuristic_td',
           'make_nice', 'validate_td']
