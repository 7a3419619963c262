from .coloring import (ColorCodingError, ColoringMode, EdgeColoring, HashFamily, preprocess_cc,
                       random_coloring)
from .shapes import ColorPartition, TreeShape, enumerate_partitions, enumerate_shapes
from .solver import (colorful_dp, embed_shape, merge_components, solve_by_demand, solve_deterministic,
                     solve_randomized)

__all__ = ['ColorCodingError', 'ColoringMode', 'EdgeColoring', 'HashFamily', 'preprocess_cc', 'random_coloring',
           'ColorPartition', 'TreeShape', 'enumerate_partitions', 'enumerate_shapes', 'colorful_dp',
           'embed_shape', 'merge_components', 'solve_by_demand', 'solve_deterministic', 'solve_randomized']
