from .instance import (Graph, Instance, InstanceError, Variant, VertexRangeError, add_sink_dummies,
                       make_instance, neighbors, normalize_self_loops, validate_instance)
from .oracle import Evaluation, GuardExceededError, SolveResult, brute_force, decide, evaluate, profitable_set
from .pareto import ParetoError, ParetoList

__all__ = ['Graph', 'Instance', 'InstanceError', 'Variant', 'VertexRangeError', 'add_sink_dummies',
           'make_instance', 'neighbors', 'normalize_self_loops', 'validate_instance',
           'Evaluation', 'GuardExceededError', 'SolveResult', 'brute_force', 'decide', 'evaluate',
           'profitable_set', 'ParetoError', 'ParetoList']
