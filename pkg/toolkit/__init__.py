from .fileformat import FormatError, parse_instance, parse_solution, parse_td, serialize_instance, serialize_solution
from .generators import (Gadget, gen_from_clique, gen_from_cutting, gen_from_set_cover, gen_random,
                         gen_star_knapsack, knapsack_optimum)

__all__ = ['FormatError', 'parse_instance', 'parse_solution', 'parse_td', 'serialize_instance',
           'serialize_solution', 'Gadget', 'gen_from_clique', 'gen_from_cutting', 'gen_from_set_cover',
           'gen_random', 'gen_star_knapsack', 'knapsack_optimum']
