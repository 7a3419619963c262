from __future__ import annotations

import argparse
import math
import sys
from typing import Callable, Sequence

import jsonpickle

from approx.uniform import solve_uniform_directed_additive1, solve_uniform_undirected
from colorcode.coloring import ColorCodingError, ColoringMode, preprocess_cc
from colorcode.solver import solve_by_demand, solve_deterministic, solve_randomized
from config import Config
from config.config import ConfigError, ConfigKey
from general.enum import Enum, IntEnum
from general.utils import ValueOverflowError
from knapsack.instance import Graph, Instance, InstanceError, Variant, normalize_self_loops
from knapsack.oracle import GuardExceededError, SolveResult, brute_force, evaluate
from knapsack.pareto import ParetoError
from log.logger import LOGGER, logging_init
from toolkit.fileformat import FormatError, read_instance, read_solution, read_td, write_instance, write_td
from toolkit.generators import (Gadget, gen_from_clique, gen_from_cutting, gen_from_set_cover, gen_random,
                                gen_star_knapsack)
from treewidth.dp import TwdpStrategy, solve_treewidth
from treewidth.treedecomp import DecompositionError, TreeDecomposition, heuristic_td


class ExitCode(IntEnum):
    OK = 0
    DECISION_FALSE = 1
    USAGE = 2
    MISMATCH = 3
    IO_ERROR = 4


class Algorithm(Enum):
    AUTO = 'auto'
    BRUTE = 'brute'
    TWDP = 'twdp'
    CC_RAND = 'cc-rand'
    CC_DET = 'cc-det'
    APPROX = 'approx'


class UsageError(ValueError):
    pass


GEN_KINDS = ('random', 'set-cover', 'clique', 'cutting', 'star')


def _int_list(text: str) -> list[int]:
    return [int(token) for token in text.replace(',', ' ').split()]


def _edge_list(text: str) -> list[tuple[int, int]]:
    """Edges written as `0-1,1-2`."""
    edges = []
    for token in text.replace(',', ' ').split():
        u, _, v = token.partition('-')
        edges.append((int(u), int(v)))
    return edges


def _item(text: str) -> tuple[int, int]:
    weight, _, profit = text.partition(':')
    return int(weight), int(profit)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='nksolver', description='Neighborhood knapsack solvers')
    parser.add_argument('--config', default=None, help='toml config file')
    commands = parser.add_subparsers(dest='command', required=True)

    gen = commands.add_parser('gen', help='generate an instance')
    gen.add_argument('kind', choices=GEN_KINDS)
    gen.add_argument('-o', '--output', required=True)
    gen.add_argument('--td', help='also write the heuristic decomposition (PACE .td)')
    gen.add_argument('--n', type=int, default=8)
    gen.add_argument('--p', type=float, default=0.3, help='edge probability')
    gen.add_argument('--wmax', type=int, default=5)
    gen.add_argument('--pmax', type=int, default=5)
    gen.add_argument('--s', type=int, default=10)
    gen.add_argument('--d', type=int, default=0)
    gen.add_argument('--directed', action='store_true')
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--universe', type=int, help='set cover universe size (elements 1..N)')
    gen.add_argument('--set', dest='sets', action='append', type=_int_list, default=[],
                     help='set cover set, e.g. "1,2"; repeatable')
    gen.add_argument('--edges', type=_edge_list, default=[], help='graph edges, e.g. "0-1,1-2"')
    gen.add_argument('--k', type=int, default=1)
    gen.add_argument('--l', type=int, default=1)
    gen.add_argument('--unit-edge-weights', action='store_true')
    gen.add_argument('--item', dest='items', action='append', type=_item, default=[],
                     help='star knapsack item "weight:profit"; repeatable')
    gen.add_argument('--c', type=int, default=0)
    gen.add_argument('--alpha', type=int, default=0)

    solve = commands.add_parser('solve', help='solve an instance')
    solve.add_argument('-i', '--input', required=True)
    solve.add_argument('--variant', required=True, choices=Variant.tags())
    solve.add_argument('--algo', default=Algorithm.AUTO.value, choices=[a.value for a in Algorithm])
    solve.add_argument('--td')
    solve.add_argument('--seed', type=int)
    solve.add_argument('--trials', type=int)
    solve.add_argument('--budget', type=int, help='colour coding vertex budget b, sink dummies included')
    solve.add_argument('--mode', default='opt', choices=('decision', 'opt'))
    solve.add_argument('--strategy', choices=[s.value for s in TwdpStrategy])
    solve.add_argument('--cc-mode', default=ColoringMode.EXHAUSTIVE.value, choices=[m.value for m in ColoringMode])

    verify = commands.add_parser('verify', help='evaluate a solution file')
    verify.add_argument('-i', '--input', required=True)
    verify.add_argument('-s', '--solution', required=True)
    verify.add_argument('--variant', required=True, choices=Variant.tags())

    compare = commands.add_parser('compare', help='cross-check every applicable algorithm')
    compare.add_argument('-i', '--input', required=True)
    compare.add_argument('--variant', required=True, choices=Variant.tags())

    bench = commands.add_parser('bench', help='benchmark suite as CSV on stdout')
    bench.add_argument('--suite', required=True)
    return parser


def _generate(args) -> Gadget | Instance:
    match args.kind:
        case 'random':
            return gen_random(args.n, args.p, args.wmax, args.pmax, args.s, args.d, args.directed, args.seed)
        case 'set-cover':
            if args.universe is None:
                raise UsageError('set-cover needs --universe')
            return gen_from_set_cover(args.universe, args.sets, args.k, args.directed)
        case 'clique':
            return gen_from_clique(Graph(args.n, args.edges, directed=False), args.k, args.unit_edge_weights)
        case 'cutting':
            return gen_from_cutting(Graph(args.n, args.edges, directed=False), args.k, args.l)
        case 'star':
            return gen_star_knapsack(args.items, args.c, args.alpha)


def cmd_gen(args, config: Config) -> ExitCode:
    produced = _generate(args)
    if isinstance(produced, Gadget):
        inst = produced.instance.replace(meta=f'{produced.instance.meta} expected={produced.expected}')
    else:
        inst = produced
    write_instance(args.output, inst)
    if args.td:
        write_td(args.td, heuristic_td(inst.graph), inst.n)
    print(f'wrote {args.output}: n={inst.n} m={inst.graph.m}')
    return ExitCode.OK


class Dispatcher:
    """Picks and runs a solver for one instance under the configured limits.

    Colour coding only runs with an explicit vertex budget, or in decision mode
    where the demand bounds it.
    """

    def __init__(self, config: Config, seed: int | None = None, trials: int | None = None,
                 budget: int | None = None, strategy: str | None = None,
                 cc_mode: ColoringMode = ColoringMode.EXHAUSTIVE):
        self.config = config
        self.seed = config.get_value(ConfigKey.COLORCODE_SEED) if seed is None else seed
        self.trials = trials
        self.budget = budget
        self.strategy = TwdpStrategy(strategy or config.twdp_strategy)
        self.cc_mode = cc_mode

    def cc_exhaustive_fits(self, inst: Instance) -> bool:
        if self.budget is None:
            return False
        m = preprocess_cc(inst).instance.graph.m
        return self.budget ** m <= self.config.get_value(ConfigKey.COLORCODE_EXHAUSTIVE_BUDGET)

    def choose(self, inst: Instance, variant: Variant) -> Algorithm:
        uniform_r1n = inst.is_uniform and variant == Variant.RELAXED_1N
        if uniform_r1n and not inst.directed:
            return Algorithm.APPROX
        if inst.n <= self.config.get_value(ConfigKey.SOLVER_AUTO_BRUTE_MAX_N):
            return Algorithm.BRUTE
        if heuristic_td(inst.graph).width <= self.config.get_value(ConfigKey.SOLVER_AUTO_TWDP_MAX_WIDTH):
            return Algorithm.TWDP
        if uniform_r1n:
            return Algorithm.APPROX
        if inst.directed and variant.is_one_neighborhood and self.budget is not None:
            return Algorithm.CC_DET if self.cc_exhaustive_fits(inst) else Algorithm.CC_RAND
        return Algorithm.TWDP

    def _run_color_coding(self, inst: Instance, variant: Variant, algorithm: Algorithm,
                          decision: bool) -> SolveResult:
        config = self.config
        if self.budget is None:
            if not decision:
                raise UsageError(f'{algorithm.value} needs --budget outside decision mode')
            return solve_by_demand(inst, variant, config.get_value(ConfigKey.COLORCODE_EXHAUSTIVE_BUDGET),
                                   config.get_value(ConfigKey.COLORCODE_MAX_TRIALS), self.seed)
        if algorithm == Algorithm.CC_DET:
            return solve_deterministic(inst, variant, self.budget, self.cc_mode,
                                       config.get_value(ConfigKey.COLORCODE_EXHAUSTIVE_BUDGET),
                                       config.get_value(ConfigKey.COLORCODE_FAMILY_PRIMES), decision)
        trials = self.trials
        if trials is None:
            trials = min(math.ceil(math.exp(self.budget)), config.get_value(ConfigKey.COLORCODE_MAX_TRIALS))
        return solve_randomized(inst, variant, self.budget, trials, self.seed, decision)

    def run(self, inst: Instance, variant: Variant, algorithm: Algorithm, decision: bool = False,
            td: TreeDecomposition | None = None) -> SolveResult:
        config = self.config
        inst = normalize_self_loops(inst, variant)
        if algorithm == Algorithm.AUTO:
            algorithm = self.choose(inst, variant)
            LOGGER.info(f'auto picked {algorithm.value}')
        match algorithm:
            case Algorithm.BRUTE:
                return brute_force(inst, variant, config.brute_force_guard, decision)
            case Algorithm.TWDP:
                return solve_treewidth(inst, variant, td, self.strategy, decision)
            case Algorithm.APPROX:
                if variant != Variant.RELAXED_1N:
                    raise UsageError('approx solves r1n only')
                certify = config.get_value(ConfigKey.APPROX_CERTIFY_MAX_N)
                if inst.directed:
                    return solve_uniform_directed_additive1(inst, certify)
                return solve_uniform_undirected(inst, certify)
            case Algorithm.CC_DET | Algorithm.CC_RAND:
                return self._run_color_coding(inst, variant, algorithm, decision)
        raise UsageError(f'unknown algorithm {algorithm}')


def _result_line(result: SolveResult) -> str:
    return 'result ' + jsonpickle.encode(result.summary(), unpicklable=False)


def cmd_solve(args, config: Config) -> ExitCode:
    inst = read_instance(args.input)
    variant = Variant.from_tag(args.variant)
    td = read_td(args.td) if args.td else None
    dispatcher = Dispatcher(config, args.seed, args.trials, args.budget, args.strategy, ColoringMode(args.cc_mode))
    decision = args.mode == 'decision'
    result = dispatcher.run(inst, variant, Algorithm(args.algo), decision, td)
    if decision and not result.meets(inst.demand):
        print('infeasible')
        code = ExitCode.DECISION_FALSE
    else:
        print(f'profit {result.best_profit}')
        code = ExitCode.OK
    print(_result_line(result))
    return code


def cmd_verify(args, config: Config) -> ExitCode:
    inst = read_instance(args.input)
    variant = Variant.from_tag(args.variant)
    selection = read_solution(args.solution, inst.n)
    evaluation = evaluate(inst, variant, selection)
    feasible = evaluation.weight <= inst.size and (not variant.is_hard or evaluation.hard_feasible)
    print(f'weight {evaluation.weight}')
    print(f'profit {evaluation.profit}')
    print(f'feasible {str(feasible).lower()}')
    print(f'demand-met {str(evaluation.profit >= inst.demand).lower()}')
    return ExitCode.OK if feasible else ExitCode.DECISION_FALSE


def exact_dispatcher(inst: Instance, config: Config) -> Dispatcher:
    """Dispatcher whose colour-coding budget covers every selection of `inst`, dummies included."""
    budget = None
    if inst.directed and not inst.graph.self_loops:
        budget = max(preprocess_cc(inst).instance.n, 2)
    return Dispatcher(config, budget=budget)


def applicable_algorithms(inst: Instance, variant: Variant, config: Config) -> list[Algorithm]:
    """Exact algorithms that can run on `inst` within the configured limits."""
    algorithms = []
    if inst.n <= config.brute_force_guard:
        algorithms.append(Algorithm.BRUTE)
    if heuristic_td(inst.graph).width <= config.get_value(ConfigKey.SOLVER_AUTO_TWDP_MAX_WIDTH):
        algorithms.append(Algorithm.TWDP)
    if inst.directed and variant.is_one_neighborhood and exact_dispatcher(inst, config).cc_exhaustive_fits(inst):
        algorithms.append(Algorithm.CC_DET)
    if inst.is_uniform and variant == Variant.RELAXED_1N:
        algorithms.append(Algorithm.APPROX)
    return algorithms


def compare_algorithms(inst: Instance, variant: Variant, config: Config) -> tuple[bool, dict[str, SolveResult]]:
    """Run every applicable algorithm; exact ones must agree, inexact ones must not exceed them."""
    inst = normalize_self_loops(inst, variant)
    dispatcher = exact_dispatcher(inst, config)
    results = {algorithm.value: dispatcher.run(inst, variant, algorithm)
               for algorithm in applicable_algorithms(inst, variant, config)}
    exact = {result.best_profit for result in results.values() if result.exact}
    agree = len(exact) <= 1
    if exact and agree:
        optimum = exact.pop()
        agree = all(result.best_profit <= optimum for result in results.values())
    return agree, results


def cmd_compare(args, config: Config) -> ExitCode:
    inst = read_instance(args.input)
    agree, results = compare_algorithms(inst, Variant.from_tag(args.variant), config)
    for name, result in results.items():
        print(f'{name} profit {result.best_profit}{"" if result.exact else " (inexact)"}')
    if not agree:
        print('mismatch')
        LOGGER.error(f'algorithms disagree on {args.input}')
        return ExitCode.MISMATCH
    print('agree')
    return ExitCode.OK


def cmd_bench(args, config: Config) -> ExitCode:
    from toolkit.bench import SUITES, run_suite
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite '{args.suite}', expected one of {', '.join(SUITES)}")
    frame = run_suite(args.suite, config)
    frame.to_csv(sys.stdout, index=False, lineterminator='\n')
    return ExitCode.OK


COMMANDS: dict[str, Callable] = {
    'gen': cmd_gen,
    'solve': cmd_solve,
    'verify': cmd_verify,
    'compare': cmd_compare,
    'bench': cmd_bench,
}


def cli_main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)

    try:
        config = Config(args.config)
    except (OSError, ConfigError) as error:
        print(f'error: {error}', file=sys.stderr)
        return ExitCode.IO_ERROR
    logging_init(config)
    config.display_error_messages()

    try:
        return int(COMMANDS[args.command](args, config))
    except (OSError, FormatError) as error:
        LOGGER.debug('I/O failure', exc_info=True)
        print(f'error: {error}', file=sys.stderr)
        return ExitCode.IO_ERROR
    except (UsageError, InstanceError, ColorCodingError, DecompositionError, GuardExceededError,
            ParetoError, ValueOverflowError) as error:
        LOGGER.debug('usage failure', exc_info=True)
        print(f'error: {error}', file=sys.stderr)
        return ExitCode.USAGE
