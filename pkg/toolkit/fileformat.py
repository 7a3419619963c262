"""Text formats: instances (`nk 1`), solutions and PACE tree decompositions."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from general.utils import ensure_folder_exist
from knapsack.instance import Graph, Instance
from treewidth.treedecomp import TreeDecomposition

MAGIC = 'nk 1'
META_PREFIX = '# meta:'


class FormatError(ValueError):
    pass


def _fail(line: int | str, message: str) -> FormatError:
    return FormatError(f'line {line}: {message}')


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    """Numbered token lists, blank and comment lines skipped."""
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith('#'):
            continue
        yield number, stripped.split()


def _ints(number: int, tokens: list[str], count: int) -> list[int]:
    key = tokens[0]
    if len(tokens) != count + 1:
        raise _fail(number, f"'{key}' expects {count} value(s), got {len(tokens) - 1}")
    try:
        values = [int(token) for token in tokens[1:]]
    except ValueError:
        raise _fail(number, f"'{key}' expects integers") from None
    if any(value < 0 for value in values):
        raise _fail(number, f"'{key}' expects non-negative integers")
    return values


def parse_instance(text: str) -> Instance:
    """Parse an instance file. Keys may come in any order after the magic line.

    Raises:
        FormatError: malformed content; the message starts with the line number
    """
    lines = text.splitlines()
    first = next((i for i, raw in enumerate(lines, start=1) if raw.strip()), None)
    if first is None or lines[first - 1].strip() != MAGIC:
        raise _fail(first or 1, f"expected '{MAGIC}'")
    meta = '\n'.join(raw.strip()[len(META_PREFIX):].strip() for raw in lines if raw.strip().startswith(META_PREFIX))

    scalars: dict[str, tuple[int, int]] = {}
    vertices: dict[int, tuple[int, int, int]] = {}
    edges: list[tuple[int, int, int]] = []
    for number, tokens in _lines(text):
        if number == first:
            continue
        key = tokens[0]
        match key:
            case 'directed' | 'n' | 'knapsack' | 'demand':
                if key in scalars:
                    raise _fail(number, f"duplicate '{key}'")
                (value,) = _ints(number, tokens, 1)
                if key == 'directed' and value not in (0, 1):
                    raise _fail(number, "'directed' must be 0 or 1")
                scalars[key] = (number, value)
            case 'vertex':
                v, weight, profit = _ints(number, tokens, 3)
                if v in vertices:
                    raise _fail(number, f'duplicate vertex {v}')
                vertices[v] = (number, weight, profit)
            case 'edge':
                u, v = _ints(number, tokens, 2)
                edges.append((number, u, v))
            case _:
                raise _fail(number, f"unknown key '{key}'")

    end = len(lines)
    for key in ('directed', 'n', 'knapsack', 'demand'):
        if key not in scalars:
            raise _fail(end, f"missing '{key}'")
    n = scalars['n'][1]
    directed = bool(scalars['directed'][1])
    for v, (number, _, _) in vertices.items():
        if v >= n:
            raise _fail(number, f'unknown vertex {v}')
    for v in range(n):
        if v not in vertices:
            raise _fail(end, f'missing vertex {v}')

    seen = set()
    for number, u, v in edges:
        for x in (u, v):
            if x >= n:
                raise _fail(number, f'unknown vertex {x}')
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise _fail(number, f'duplicate edge ({u},{v})')
        seen.add(key)

    weights = tuple(vertices[v][1] for v in range(n))
    profits = tuple(vertices[v][2] for v in range(n))
    graph = Graph(n, [(u, v) for _, u, v in edges], directed)
    return Instance(graph, weights, profits, scalars['knapsack'][1], scalars['demand'][1], meta)


def serialize_instance(inst: Instance) -> str:
    lines = [MAGIC]
    lines.extend(f'{META_PREFIX} {line}' for line in inst.meta.splitlines() if line.strip())
    lines.append(f'directed {int(inst.directed)}')
    lines.append(f'n {inst.n}')
    lines.extend(f'vertex {v} {inst.weights[v]} {inst.profits[v]}' for v in range(inst.n))
    lines.extend(f'edge {u} {v}' for u, v in inst.graph.edges)
    lines.append(f'knapsack {inst.size}')
    lines.append(f'demand {inst.demand}')
    return '\n'.join(lines) + '\n'


def parse_solution(text: str, n: int | None = None) -> frozenset[int]:
    """Parse `solution k` followed by k `pick id` lines.

    Raises:
        FormatError: count mismatch, duplicate or (with `n`) unknown ids
    """
    expected = None
    picks: list[int] = []
    seen = set()
    for number, tokens in _lines(text):
        match tokens[0]:
            case 'solution' if expected is None:
                (expected,) = _ints(number, tokens, 1)
            case 'pick' if expected is not None:
                (v,) = _ints(number, tokens, 1)
                if v in seen:
                    raise _fail(number, f'duplicate pick {v}')
                if n is not None and v >= n:
                    raise _fail(number, f'unknown vertex {v}')
                seen.add(v)
                picks.append(v)
            case key:
                raise _fail(number, f"unexpected '{key}'")
    if expected is None:
        raise _fail(1, "expected 'solution <k>'")
    if len(picks) != expected:
        raise _fail(len(text.splitlines()), f'declared {expected} picks, found {len(picks)}')
    return frozenset(picks)


def serialize_solution(selection: Iterable[int]) -> str:
    picks = sorted(set(selection))
    return '\n'.join([f'solution {len(picks)}', *(f'pick {v}' for v in picks)]) + '\n'


def parse_td(text: str) -> TreeDecomposition:
    """Read a PACE `.td` file; vertices become 0-based, bag ids are kept.

    Raises:
        FormatError: malformed header, bag or edge line
    """
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == 'c':
            continue
        try:
            if tokens[0] == 's':
                if header is not None or len(tokens) != 5 or tokens[1] != 'td':
                    raise _fail(number, "expected 's td <bags> <width+1> <vertices>'")
                header = tuple(int(token) for token in tokens[2:])
            elif tokens[0] == 'b':
                bag_id = int(tokens[1])
                if bag_id in bags:
                    raise _fail(number, f'duplicate bag {bag_id}')
                bags[bag_id] = frozenset(int(token) - 1 for token in tokens[2:])
            elif len(tokens) == 2:
                edges.append((int(tokens[0]), int(tokens[1])))
            else:
                raise _fail(number, f"unexpected '{raw.strip()}'")
        except ValueError as error:
            if isinstance(error, FormatError):
                raise
            raise _fail(number, 'expected integers') from None
    if header is None:
        raise _fail(1, "missing 's td' header")
    if len(bags) != header[0]:
        raise _fail(len(text.splitlines()), f'header declares {header[0]} bags, found {len(bags)}')
    for a, b in edges:
        if a not in bags or b not in bags:
            raise FormatError(f'tree edge ({a},{b}) names an unknown bag')
    return TreeDecomposition(bags, edges)


def serialize_td(td: TreeDecomposition, n: int) -> str:
    ids = sorted(td.bags)
    renumber = {t: i for i, t in enumerate(ids, start=1)}
    lines = [f's td {len(ids)} {td.width + 1} {n}']
    for t in ids:
        lines.append(' '.join(['b', str(renumber[t]), *(str(v + 1) for v in sorted(td.bags[t]))]))
    lines.extend(f'{renumber[a]} {renumber[b]}' for a, b in td.tree_edges)
    return '\n'.join(lines) + '\n'


def read_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_text(encoding='utf-8'))


def write_instance(path: str | Path, inst: Instance) -> None:
    ensure_folder_exist(str(path))
    Path(path).write_text(serialize_instance(inst), encoding='utf-8', newline='\n')


def read_solution(path: str | Path, n: int | None = None) -> frozenset[int]:
    return parse_solution(Path(path).read_text(encoding='utf-8'), n)


def write_solution(path: str | Path, selection: Iterable[int]) -> None:
    ensure_folder_exist(str(path))
    Path(path).write_text(serialize_solution(selection), encoding='utf-8', newline='\n')


def read_td(path: str | Path) -> TreeDecomposition:
    return parse_td(Path(path).read_text(encoding='utf-8'))


def write_td(path: str | Path, td: TreeDecomposition, n: int) -> None:
    ensure_folder_exist(str(path))
    Path(path).write_text(serialize_td(td, n), encoding='utf-8', newline='\n')
