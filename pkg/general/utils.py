from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

INT64_MAX = 2 ** 63 - 1


class ValueOverflowError(OverflowError):
    pass


def checked_sum(values: Iterable[int], what: str = 'sum') -> int:
    """Sum integers and reject results outside the signed 64-bit range.

    Examples:
    >>> checked_sum([1, 2, 3])
    6
    >>> checked_sum([INT64_MAX, 1])
    Traceback (most recent call last):
    ...
    general.utils.ValueOverflowError: sum exceeds the 64-bit range
    """
    total = 0
    for value in values:
        total += value
    if total > INT64_MAX or total < -INT64_MAX - 1:
        raise ValueOverflowError(f'{what} exceeds the 64-bit range')
    return total


@dataclass
class ValidationReport:
    """Outcome of a reporting check. Empty violation list means ok."""
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return len(self.violations) == 0

    def add(self, message: str) -> None:
        self.violations.append(message)

    def __contains__(self, message: str) -> bool:
        return message in self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return 'ok'
        return '; '.join(self.violations)


def ensure_folder_exist(path: str) -> None:
    """Create the parent folder of `path` if it does not exist."""
    folder = Path(path).parent
    if not folder.exists():
        os.makedirs(folder, exist_ok=True)


def bit_members(mask: int) -> list[int]:
    """Indices of the set bits of `mask`, ascending.

    Examples:
    >>> bit_members(0b1011)
    [0, 1, 3]
    """
    members = []
    index = 0
    while mask:
        if mask & 1:
            members.append(index)
        mask >>= 1
        index += 1
    return members
