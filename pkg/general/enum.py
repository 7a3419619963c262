from enum import Enum as pEnum
from enum import IntEnum as pIntEnum


class Enum(pEnum):
    """Enum serialised by name (jsonpickle and str)."""

    def __getstate__(self):
        return self.name

    def __str__(self):
        return self.name


class IntEnum(pIntEnum):
    def __getstate__(self):
        return self.name

    def __str__(self):
        return self.name


class TaggedEnum(Enum):
    """Enum whose value carries a short command-line tag as first element.

    Examples:
    >>> class Shade(TaggedEnum):
    ...     DARK = 'd', 0
    >>> Shade.from_tag('d') is Shade.DARK
    True
    """

    @property
    def tag(self) -> str:
        return self.value[0]

    @classmethod
    def from_tag(cls, tag: str):
        for member in cls:
            if member.tag == tag:
                return member
        raise ValueError(f"unknown {cls.__name__} tag '{tag}'")

    @classmethod
    def tags(cls) -> list[str]:
        return [member.tag for member in cls]
