"""Channel symbols and symbol streams.

A symbol is either a data symbol (an ``int`` in ``0..q-1``, the node is
ON) or the distinguished silence symbol ``N`` (the node is OFF, i.e.
listening). Silence is a sentinel object rather than the integer ``q``
so that arithmetic on it fails loudly instead of corrupting a stream.

Streams serialize as whitespace-separated tokens: decimal digits for
data symbols and the literal token ``N`` for silence, e.g. ``0 N 1 N N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple, Union

from .errors import InvalidParameterError, StreamFormatError


class _Silence:
    """Singleton marker for a slot with no transmission."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "N"


N = _Silence()

Symbol = Union[int, _Silence]
Word = Tuple[Symbol, ...]


def is_data(symbol: Symbol) -> bool:
    """True for a data symbol (node ON), False for silence."""
    return not isinstance(symbol, _Silence)


@dataclass(frozen=True)
class Alphabet:
    """The q+1 channel symbols: data symbols ``0..q-1`` plus silence."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or isinstance(self.q, bool) or self.q < 1:
            raise InvalidParameterError(
                f"alphabet needs at least one data symbol, got q={self.q!r}")

    @property
    def size(self) -> int:
        return self.q + 1

    def symbols(self) -> Iterator[Symbol]:
        """All symbols, data symbols first, silence last."""
        yield from range(self.q)
        yield N


def is_admissible(word: Sequence[Symbol]) -> bool:
    """True iff no two consecutive symbols are both data symbols."""
    return all(not (is_data(a) and is_data(b)) for a, b in zip(word, word[1:]))


def parse_stream(text: str, q: int | None = None) -> Word:
    """Parse a token stream like ``0 N 1 N N`` into a word.

    When ``q`` is given, data symbols must lie in ``0..q-1``.
    """
    out = []
    for token in text.split():
        if token == "N":
            out.append(N)
        elif token.isdigit():
            value = int(token)
            if q is not None and value >= q:
                raise StreamFormatError(
                    f"data symbol {value} out of range for q={q}")
            out.append(value)
        else:
            raise StreamFormatError(f"bad stream token {token!r}")
    return tuple(out)


def format_stream(word: Sequence[Symbol]) -> str:
    """Inverse of :func:`parse_stream`."""
    return " ".join("N" if not is_data(s) else str(s) for s in word)


def symbol_key(symbol: Symbol) -> tuple:
    """Sort key placing data symbols (in numeric order) before silence."""
    return (1, 0) if not is_data(symbol) else (0, symbol)


def word_key(word: Sequence[Symbol]) -> tuple:
    """Lexicographic sort key for words; N orders after all data symbols."""
    return tuple(symbol_key(s) for s in word)
