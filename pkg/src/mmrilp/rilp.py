"""The RILP instance format.

RILP is a line-oriented text format. ``#`` starts a comment, tokens are
separated by whitespace, and variables are numbered from 1::

    RILP 1
    NAME ex1
    VARS 2
    CONS 1
    OBJ
    1 1 3
    2 2 2
    ROW 1 LE -1
    1 -1
    2 -1
    END

``OBJ`` is followed by one ``index lower upper`` line per variable. Each
``ROW id SENSE rhs`` header is followed by ``index coefficient`` lines until
the next ``ROW`` or ``END``. The writer emits normalized instances, so every
row it writes is a LE row.

>>> text = write_rilp(parse_rilp(EXAMPLE))
>>> text == EXAMPLE
True
"""
from __future__ import annotations

import re
from typing import Dict
from typing import Iterator
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np

from mmrilp.errors import MalformedInstance
from mmrilp.errors import ParseError
from mmrilp.model import IntervalIlpInstance
from mmrilp.model import LinearConstraint
from mmrilp.model import Sense
from mmrilp.model import normalize


VERSION = 1
SIGNIFICANT_DIGITS = 12

EXAMPLE = """\
RILP 1
NAME ex1
VARS 2
CONS 1
OBJ
1 1 3
2 2 2
ROW 1 LE -1
1 -1
2 -1
END
"""

_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)")
_COUNT = re.compile(r"\d+")

Line = Tuple[int, List[str]]


def _lines(text: str) -> Iterator[Line]:
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split("#", 1)[0].split()
        if tokens:
            yield number, tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.lines = list(_lines(text))
        self.position = 0
        self.current: Optional[int] = None

    def peek(self) -> Optional[List[str]]:
        if self.position < len(self.lines):
            return self.lines[self.position][1]
        return None

    def at(self, keyword: str) -> bool:
        tokens = self.peek()
        return tokens is not None and tokens[0] == keyword

    def next(self) -> List[str]:
        if self.position >= len(self.lines):
            raise ParseError("unexpected end of input, missing END", self.current)
        self.current, tokens = self.lines[self.position]
        self.position += 1
        return tokens

    def error(self, reason: str) -> ParseError:
        return ParseError(reason, self.current)

    def keyword(self, keyword: str, arguments: int) -> List[str]:
        tokens = self.peek()
        if tokens is None or tokens[0] != keyword:
            found = "end of input" if tokens is None else repr(tokens[0])
            line = self.lines[self.position][0] if tokens else self.current
            raise ParseError(f"expected {keyword}, found {found}", line)
        self.next()
        if len(tokens) != arguments + 1:
            raise self.error(f"{keyword} takes {arguments} argument(s)")
        return tokens[1:]

    def count(self, token: str) -> int:
        if not _COUNT.fullmatch(token):
            raise self.error(f"expected a non-negative integer, found {token!r}")
        return int(token)

    def number(self, token: str) -> float:
        if not _NUMBER.fullmatch(token):
            raise self.error(f"expected a decimal number, found {token!r}")
        return float(token)

    def index(self, token: str, n: int) -> int:
        index = self.count(token)
        if not 1 <= index <= n:
            raise MalformedInstance(
                f"line {self.current}: variable index {index} out of range 1..{n}"
            )
        return index - 1

    def parse(self) -> IntervalIlpInstance:
        [version] = self.keyword("RILP", 1)
        if version != str(VERSION):
            raise self.error(f"unsupported RILP version {version!r}")

        [name] = self.keyword("NAME", 1)
        [vars_] = self.keyword("VARS", 1)
        n = self.count(vars_)
        if n < 1:
            raise self.error("VARS must be at least 1")
        [cons] = self.keyword("CONS", 1)
        m = self.count(cons)

        lower, upper = self.objective(n)
        constraints = []
        while self.at("ROW"):
            constraints.append(self.row(n))

        self.keyword("END", 0)
        if len(constraints) != m:
            raise self.error(f"CONS declares {m} rows, found {len(constraints)}")

        if self.peek() is not None:
            self.next()
            raise self.error("content after END")

        instance = IntervalIlpInstance(name, lower, upper, tuple(constraints))
        return normalize(instance)

    def objective(self, n: int) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
        self.keyword("OBJ", 0)
        intervals: Dict[int, Tuple[float, float]] = {}
        for _ in range(n):
            if self.at("ROW") or self.at("END"):
                raise self.error(f"OBJ needs {n} lines, found {len(intervals)}")
            tokens = self.next()
            if len(tokens) != 3:
                raise self.error("expected 'index lower upper'")
            index = self.index(tokens[0], n)
            if index in intervals:
                raise MalformedInstance(
                    f"line {self.current}: duplicate interval for variable {index + 1}"
                )
            low, high = self.number(tokens[1]), self.number(tokens[2])
            if low > high:
                raise MalformedInstance(
                    f"line {self.current}: empty interval [{low}, {high}]"
                    f" for variable {index + 1}"
                )
            intervals[index] = low, high

        ordered = [intervals[index] for index in range(n)]
        return (
            tuple(low for low, _ in ordered),
            tuple(high for _, high in ordered),
        )

    def row(self, n: int) -> LinearConstraint:
        row_id, sense, rhs = self.keyword("ROW", 3)
        header = self.current
        self.count(row_id)
        if sense not in Sense.__members__:
            raise self.error(f"unknown sense {sense!r}")
        value = self.number(rhs)

        terms = []
        while self.peek() is not None and not (self.at("ROW") or self.at("END")):
            tokens = self.next()
            if len(tokens) != 2:
                raise self.error("expected 'index coefficient'")
            terms.append((self.index(tokens[0], n), self.number(tokens[1])))

        if not terms:
            raise MalformedInstance(f"line {header}: ROW {row_id} has no terms")
        return LinearConstraint(tuple(terms), Sense(sense), value)


def parse_rilp(text: str) -> IntervalIlpInstance:
    """Parse an instance in RILP format and normalize it.

    Raises:
        ParseError: The text is not valid RILP.
        MalformedInstance: The instance is invalid, for example an interval is
            empty or a variable index is out of range.
    """
    return _Parser(text).parse()


def format_number(value: float) -> str:
    """Format a number with up to 12 significant digits and no exponent."""
    if value == 0:
        return "0"
    return str(
        np.format_float_positional(
            value,
            precision=SIGNIFICANT_DIGITS,
            unique=False,
            fractional=False,
            trim="-",
        )
    )


def write_rilp(instance: IntervalIlpInstance) -> str:
    """Serialize the normalized instance in RILP format."""
    if not instance.is_normalized:
        instance = normalize(instance)

    lines = [
        f"RILP {VERSION}",
        f"NAME {instance.name}",
        f"VARS {instance.n}",
        f"CONS {len(instance.constraints)}",
        "OBJ",
    ]
    for index, (low, high) in enumerate(zip(instance.lower, instance.upper), 1):
        lines.append(f"{index} {format_number(low)} {format_number(high)}")

    for row_id, constraint in enumerate(instance.constraints, 1):
        rhs = format_number(constraint.rhs)
        lines.append(f"ROW {row_id} {constraint.sense.value} {rhs}")
        for index, coefficient in constraint.terms:
            lines.append(f"{index + 1} {format_number(coefficient)}")

    lines.append("END")
    return "\n".join(lines) + "\n"
