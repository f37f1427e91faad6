"""Exception handlers that can be stored, passed around, and combined.

An exception handler is a reusable context manager built from a callback:

>>> @exceptionhandler
... def usage(error: ValueError) -> NoReturn:
...     raise SystemExit(2)

Handlers apply to ``with`` blocks and, as decorators, to whole functions.
The callback runs only for matching exceptions. Returning True swallows the
exception; returning None lets it propagate.

Handlers compose with ``>>``, where the left operand sees the exception
first. The command-line interface builds its exit-code policy this way:

>>> @exceptionhandler
... def numerical(error: ArithmeticError) -> NoReturn:
...     raise SystemExit(4)
...
>>> policy = numerical >> usage
>>> try:
...     with policy:
...         raise ValueError("bad flag")
... except SystemExit as exit:
...     print(exit.code)
2

The base class handles nothing and is neutral under composition.
"""
from __future__ import annotations

import contextlib
from types import TracebackType
from typing import Callable
from typing import get_type_hints
from typing import List
from typing import NoReturn  # noqa: F401
from typing import Optional
from typing import overload
from typing import Tuple
from typing import Type
from typing import TypeVar
from typing import Union


__all__ = [
    "ExceptionHandler",
    "exceptionhandler",
]


E = TypeVar("E", bound=BaseException, contravariant=True)
Callback = Callable[[BaseException], Optional[bool]]
HandlerFunction = Callable[[E], Optional[bool]]


class ExceptionHandler(contextlib.ContextDecorator):
    """Reentrant context manager that may handle exceptions on exit."""

    def __enter__(self) -> None:
        """Enter the block."""

    def __exit__(
        self,
        exception_type: Optional[Type[BaseException]],
        exception: Optional[BaseException],
        traceback: Optional[TracebackType],
    ) -> Optional[bool]:
        """Leave the block without handling anything."""
        return None

    def __rshift__(self, other: ExceptionHandler) -> ExceptionHandler:
        """Let this handler see exceptions before ``other``."""
        return _Chain([self, other])


class _Chain(ExceptionHandler):
    """Handlers applied innermost first."""

    def __init__(self, handlers: List[ExceptionHandler]) -> None:
        self.handlers: List[ExceptionHandler] = []
        for handler in handlers:
            if isinstance(handler, _Chain):
                self.handlers.extend(handler.handlers)
            else:
                self.handlers.append(handler)
        self.stacks: List[contextlib.ExitStack] = []

    def __enter__(self) -> None:
        stack = contextlib.ExitStack()
        for handler in reversed(self.handlers):
            stack.enter_context(handler)
        self.stacks.append(stack)

    def __exit__(
        self,
        exception_type: Optional[Type[BaseException]],
        exception: Optional[BaseException],
        traceback: Optional[TracebackType],
    ) -> Optional[bool]:
        stack = self.stacks.pop()
        return stack.__exit__(exception_type, exception, traceback)


class _Callback(ExceptionHandler):
    """Invokes a callback for exceptions of the given types."""

    def __init__(self, callback: Callback, types: Tuple[Type[BaseException], ...]):
        self.callback = callback
        self.types = types

    def __exit__(
        self,
        exception_type: Optional[Type[BaseException]],
        exception: Optional[BaseException],
        traceback: Optional[TracebackType],
    ) -> Optional[bool]:
        if exception is not None and isinstance(exception, self.types):
            return self.callback(exception)
        return None


def _annotated_type(callback: Callable[..., Optional[bool]]) -> Type[BaseException]:
    hints = get_type_hints(callback)
    hints.pop("return", None)
    if not hints:
        raise TypeError(f"missing type annotation on {callback}")
    return next(iter(hints.values()))  # type: ignore[no-any-return]


@overload
def exceptionhandler(__callback: HandlerFunction[E]) -> ExceptionHandler:
    """Use as a plain decorator."""  # noqa: D418


@overload
def exceptionhandler(
    *types: Type[BaseException],
) -> Callable[[HandlerFunction[E]], ExceptionHandler]:
    """Use as a decorator factory."""  # noqa: D418


def exceptionhandler(
    *args: Union[HandlerFunction[E], Type[BaseException]],
) -> Union[
    ExceptionHandler,
    Callable[[HandlerFunction[E]], ExceptionHandler],
]:
    """Create an exception handler from a callback.

    Use it bare, taking the exception type from the annotation, or pass the
    exception types explicitly::

        @exceptionhandler(ParseError, OSError)
        def handler(error):
            ...
    """
    if all(isinstance(arg, type) and issubclass(arg, BaseException) for arg in args):
        types: Tuple[Type[BaseException], ...] = args  # type: ignore[assignment]

        def _decorator(callback: Callable[..., Optional[bool]]) -> ExceptionHandler:
            return _Callback(callback, types or (_annotated_type(callback),))

        return _decorator

    [callback] = args
    return _Callback(callback, (_annotated_type(callback),))  # type: ignore[arg-type]
