"""Event bus.

Solvers report progress by publishing events; the console decides how to
render them. Handlers are subscribed by the type annotation of their only
parameter.

>>> from dataclasses import dataclass
>>> @dataclass
... class Converged(Event):
...     iterations: int
...
>>> bus = Bus()
>>> @bus.events.subscribe
... def report(event: Converged) -> None:
...     print(f"converged after {event.iterations} iterations")
...
>>> bus.events.publish(Converged(2))
converged after 2 iterations

Raising an event unwinds the stack inside an :class:`Error` until an error
handler publishes it:

>>> try:
...     with bus.events.errorhandler():
...         bus.events.raise_(Converged(3))
... except Error as error:
...     print(type(error.event).__name__)
converged after 3 iterations
Converged

Contexts are events with a duration. Their handlers return context managers,
which wrap the block that publishes the context.
"""
from __future__ import annotations

from collections import defaultdict
from contextlib import ExitStack
from contextlib import contextmanager
from typing import Any
from typing import Callable
from typing import ContextManager
from typing import DefaultDict
from typing import get_type_hints
from typing import Iterator
from typing import List
from typing import NoReturn
from typing import Tuple
from typing import Type
from typing import TypeVar
from typing import Union

from mmrilp.base.exceptionhandlers import ExceptionHandler
from mmrilp.base.exceptionhandlers import exceptionhandler


__all__ = [
    "Bus",
    "Context",
    "Error",
    "Event",
]


class Event:
    """Something that happened."""


class Context:
    """Something that is happening."""


class Error(Exception):
    """Carries a raised event up the stack."""

    def __init__(self, event: Event) -> None:
        """Initialize."""
        super().__init__(event)
        self.event = event


H = TypeVar("H", bound=Callable[..., Any])


def _subject(handler: Callable[..., Any]) -> type:
    """Return the annotated type of the handler's parameter."""
    hints = {key: hint for key, hint in get_type_hints(handler).items()}
    hints.pop("return", None)
    if not hints:
        raise TypeError(f"handler {handler} has no annotated parameter")
    return next(iter(hints.values()))  # type: ignore[no-any-return]


class _Events:
    """Publish and subscribe to events."""

    def __init__(self) -> None:
        """Initialize."""
        self.handlers: DefaultDict[type, List[Callable[[Any], None]]] = defaultdict(
            list
        )

    def subscribe(self, handler: H) -> H:
        """Invoke the handler for every event of its annotated type."""
        self.handlers[_subject(handler)].append(handler)
        return handler

    def publish(self, event: Event) -> None:
        """Invoke the handlers subscribed to the type of the event."""
        for handler in self.handlers[type(event)]:
            handler(event)

    def raise_(self, event: Event) -> NoReturn:
        """Raise the event as an :class:`Error`."""
        raise Error(event)

    def reraise(
        self,
        event: Event,
        *,
        when: Union[Type[BaseException], Tuple[Type[BaseException], ...]] = Exception,
    ) -> ExceptionHandler:
        """Turn matching exceptions into the given event."""
        types = when if isinstance(when, tuple) else (when,)

        @exceptionhandler(*types)
        def _(exception: BaseException) -> NoReturn:
            raise Error(event) from exception

        return _

    def errorhandler(self) -> ExceptionHandler:
        """Publish raised events without swallowing them."""

        @exceptionhandler
        def _(error: Error) -> None:
            self.publish(error.event)

        return _


class _Contexts:
    """Publish and subscribe to contexts."""

    def __init__(self) -> None:
        """Initialize."""
        self.handlers: DefaultDict[
            type, List[Callable[[Any], ContextManager[None]]]
        ] = defaultdict(list)

    def subscribe(self, handler: H) -> H:
        """Enter the handler's context manager for every matching context."""
        self.handlers[_subject(handler)].append(handler)
        return handler

    @contextmanager
    def publish(self, context: Context) -> Iterator[None]:
        """Run the block inside every subscribed context manager."""
        with ExitStack() as stack:
            for handler in self.handlers[type(context)]:
                stack.enter_context(handler(context))
            yield


class Bus:
    """Event bus."""

    def __init__(self) -> None:
        """Initialize."""
        self.events = _Events()
        self.contexts = _Contexts()
