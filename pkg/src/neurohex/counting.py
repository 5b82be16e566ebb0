"""Instrumented arithmetic for operation-cost measurement.

:class:`Tracked` wraps a number and reports every arithmetic operation
performed on it to the :class:`OpCounter` active in the current context.
Running an unmodified kernel on ``Tracked`` inputs therefore yields exact
per-class operation counts for that code path.

Cost model:

* ``+`` and ``-`` (binary) count as additions.
* ``*`` counts as a multiplication.
* ``/``, ``//``, ``%`` and square roots count as divisions (divider-class
  operations).
* ``<<``, ``>>``, ``&`` and ``|`` count as shifts (wiring/bit-selection).
* Negation, ``abs``, comparisons and table indexing are sign handling or
  selection and are not counted.
* :func:`sin`, :func:`cos`, :func:`atan2` count as trigonometric calls.

Every operation result, and every input, updates ``max_bit_width`` with the
bit length of its integer magnitude.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass, fields

_active: contextvars.ContextVar[OpCounter | None] = contextvars.ContextVar(
    "neurohex_op_counter", default=None
)


@dataclass
class OpCounter:
    adds: int = 0
    muls: int = 0
    divs: int = 0
    shifts: int = 0
    trig_calls: int = 0
    max_bit_width: int = 0

    def observe(self, value) -> None:
        width = int(abs(value)).bit_length()
        if width > self.max_bit_width:
            self.max_bit_width = width

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@contextlib.contextmanager
def counting():
    """Activate a fresh counter for the enclosed block and yield it."""
    counter = OpCounter()
    token = _active.set(counter)
    try:
        yield counter
    finally:
        _active.reset(token)


def _unwrap(x):
    return x.value if isinstance(x, Tracked) else x


def _record(kind: str | None, result) -> Tracked:
    counter = _active.get()
    if counter is not None:
        if kind is not None:
            setattr(counter, kind, getattr(counter, kind) + 1)
        counter.observe(result)
    return Tracked(result, _observe=False)


class Tracked:
    """A number whose arithmetic is reported to the active counter."""

    __slots__ = ("value",)

    def __init__(self, value, _observe=True):
        self.value = _unwrap(value)
        if _observe:
            counter = _active.get()
            if counter is not None:
                counter.observe(self.value)

    def __repr__(self):
        return f"Tracked({self.value!r})"

    # counted arithmetic
    def __add__(self, o):
        return _record("adds", self.value + _unwrap(o))

    def __radd__(self, o):
        return _record("adds", _unwrap(o) + self.value)

    def __sub__(self, o):
        return _record("adds", self.value - _unwrap(o))

    def __rsub__(self, o):
        return _record("adds", _unwrap(o) - self.value)

    def __mul__(self, o):
        return _record("muls", self.value * _unwrap(o))

    def __rmul__(self, o):
        return _record("muls", _unwrap(o) * self.value)

    def __truediv__(self, o):
        return _record("divs", self.value / _unwrap(o))

    def __rtruediv__(self, o):
        return _record("divs", _unwrap(o) / self.value)

    def __floordiv__(self, o):
        return _record("divs", self.value // _unwrap(o))

    def __rfloordiv__(self, o):
        return _record("divs", _unwrap(o) // self.value)

    def __mod__(self, o):
        return _record("divs", self.value % _unwrap(o))

    def __rmod__(self, o):
        return _record("divs", _unwrap(o) % self.value)

    def __lshift__(self, o):
        return _record("shifts", self.value << _unwrap(o))

    def __rlshift__(self, o):
        return _record("shifts", _unwrap(o) << self.value)

    def __rshift__(self, o):
        return _record("shifts", self.value >> _unwrap(o))

    def __rrshift__(self, o):
        return _record("shifts", _unwrap(o) >> self.value)

    def __and__(self, o):
        return _record("shifts", self.value & _unwrap(o))

    def __rand__(self, o):
        return _record("shifts", _unwrap(o) & self.value)

    def __or__(self, o):
        return _record("shifts", self.value | _unwrap(o))

    def __ror__(self, o):
        return _record("shifts", _unwrap(o) | self.value)

    # uncounted: sign handling, selection, comparison
    def __neg__(self):
        return _record(None, -self.value)

    def __abs__(self):
        return _record(None, abs(self.value))

    def __index__(self):
        return self.value.__index__()

    def __int__(self):
        return int(self.value)

    def __float__(self):
        return float(self.value)

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, o):
        return self.value == _unwrap(o)

    def __ne__(self, o):
        return self.value != _unwrap(o)

    def __lt__(self, o):
        return self.value < _unwrap(o)

    def __le__(self, o):
        return self.value <= _unwrap(o)

    def __gt__(self, o):
        return self.value > _unwrap(o)

    def __ge__(self, o):
        return self.value >= _unwrap(o)

    def __hash__(self):
        return hash(self.value)


def _trig(fn, *args):
    counter = _active.get()
    if counter is not None:
        counter.trig_calls += 1
    result = fn(*(float(_unwrap(a)) for a in args))
    return _record(None, result) if counter is not None else result


def sin(x):
    return _trig(math.sin, x)


def cos(x):
    return _trig(math.cos, x)


def atan2(y, x):
    return _trig(math.atan2, y, x)


def sqrt(x):
    counter = _active.get()
    result = math.sqrt(float(_unwrap(x)))
    if counter is None:
        return result
    return _record("divs", result)


def value(x):
    """Strip instrumentation from a number or a tuple of numbers."""
    if isinstance(x, tuple):
        return tuple(_unwrap(v) for v in x)
    return _unwrap(x)
