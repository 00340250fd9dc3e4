"""Input sequences ``b_1, b_2, ...`` and trace serialization.

Indices are 1-based.  A sequence spec is one of::

    file:<path>                one integer per line, '#' starts a comment
    list:<csv>                 finite explicit list
    squares | cubes | primes | naturals
    arith:<a0>,<d>             a0, a0+d, a0+2d, ...
    geom:<a0>,<ratio>          a0, a0*r, a0*r^2, ...
    affine-geom:<a0>,<r>,<c>   b_1 = a0, b_{k+1} = r*b_k + c
"""

from __future__ import annotations

import csv
import io
import json
import os
from itertools import count
from typing import Callable, Iterator, Optional, Sequence

from .exceptions import PreconditionError
from .trace import ConstructionTrace, TraceStep


INFINITE_SCHEMES = ("squares", "cubes", "primes", "naturals", "arith", "geom", "affine-geom")


class SequenceExhausted(PreconditionError, IndexError):
    """A finite sequence was asked for a term past its end."""


def iter_primes() -> Iterator[int]:
    """Unbounded incremental sieve of Eratosthenes."""
    yield 2
    composites = {}  # next odd composite -> step (2p)
    for n in count(3, 2):
        step = composites.pop(n, None)
        if step is None:
            composites[n * n] = 2 * n
            yield n
        else:
            nxt = n + step
            while nxt in composites:
                nxt += step
            composites[nxt] = step


class IntSequence:
    """Lazily materialized integer sequence with 1-based access.

    Terms are cached as they are produced, so ``term(k)`` is a pure
    function of the source and ``k``.
    """

    def __init__(self, source: str, iterator: Iterator[int], length: Optional[int] = None):
        self.source = source
        self.length = length
        self._it = iterator
        self._terms: list[int] = []

    @classmethod
    def from_values(cls, values: Sequence[int], source: Optional[str] = None) -> "IntSequence":
        values = [int(v) for v in values]
        src = source or "list:" + ",".join(map(str, values))
        return cls(src, iter(values), len(values))

    @classmethod
    def from_function(cls, source: str, f: Callable[[int], int]) -> "IntSequence":
        return cls(source, (f(k) for k in count(1)))

    @property
    def finite(self) -> bool:
        return self.length is not None

    def _fill(self, k: int):
        while len(self._terms) < k:
            try:
                self._terms.append(next(self._it))
            except StopIteration:
                raise SequenceExhausted(
                    f"{self.source}: requested term {k}, only {len(self._terms)} available"
                ) from None

    def term(self, k: int) -> int:
        """The ``k``-th term, ``k >= 1``."""
        if k < 1:
            raise PreconditionError(f"sequence index {k} < 1")
        self._fill(k)
        return self._terms[k - 1]

    def prefix(self, K: int) -> tuple[int, ...]:
        """``(b_1, ..., b_K)``; an immutable snapshot safe to share."""
        if K < 0:
            raise PreconditionError(f"prefix length {K} < 0")
        self._fill(K)
        return tuple(self._terms[:K])

    def all(self) -> tuple[int, ...]:
        if not self.finite:
            raise PreconditionError(f"{self.source} is infinite; give a term count")
        return self.prefix(self.length)

    def __iter__(self):
        for k in count(1):
            try:
                yield self.term(k)
            except SequenceExhausted:
                return

    def __repr__(self):
        return f"IntSequence({self.source!r})"


def _ints(params: str, n: int, scheme: str) -> list[int]:
    parts = [p.strip() for p in params.split(",")]
    if len(parts) != n:
        raise PreconditionError(f"{scheme}: expected {n} comma-separated integers, got {params!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise PreconditionError(f"{scheme}: malformed parameters {params!r}") from None


def _affine(a0: int, r: int, c: int) -> Iterator[int]:
    b = a0
    while True:
        yield b
        b = r * b + c


def read_int_file(path: str) -> list[int]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc.strerror}") from None
    values = []
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            values.append(int(text))
        except ValueError:
            raise PreconditionError(f"{path}:{lineno}: not an integer: {text!r}") from None
    return values


def parse_sequence_spec(spec: str) -> IntSequence:
    scheme, _, params = spec.strip().partition(":")
    if scheme == "file":
        return IntSequence.from_values(read_int_file(params), source=spec)
    if scheme == "list":
        if not params.strip():
            raise PreconditionError("list: needs at least one value")
        return IntSequence.from_values(_ints(params, params.count(",") + 1, "list"), source=spec)
    if params and scheme in ("squares", "cubes", "primes", "naturals"):
        raise PreconditionError(f"{scheme} takes no parameters")
    if scheme == "squares":
        return IntSequence.from_function(spec, lambda k: k * k)
    if scheme == "cubes":
        return IntSequence.from_function(spec, lambda k: k**3)
    if scheme == "naturals":
        return IntSequence.from_function(spec, lambda k: k)
    if scheme == "primes":
        return IntSequence(spec, iter_primes())
    if scheme == "arith":
        a0, d = _ints(params, 2, scheme)
        return IntSequence.from_function(spec, lambda k: a0 + (k - 1) * d)
    if scheme == "geom":
        a0, r = _ints(params, 2, scheme)
        return IntSequence.from_function(spec, lambda k: a0 * r ** (k - 1))
    if scheme == "affine-geom":
        return IntSequence(spec, _affine(*_ints(params, 3, scheme)))
    raise PreconditionError(f"unknown sequence scheme {scheme!r}")


def parse_set_spec(spec: str) -> list[int]:
    """A finite integer set: a sequence spec with a finite source, a file
    path, or a bare comma-separated list."""
    if ":" in spec:
        scheme = spec.split(":", 1)[0]
        if scheme in ("list", "file"):
            return list(parse_sequence_spec(spec).all())
    if os.path.exists(spec):
        return read_int_file(spec)
    return list(parse_sequence_spec("list:" + spec).all())


def trace_to_json(trace: ConstructionTrace) -> str:
    return json.dumps([s.to_json() for s in trace], indent=2) + "\n"


def trace_from_json(text: str) -> ConstructionTrace:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("trace JSON must be an array of steps")
    return ConstructionTrace(tuple(TraceStep.from_json(d) for d in data))


CSV_HEADER = ("k", "b_k", "a_k", "deviation", "step_bound", "candidates")


def trace_to_csv(trace: ConstructionTrace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in trace:
        w.writerow((s.k, s.b_k, s.a_k, s.deviation, s.step_bound, s.candidates_examined))
    return buf.getvalue()


def emit_trace(trace: ConstructionTrace, format: str = "json", destination=None) -> str:
    """Serialize ``trace``; write it to ``destination`` (path or file
    object) when given.  Returns the serialized text."""
    if format == "json":
        text = trace_to_json(trace)
    elif format == "csv":
        text = trace_to_csv(trace)
    else:
        raise PreconditionError(f"unknown trace format {format!r}")
    if destination is None:
        return text
    if hasattr(destination, "write"):
        destination.write(text)
        return text
    try:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise PreconditionError(f"cannot write {destination}: {exc.strerror}") from None
    return text
