"""Per-step records of a greedy or bounded construction."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

# fields that hold arbitrary-precision integers; serialized as decimal strings
BIG_FIELDS = ("b_k", "a_k", "deviation", "step_bound", "global_bound")


@dataclass(frozen=True)
class TraceStep:
    k: int
    b_k: int
    a_k: int
    deviation: int
    step_bound: int
    global_bound: int
    candidates_examined: int

    def to_json(self) -> dict:
        d = asdict(self)
        for name in BIG_FIELDS:
            d[name] = str(d[name])
        return d

    @classmethod
    def from_json(cls, d: dict) -> "TraceStep":
        names = {f.name for f in fields(cls)}
        if set(d) != names:
            raise ValueError(f"trace step keys {sorted(d)} != {sorted(names)}")
        return cls(**{name: int(d[name]) for name in names})


@dataclass(frozen=True)
class ConstructionTrace:
    steps: tuple[TraceStep, ...] = ()

    @property
    def elements(self) -> tuple[int, ...]:
        """The constructed set ``a_1, ..., a_K`` in construction order."""
        return tuple(s.a_k for s in self.steps)

    @property
    def max_deviation(self) -> int:
        return max((s.deviation for s in self.steps), default=0)

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def __iter__(self):
        return iter(self.steps)
