"""Character tables: named irreducible characters given by their values on a basis."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .scalars import Scalar, as_cyc, format_scalar, parse_scalar

__all__ = ["Irrep", "CharacterTable"]


@dataclass(frozen=True)
class Irrep:
    name: str
    dim: int
    values: tuple  # one exact scalar per basis element


@dataclass(frozen=True)
class CharacterTable:
    """Irreducible characters as coefficient vectors over a fixed basis.

    For a table of H the vectors are functionals ``psi(e_i)``; for a table of
    the dual they are elements of H written in the basis ``e_i``.
    """

    conductor: int
    irreps: tuple[Irrep, ...]

    def __post_init__(self):
        if not self.irreps:
            raise ValueError("empty character table")
        size = len(self.irreps[0].values)
        if any(len(r.values) != size for r in self.irreps):
            raise ValueError("character value vectors differ in length")
        names = [r.name for r in self.irreps]
        if len(set(names)) != len(names):
            raise ValueError("duplicate irrep names")

    @property
    def size(self) -> int:
        return len(self.irreps[0].values)

    @property
    def names(self) -> list[str]:
        return [r.name for r in self.irreps]

    @property
    def dims(self) -> list[int]:
        return [r.dim for r in self.irreps]

    def __getitem__(self, name: str) -> Irrep:
        for r in self.irreps:
            if r.name == name:
                return r
        raise KeyError(f"no irrep named {name!r}; have {', '.join(self.names)}")

    def __iter__(self):
        return iter(self.irreps)

    def __len__(self):
        return len(self.irreps)

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "irreps": [
                {"name": r.name, "dim": r.dim, "values": [format_scalar(v) for v in r.values]}
                for r in self.irreps
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CharacterTable":
        try:
            n = int(data["conductor"])
            irreps = tuple(
                Irrep(
                    str(r["name"]),
                    int(r["dim"]),
                    tuple(_parse_value(v, n) for v in r["values"]),
                )
                for r in data["irreps"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed character table: {exc}") from None
        return cls(n, irreps)

    @classmethod
    def load(cls, path: str) -> "CharacterTable":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def _parse_value(v, conductor: int) -> Scalar:
    if isinstance(v, int):
        return v
    x = parse_scalar(str(v), conductor)
    return _simplify(x)


def _simplify(x: Scalar) -> Scalar:
    """Demote rational CycScalars to int/Fraction so rational tables stay cheap."""
    if hasattr(x, "is_rational") and x.is_rational():
        q = x.to_rational()
        return q.numerator if q.denominator == 1 else q
    return x


def make_table(conductor: int, rows: Sequence[tuple[str, int, Sequence[Scalar]]]) -> CharacterTable:
    return CharacterTable(
        conductor,
        tuple(Irrep(name, dim, tuple(_simplify(as_cyc(v, conductor)) for v in vals)) for name, dim, vals in rows),
    )
