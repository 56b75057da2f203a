"""Machine-readable result types emitted by the library and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbelianGroup


@dataclass(frozen=True)
class DegreeEntry:
    degree: int
    rank: int
    torsion: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.degree,
            "rank": self.rank,
            "torsion": list(self.torsion),
        }

    @property
    def invariants(self):
        return self.rank, self.torsion

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion


@dataclass(frozen=True)
class CohomologyReport:
    """Per-degree invariant factors with provenance (singular or cellular)."""

    method: str
    degrees: tuple[DegreeEntry, ...]

    @classmethod
    def from_groups(cls, method: str, groups: dict[int, AbelianGroup]):
        entries = tuple(
            DegreeEntry(n, *groups[n].invariants) for n in sorted(groups)
        )
        return cls(method, entries)

    def entry(self, n: int) -> DegreeEntry:
        for e in self.degrees:
            if e.degree == n:
                return e
        return DegreeEntry(n, 0, ())

    def invariants(self, n: int):
        return self.entry(n).invariants

    def top_degree(self) -> int:
        return max((e.degree for e in self.degrees), default=-1)

    def nonzero_degrees(self) -> list[int]:
        return [e.degree for e in self.degrees if not e.is_zero()]

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "degrees": [e.to_json_dict() for e in self.degrees],
        }


@dataclass(frozen=True)
class DegreeComparison:
    degree: int
    hs: DegreeEntry
    hc: DegreeEntry

    @property
    def isomorphic(self) -> bool:
        return self.hs.invariants == self.hc.invariants

    def to_json_dict(self) -> dict:
        return {
            "n": self.degree,
            "hs": {"rank": self.hs.rank, "torsion": list(self.hs.torsion)},
            "hc": {"rank": self.hc.rank, "torsion": list(self.hc.torsion)},
            "isomorphic": self.isomorphic,
        }


@dataclass(frozen=True)
class ComparisonReport:
    """Outcome of running both cohomology computations on one input."""

    cellular: bool
    witness: tuple[str, int] | None
    degrees: tuple[DegreeComparison, ...]

    @property
    def all_isomorphic(self) -> bool:
        return all(d.isomorphic for d in self.degrees)

    @property
    def theorem_upheld(self) -> bool:
        """Cellular inputs must have isomorphic cohomologies; a mismatch on
        a non-cellular input is a finding, not a contradiction."""
        return self.all_isomorphic or not self.cellular

    def to_json_dict(self) -> dict:
        return {
            "cellular": self.cellular,
            "witness": (
                None
                if self.witness is None
                else {"element": self.witness[0], "degree": self.witness[1]}
            ),
            "degrees": [d.to_json_dict() for d in self.degrees],
            "theorem_upheld": self.theorem_upheld,
        }
