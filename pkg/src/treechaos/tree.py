"""Combinatorics of the homogeneous tree of degree q+1.

Vertices are addressed by reduced words relative to a fixed root: the first
symbol picks one of the q+1 neighbours of the root, every later symbol picks
one of the q children away from the root.  The boundary is represented by
finite partitions into cones anchored at vertices; the canonical probability
measure gives all cones of equal depth equal mass, which makes every boundary
integral of cone-constant data an exact finite sum.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from collections.abc import Mapping
from typing import Iterable, Sequence

from .errors import ConeTooShallow, SymbolOutOfRange


@dataclass(frozen=True, slots=True)
class TreeParams:
    """Branching parameter q (vertex degree q+1), q >= 2."""

    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"branching parameter must be >= 2, got {self.q}")

    @property
    def tau(self) -> float:
        """Spectral period 2*pi/log(q)."""
        return 2.0 * math.pi / math.log(self.q)

    @property
    def log_q(self) -> float:
        return math.log(self.q)


@dataclass(frozen=True, slots=True)
class Vertex:
    word: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.word)

    @property
    def is_root(self) -> bool:
        return not self.word

    def parent(self) -> "Vertex":
        if not self.word:
            raise ValueError("the root has no parent")
        return Vertex(self.word[:-1])

    def child_symbols(self, params: TreeParams) -> range:
        return range(params.q + 1) if self.is_root else range(params.q)

    def child(self, symbol: int) -> "Vertex":
        return Vertex(self.word + (symbol,))


ROOT = Vertex(())


def parse_vertex(word: Sequence[int], params: TreeParams) -> Vertex:
    """Validate a word and wrap it as a Vertex."""
    word = tuple(int(s) for s in word)
    for i, s in enumerate(word):
        limit = params.q if i == 0 else params.q - 1
        if not 0 <= s <= limit:
            raise SymbolOutOfRange(
                f"symbol {s} at position {i} outside [0, {limit}]"
            )
    return Vertex(word)


def common_prefix_length(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def distance(x: Vertex, y: Vertex) -> int:
    """Edge-path distance: the two words meet at their longest common prefix."""
    lcp = common_prefix_length(x.word, y.word)
    return len(x.word) + len(y.word) - 2 * lcp


def sphere_size(n: int, params: TreeParams) -> int:
    if n < 0:
        raise ValueError("sphere radius must be >= 0")
    if n == 0:
        return 1
    return (params.q + 1) * params.q ** (n - 1)


def ball_size(radius: int, params: TreeParams) -> int:
    return sum(sphere_size(n, params) for n in range(radius + 1))


@lru_cache(maxsize=64)
def _sphere_words(n: int, q: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    return tuple(
        (first,) + rest
        for first in range(q + 1)
        for rest in product(range(q), repeat=n - 1)
    )


def enumerate_sphere(n: int, params: TreeParams) -> list[Vertex]:
    """All vertices at distance n from the root, in lexicographic word order."""
    return [Vertex(w) for w in _sphere_words(n, params.q)]


def enumerate_ball(radius: int, params: TreeParams) -> list[Vertex]:
    """All vertices within the closed ball, ordered by depth then word."""
    if radius < 0:
        raise ValueError("ball radius must be >= 0")
    out: list[Vertex] = []
    for n in range(radius + 1):
        out.extend(enumerate_sphere(n, params))
    return out


@dataclass(frozen=True, slots=True)
class BoundaryCone:
    """The set of boundary rays passing through the anchor vertex."""

    anchor: Vertex

    def __post_init__(self):
        if self.anchor.is_root:
            raise ValueError("a boundary cone must be anchored away from the root")

    @property
    def depth(self) -> int:
        return self.anchor.depth


def horocycle_height(x: Vertex, cone: BoundaryCone) -> int:
    """Busemann height of x along any ray in the cone, normalised to 0 at the root.

    Equals lim_n (n - d(x, omega_n)); the limit stabilises once the ray is
    longer than |x|, hence the depth requirement.
    """
    if cone.depth <= x.depth:
        raise ConeTooShallow(
            f"cone depth {cone.depth} <= |x| = {x.depth}; height is ambiguous"
        )
    lcp = common_prefix_length(x.word, cone.anchor.word)
    return 2 * lcp - x.depth


def cone_measure(cone: BoundaryCone, params: TreeParams) -> Fraction:
    """Mass of the cone under the canonical probability measure, exact."""
    return Fraction(1, (params.q + 1) * params.q ** (cone.depth - 1))


@dataclass(frozen=True)
class ConeFunction:
    """Boundary function constant on cones of a fixed depth.

    `values` is complete: one entry per depth-R anchor.
    """

    params: TreeParams
    depth: int
    values: Mapping[Vertex, complex]

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("cone depth must be >= 1")
        expected = sphere_size(self.depth, self.params)
        if len(self.values) != expected:
            raise ValueError(
                f"cone function at depth {self.depth} needs {expected} values, "
                f"got {len(self.values)}"
            )

    @classmethod
    def constant(cls, params: TreeParams, depth: int, value: complex) -> "ConeFunction":
        value = complex(value)
        return cls(params, depth, {v: value for v in enumerate_sphere(depth, params)})

    @classmethod
    def from_anchor_values(
        cls, params: TreeParams, depth: int, values: Mapping[Vertex, complex]
    ) -> "ConeFunction":
        return cls(params, depth, {v: complex(c) for v, c in values.items()})


def integrate_boundary(F: ConeFunction) -> complex:
    """Exact boundary integral: all cones of equal depth carry equal mass."""
    weight = cone_measure(BoundaryCone(Vertex((0,) * F.depth)), F.params)
    total = sum(F.values.values())
    return complex(total) * (weight.numerator / weight.denominator)


def refine_cone_function(F: ConeFunction, new_depth: int) -> ConeFunction:
    """Re-express F on the finer cone partition at `new_depth`."""
    if new_depth < F.depth:
        raise ValueError("refinement depth must be >= current depth")
    if new_depth == F.depth:
        return F
    vals = F.values
    depth = F.depth
    new_values = {
        v: vals[Vertex(v.word[:depth])]
        for v in enumerate_sphere(new_depth, F.params)
    }
    return ConeFunction(F.params, new_depth, new_values)


class _RadialBall(Mapping):
    """Lazy vertex-to-value view of a radial profile over its ball.

    Nothing is materialised: lookups read the profile by depth, iteration
    streams the spheres.  Iterating the whole view is only sensible for small
    radii; the operator layer works on the profile directly and never does.
    """

    __slots__ = ("params", "profile")

    def __init__(self, params: TreeParams, profile: tuple[complex, ...]):
        self.params = params
        self.profile = profile

    def __getitem__(self, v: Vertex) -> complex:
        if v.depth < len(self.profile):
            return self.profile[v.depth]
        raise KeyError(v)

    def get(self, v: Vertex, default=None):
        if v.depth < len(self.profile):
            return self.profile[v.depth]
        return default

    def __iter__(self):
        for n in range(len(self.profile)):
            yield from enumerate_sphere(n, self.params)

    def __len__(self) -> int:
        return ball_size(len(self.profile) - 1, self.params)


@dataclass(frozen=True)
class TreeFunction:
    """Finitely supported function on the ball of the given radius.

    Vertices absent from `values` carry the value 0.  `radius` is the validity
    radius: operators that lose accuracy near the truncation edge shrink it.
    """

    params: TreeParams
    radius: int
    values: Mapping[Vertex, complex]
    radial_profile: tuple[complex, ...] | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("validity radius must be >= 0")
        if self.radial_profile is None:
            for v in self.values:
                if v.depth > self.radius:
                    raise ValueError(
                        f"vertex at depth {v.depth} outside validity radius "
                        f"{self.radius}"
                    )

    def value(self, x: Vertex) -> complex:
        if self.radial_profile is not None:
            if x.depth < len(self.radial_profile):
                return self.radial_profile[x.depth]
            return 0.0 + 0.0j
        return self.values.get(x, 0.0 + 0.0j)

    def support_radius(self) -> int:
        if self.radial_profile is not None:
            nonzero = [n for n, v in enumerate(self.radial_profile) if v != 0]
            return nonzero[-1] if nonzero else 0
        return max((v.depth for v in self.values), default=0)

    @classmethod
    def delta(cls, params: TreeParams, x: Vertex, radius: int | None = None) -> "TreeFunction":
        radius = x.depth if radius is None else radius
        return cls(params, radius, {x: 1.0 + 0.0j})

    @classmethod
    def from_radial(cls, params: TreeParams, entries: Sequence[complex]) -> "TreeFunction":
        """Lift a radial profile to the ball of radius len(entries)-1."""
        if not entries:
            raise ValueError("radial profile must be nonempty")
        profile = tuple(complex(v) for v in entries)
        return cls(params, len(profile) - 1, _RadialBall(params, profile), profile)


@dataclass(frozen=True)
class RadialSequence:
    """Complex values indexed by distance from the root."""

    params: TreeParams
    entries: tuple[complex, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("radial sequence must have at least one entry")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, n: int) -> complex:
        return self.entries[n]


def radialize(f: TreeFunction) -> RadialSequence:
    """Average f over each sphere about the root (the stabiliser average)."""
    if f.radial_profile is not None:
        return RadialSequence(f.params, f.radial_profile)
    sums = [0.0 + 0.0j] * (f.radius + 1)
    for v, val in f.values.items():
        sums[v.depth] += val
    entries = tuple(
        sums[n] / sphere_size(n, f.params) for n in range(f.radius + 1)
    )
    return RadialSequence(f.params, entries)


# ---------------------------------------------------------------------------
# JSON wire formats


def tree_function_to_json(f: TreeFunction) -> str:
    entries = [
        {"word": list(v.word), "re": float(val.real), "im": float(val.imag)}
        for v, val in sorted(f.values.items(), key=lambda kv: (kv[0].depth, kv[0].word))
    ]
    return json.dumps(
        {"q": f.params.q, "radius": f.radius, "entries": entries}, indent=None
    )


def tree_function_from_json(text: str) -> TreeFunction:
    obj = json.loads(text)
    params = TreeParams(int(obj["q"]))
    values = {
        parse_vertex(e["word"], params): complex(float(e["re"]), float(e["im"]))
        for e in obj["entries"]
    }
    return TreeFunction(params, int(obj["radius"]), values)


def cone_function_to_json(F: ConeFunction) -> str:
    entries = [
        {"word": list(v.word), "re": float(val.real), "im": float(val.imag)}
        for v, val in sorted(F.values.items(), key=lambda kv: kv[0].word)
    ]
    return json.dumps(
        {"q": F.params.q, "depth": F.depth, "entries": entries}, indent=None
    )


def cone_function_from_json(text: str) -> ConeFunction:
    obj = json.loads(text)
    params = TreeParams(int(obj["q"]))
    values = {
        parse_vertex(e["word"], params): complex(float(e["re"]), float(e["im"]))
        for e in obj["entries"]
    }
    return ConeFunction(params, int(obj["depth"]), values)
