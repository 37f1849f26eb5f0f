"""Reduced simplicial homology ranks over an exact field.

Faces are bitmasks over integer vertex labels.  The default coefficient
field is Q, with ranks computed by fraction-free (Bareiss) elimination on
Python integers; ``gf:p`` selects arithmetic modulo a prime instead.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import BudgetExceededError

__all__ = [
    "Field",
    "QQ",
    "parse_field",
    "default_field",
    "SimplicialComplex",
    "RankProfile",
    "matrix_rank",
    "dual_complex",
    "reduced_homology",
    "reduced_euler_characteristic",
    "MAX_VERTICES",
]

MAX_VERTICES = 24


@dataclass(frozen=True)
class Field:
    """Coefficient field: characteristic 0 means Q, otherwise GF(p)."""

    characteristic: int = 0

    def __str__(self) -> str:
        return "q" if self.characteristic == 0 else f"gf:{self.characteristic}"


QQ = Field(0)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def parse_field(spec: str | Field | None) -> Field:
    """Parse ``"q"`` or ``"gf:<p>"``; ``None`` means the configured default."""
    if spec is None:
        return default_field()
    if isinstance(spec, Field):
        return spec
    s = spec.strip().lower()
    if s in ("q", "qq", "0"):
        return QQ
    if s.startswith("gf:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise ValueError(f"bad field {spec!r}") from None
        if not _is_prime(p):
            raise ValueError(f"GF({p}) needs a prime characteristic")
        return Field(p)
    raise ValueError(f"unknown field {spec!r}; use 'q' or 'gf:<p>'")


def default_field() -> Field:
    return parse_field(os.environ.get("SCMM_FIELD", "q"))


# ------------------------------------------------------------------ complexes


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _maximal(masks: Iterable[int]) -> frozenset[int]:
    ms = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    kept: list[int] = []
    for m in ms:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return frozenset(kept)


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex on ``vertices`` stored by its facets (bitmasks).

    ``facets == frozenset()`` is the void complex; ``frozenset({0})`` is the
    irrelevant complex {∅}.
    """

    vertices: frozenset[int]
    facets: frozenset[int] = field(default=frozenset())

    def __post_init__(self):
        vmask = 0
        for v in self.vertices:
            vmask |= 1 << v
        for f in self.facets:
            if f & ~vmask:
                raise ValueError("facet uses a vertex outside the vertex set")

    @classmethod
    def from_faces(cls, vertices: Iterable[int], faces: Iterable[int | Iterable[int]]):
        masks = []
        for f in faces:
            if isinstance(f, int):
                masks.append(f)
            else:
                m = 0
                for v in f:
                    m |= 1 << v
                masks.append(m)
        return cls(frozenset(vertices), _maximal(masks))

    @classmethod
    def void(cls, vertices: Iterable[int] = ()):
        return cls(frozenset(vertices), frozenset())

    @classmethod
    def irrelevant(cls, vertices: Iterable[int] = ()):
        return cls(frozenset(vertices), frozenset({0}))

    @property
    def vertex_mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    @property
    def is_void(self) -> bool:
        return not self.facets

    def faces(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.facets:
            sub = f
            while True:
                out.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return frozenset(out)

    def __contains__(self, face: int) -> bool:
        return any(face & f == face for f in self.facets)

    def f_vector(self) -> dict[int, int]:
        """Face counts keyed by dimension (the empty face has dimension -1)."""
        counts: dict[int, int] = {}
        for f in self.faces():
            k = bin(f).count("1") - 1
            counts[k] = counts.get(k, 0) + 1
        return counts


@dataclass(frozen=True)
class RankProfile:
    """Ranks of reduced homology, keyed by degree; missing degrees are 0."""

    dims: Mapping[int, int]

    def __getitem__(self, k: int) -> int:
        return self.dims.get(k, 0)

    def nonzero(self) -> dict[int, int]:
        return {k: r for k, r in sorted(self.dims.items()) if r}

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in self.dims.items())


def dual_complex(delta: SimplicialComplex) -> SimplicialComplex:
    """Alexander dual {V \\ F : F not a face of Δ} on the same vertex set."""
    V = delta.vertex_mask
    if len(delta.vertices) > MAX_VERTICES:
        raise BudgetExceededError(f"dual of a complex on {len(delta.vertices)} vertices")
    faces = delta.faces()
    dual = []
    sub = V
    while True:
        if sub not in faces:
            dual.append(V & ~sub)
        if sub == 0:
            break
        sub = (sub - 1) & V
    return SimplicialComplex(delta.vertices, _maximal(dual))


def reduced_euler_characteristic(delta: SimplicialComplex) -> int:
    return sum((-1) ** k * c for k, c in delta.f_vector().items())


# ------------------------------------------------------------------- linear algebra


def _rank_bareiss(rows: list[list[int]]) -> int:
    m = [r[:] for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        prow = m[rank]
        for r in range(rank + 1, len(m)):
            row = m[r]
            a = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - a * prow[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    m = [r for r in m if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        prow = [(x * inv) % p for x in m[rank]]
        m[rank] = prow
        for r in range(rank + 1, len(m)):
            a = m[r][c]
            if a:
                row = m[r]
                for j in range(c, ncols):
                    row[j] = (row[j] - a * prow[j]) % p
        rank += 1
        if rank == len(m):
            break
    return rank


def matrix_rank(rows: list[list[int]], field: Field | str | None = None) -> int:
    """Rank of an integer matrix over ``field`` (exact)."""
    F = parse_field(field)
    if F.characteristic == 0:
        return _rank_bareiss(rows)
    return _rank_mod_p(rows, F.characteristic)


def _boundary_rank(lower: list[int], upper: list[int], F: Field) -> int:
    if not lower or not upper:
        return 0
    index = {f: i for i, f in enumerate(lower)}
    # rows indexed by the higher-dimensional faces (rank is transpose-invariant)
    rows = []
    for f in upper:
        row = [0] * len(lower)
        sign = 1
        for v in _bits(f):
            row[index[f & ~(1 << v)]] = sign
            sign = -sign
        rows.append(row)
    return matrix_rank(rows, F)


def _normalize(delta: SimplicialComplex) -> tuple[int, tuple[int, ...]]:
    # order-preserving compression of the vertex labels improves cache reuse
    verts = sorted(delta.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    out = []
    for f in delta.facets:
        m = 0
        for v in _bits(f):
            m |= 1 << pos[v]
        out.append(m)
    return len(verts), tuple(sorted(out))


def reduced_homology(delta: SimplicialComplex, field: Field | str | None = None) -> RankProfile:
    """Ranks of reduced homology H̃_k(Δ) for k >= -1."""
    if len(delta.vertices) > MAX_VERTICES:
        raise BudgetExceededError(
            f"complex has {len(delta.vertices)} vertices (limit {MAX_VERTICES})"
        )
    nv, facets = _normalize(delta)
    return RankProfile(dict(_homology_cached(nv, facets, parse_field(field))))


@lru_cache(maxsize=200_000)
def _homology_cached(nv: int, facets: tuple[int, ...], F: Field) -> tuple[tuple[int, int], ...]:
    if not facets:
        return ()
    cx = SimplicialComplex(frozenset(range(nv)), frozenset(facets))
    by_dim: dict[int, list[int]] = {}
    for f in sorted(cx.faces()):
        by_dim.setdefault(bin(f).count("1") - 1, []).append(f)
    top = max(by_dim)
    ranks = {k: _boundary_rank(by_dim.get(k - 1, []), by_dim[k], F) for k in range(0, top + 1)}
    out = []
    for k in range(-1, top + 1):
        r = len(by_dim.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        out.append((k, r))
    return tuple(out)
