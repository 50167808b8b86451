"""Reflection arrangements: root forms, flat censuses, ball-quotient weights.

A root system is flattened to its projective arrangement: the positive root
forms up to sign, as primitive integer vectors. The flat lattice is closed
level by level (intersecting known flats with the hyperplanes), each flat
carrying the full index set of forms that contain it, so the t_q(j) census
and the genuine-singularity filter are exact set computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .exactalg import ExactAlgError, kernel_int

INF = float("inf")


# -- root systems ---------------------------------------------------------------


@dataclass(frozen=True)
class RootSystemId:
    """One of A(n) n>=2, B(n)/C(n) n>=3, D(n) n>=3, F4, E6."""

    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        ok = (
            (fam == "A" and self.rank >= 2)
            or (fam in ("B", "C", "D") and self.rank >= 3)
            or (fam == "F" and self.rank == 4)
            or (fam == "E" and self.rank == 6)
        )
        if not ok:
            raise ExactAlgError(f"unsupported root system {fam}{self.rank}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = math.gcd(g, v)
    vec = [v // g for v in vec]
    lead = next(v for v in vec if v)
    if lead < 0:
        vec = [-v for v in vec]
    return tuple(vec)


def _unit(i: int, n: int, c: int = 1) -> list[int]:
    v = [0] * n
    v[i] = c
    return v


def roots(rsid: RootSystemId) -> list[tuple[int, ...]]:
    """Positive-root forms up to sign, as primitive integer vectors.

    A(n) uses the coordinates obtained by projecting along the last epsilon,
    so its forms are the x_i together with the differences x_i - x_j. The
    half-integer forms of F4 and E6 are doubled; projectively nothing changes.
    """
    fam, n = rsid.family, rsid.rank
    forms: list[tuple[int, ...]] = []
    if fam == "A":
        for i in range(n):
            forms.append(_primitive(_unit(i, n)))
        for i in range(n):
            for j in range(i + 1, n):
                v = _unit(i, n)
                v[j] = -1
                forms.append(_primitive(v))
    elif fam in ("B", "C"):
        for i in range(n):
            forms.append(_primitive(_unit(i, n, 2 if fam == "C" else 1)))
        for i in range(n):
            for j in range(i + 1, n):
                for s in (1, -1):
                    v = _unit(i, n)
                    v[j] = s
                    forms.append(_primitive(v))
    elif fam == "D":
        for i in range(n):
            for j in range(i + 1, n):
                for s in (1, -1):
                    v = _unit(i, n)
                    v[j] = s
                    forms.append(_primitive(v))
    elif fam == "F":
        for i in range(4):
            forms.append(_primitive(_unit(i, 4)))
        for i in range(4):
            for j in range(i + 1, 4):
                for s in (1, -1):
                    v = _unit(i, 4)
                    v[j] = s
                    forms.append(_primitive(v))
        for s2 in (1, -1):
            for s3 in (1, -1):
                for s4 in (1, -1):
                    forms.append(_primitive([1, s2, s3, s4]))
    elif fam == "E":
        for i in range(5):
            for j in range(i + 1, 5):
                for s in (1, -1):
                    v = _unit(i, 6)
                    v[j] = s
                    forms.append(_primitive(v))
        # half-forms carry an even number of minus signs on x1..x5
        for bits in range(32):
            signs = [(-1 if bits >> k & 1 else 1) for k in range(5)]
            if signs.count(-1) % 2 == 0:
                forms.append(_primitive(signs + [1]))
    if len(set(forms)) != len(forms):
        raise ExactAlgError("duplicate projective forms in root list")
    return forms


# -- arrangements and their flats -------------------------------------------------


@dataclass(frozen=True)
class Arrangement:
    """Hyperplane arrangement in P^ambient: pairwise distinct primitive forms."""

    ambient: int
    forms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        prims = tuple(_primitive(f) for f in self.forms)
        if len(set(prims)) != len(prims):
            raise ExactAlgError("arrangement forms must be projectively distinct")
        object.__setattr__(self, "forms", prims)
        if any(len(f) != self.ambient + 1 for f in self.forms):
            raise ExactAlgError("form length must be ambient+1")


def arrangement(rsid: RootSystemId) -> Arrangement:
    forms = roots(rsid)
    return Arrangement(ambient=len(forms[0]) - 1, forms=tuple(forms))


@dataclass(frozen=True)
class Flat:
    """Projective flat, stored by the echelonized space of forms cutting it."""

    ambient: int
    constraints: tuple[tuple[int, ...], ...]
    forms: frozenset[int]

    @property
    def dim(self) -> int:
        return self.ambient - len(self.constraints)

    @property
    def q(self) -> int:
        return len(self.forms)

    def span_basis(self) -> list[tuple[int, ...]]:
        """Primitive integer basis of the flat's linear span."""
        return kernel_int([list(r) for r in self.constraints])


def _reduce_vec(vec: Sequence[int], rows: Sequence[tuple[int, ...]],
                pivots: Sequence[int]) -> list[int]:
    v = list(vec)
    for row, p in zip(rows, pivots):
        if v[p]:
            a, b = row[p], v[p]
            g = math.gcd(a, b)
            fa, fb = a // g, b // g
            v = [fa * x - fb * y for x, y in zip(v, row)]
    return v


def _extend_echelon(rows: tuple[tuple[int, ...], ...], pivots: tuple[int, ...],
                    form: Sequence[int]) -> Optional[tuple[tuple, tuple]]:
    """Echelon of span(rows + form), or None when form already lies in it."""
    red = _reduce_vec(form, rows, pivots)
    if not any(red):
        return None
    red = list(_primitive(red))
    p_new = next(i for i, v in enumerate(red) if v)
    new_rows = []
    new_pivots = []
    inserted = False
    for row, p in zip(rows, pivots):
        if not inserted and p_new < p:
            new_rows.append(red)
            new_pivots.append(p_new)
            inserted = True
        new_rows.append(list(row))
        new_pivots.append(p)
    if not inserted:
        new_rows.append(red)
        new_pivots.append(p_new)
    # clear the new pivot column from the other rows for a canonical key
    idx = new_pivots.index(p_new)
    base = new_rows[idx]
    for k, row in enumerate(new_rows):
        if k != idx and row[p_new]:
            a, b = base[p_new], row[p_new]
            g = math.gcd(a, b)
            fa, fb = a // g, b // g
            new_rows[k] = list(_primitive([fa * x - fb * y for x, y in zip(row, base)]))
    return tuple(tuple(r) for r in new_rows), tuple(new_pivots)


@dataclass
class IncidenceTable:
    """Census t_q(j) of an arrangement plus the flats behind each count."""

    arrangement: Arrangement
    flats: tuple[Flat, ...]
    counts: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.counts:
            for f in self.flats:
                key = (f.q, f.dim)
                self.counts[key] = self.counts.get(key, 0) + 1

    def t(self, q: int, j: int = 0) -> int:
        return self.counts.get((q, j), 0)

    def flats_of_dim(self, j: int) -> list[Flat]:
        return [f for f in self.flats if f.dim == j]


def incidence(arr: Arrangement) -> IncidenceTable:
    """Full flat lattice by level-wise closure against the hyperplanes.

    Level c holds the codimension-c flats, keyed by the canonical echelon of
    their constraint space. Each new flat's containing-form set is recomputed
    from scratch by exact membership, never inherited, so the census cannot
    drift from the geometry.
    """
    n = arr.ambient
    nforms = len(arr.forms)
    all_flats: list[Flat] = []

    # level 1: the hyperplanes themselves
    level: dict[tuple, tuple] = {}
    for i, f in enumerate(arr.forms):
        p = next(k for k, v in enumerate(f) if v)
        level[(f,)] = ((p,), frozenset([i]))
    for key, (pivots, members) in level.items():
        all_flats.append(Flat(n, key, members))

    for codim in range(1, n):
        nxt: dict[tuple, tuple] = {}
        for key, (pivots, members) in level.items():
            for i in range(nforms):
                if i in members:
                    continue
                ext = _extend_echelon(key, pivots, arr.forms[i])
                if ext is None:
                    continue
                if ext[0] not in nxt:
                    nxt[ext[0]] = (ext[1], None)
        # exact containment sets for the new level
        finished: dict[tuple, tuple] = {}
        for key, (pivots, _) in nxt.items():
            members = frozenset(
                i for i, f in enumerate(arr.forms)
                if not any(_reduce_vec(f, key, pivots))
            )
            finished[key] = (pivots, members)
            all_flats.append(Flat(n, key, members))
        level = finished
        if not level:
            break

    return IncidenceTable(arr, tuple(all_flats))


def singular_flats(arr_or_table: Union[Arrangement, IncidenceTable]) -> list[Flat]:
    """Genuine singular flats: q > codim, minus those explained one level up.

    A singular flat is discarded exactly when its form set is the form set of
    a singular flat of one higher dimension plus a single extra hyperplane:
    such a flat is the transversal trace of the bigger singularity, not a
    singularity of its own.
    """
    table = arr_or_table if isinstance(arr_or_table, IncidenceTable) else incidence(arr_or_table)
    n = table.arrangement.ambient
    singular = [f for f in table.flats if f.q > n - f.dim]
    by_dim: dict[int, list[Flat]] = {}
    for f in singular:
        by_dim.setdefault(f.dim, []).append(f)
    genuine = []
    for f in singular:
        above = by_dim.get(f.dim + 1, ())
        explained = any(
            g.q + 1 == f.q and g.forms < f.forms
            for g in above
        )
        if not explained:
            genuine.append(f)
    return genuine


# -- ball-quotient weight check ---------------------------------------------------


NValue = Union[Fraction, float]  # Fraction, or INF when 1 - mu_i - mu_j = 0


@dataclass(frozen=True)
class DMParameters:
    """Weight sextuple with its derived branching numbers and verdict."""

    mu: tuple[Fraction, ...]
    n_pairs: dict[tuple[int, int], NValue]
    n_triples: dict[tuple[int, int, int], NValue]
    accepted: bool
    failures: tuple[str, ...]


def _recip(v: NValue) -> Fraction:
    return Fraction(0) if v == INF else Fraction(1) / v


def dm_check(mu: Sequence[Union[int, Fraction]]) -> DMParameters:
    """Accept six weights iff they sum to 2 and every pair branching is integral.

    n_ij = (1 - mu_i - mu_j)^(-1) must be an integer or INF for all pairs.
    The triple numbers n_0ij = 2*(1/n_kl + 1/n_lm + 1/n_km)^(-1), taken over
    the complementary triple {k,l,m}, are derived data and reported as-is;
    they are not part of the acceptance condition.
    """
    if len(mu) != 6:
        raise ExactAlgError("exactly six weights required")
    w = tuple(Fraction(m) for m in mu)
    failures: list[str] = []
    total = sum(w)
    if total != 2:
        failures.append(f"weights sum to {total}, need 2")
    n_pairs: dict[tuple[int, int], NValue] = {}
    for i in range(6):
        for j in range(i + 1, 6):
            gap = 1 - w[i] - w[j]
            if gap == 0:
                n_pairs[(i, j)] = INF
            else:
                n = 1 / gap
                n_pairs[(i, j)] = n
                if n.denominator != 1:
                    failures.append(f"pair ({i},{j}) gives {n}, not an integer")
    n_triples: dict[tuple[int, int, int], NValue] = {}
    for i in range(1, 6):
        for j in range(i + 1, 6):
            rest = [k for k in range(1, 6) if k not in (i, j)]
            pairs = [(rest[0], rest[1]), (rest[1], rest[2]), (rest[0], rest[2])]
            s = sum((_recip(n_pairs[tuple(sorted(p))]) for p in pairs), Fraction(0))
            n_triples[(0, i, j)] = INF if s == 0 else 2 / s
    return DMParameters(w, n_pairs, n_triples, not failures, tuple(failures))


# the complete list of weight systems passing the check, up to reordering
SEVEN_WEIGHT_SYSTEMS: tuple[tuple[Fraction, ...], ...] = tuple(
    tuple(Fraction(a, b) for a, b in row)
    for row in (
        (((1, 3),) * 6),
        ((1, 2), (1, 2), (1, 4), (1, 4), (1, 4), (1, 4)),
        ((3, 4), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4)),
        ((1, 2), (1, 3), (1, 3), (1, 3), (1, 3), (1, 6)),
        ((3, 8), (3, 8), (3, 8), (3, 8), (3, 8), (1, 8)),
        ((5, 12), (5, 12), (5, 12), (1, 4), (1, 4), (1, 4)),
        ((7, 12), (5, 12), (1, 4), (1, 4), (1, 4), (1, 4)),
    )
)


@lru_cache(maxsize=None)
def cached_incidence(family: str, rank: int) -> IncidenceTable:
    return incidence(arrangement(RootSystemId(family, rank)))
