"""Nodal quintic threefolds cut out of the invariant quintic by hyperplanes.

A hyperplane that avoids the 36 triple points and contains none of the 120
singular lines meets each line in exactly one point, so its section is a
quintic threefold in P^4 with 120 nodes; a hyperplane tangent at a smooth
point picks up that point as a 121st node. Everything here is exact: nodes
come from intersecting lines with the hyperplane, the space of quintics
through the nodes is certified by the candidate sandwich of vanishing_space
(the candidates being products of the restricted partials with linear
forms), and the defect, Betti and Hodge numbers follow by the classical
node-count bookkeeping for small resolutions.

First Betti numbers are deliberately not reported; published tables for
them disagree with the standard conventions, and nothing downstream needs
them.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import (
    ExactAlgError,
    MPoly,
    ProjPoint,
    VanishingSpace,
    checked_rank,
    kernel_int,
    monomials,
    proportional,
    rank_exact,
    solve_exact,
    vanishing_space,
)
from . import lines27
from .gems import invariant_quintic_form, psi_octics

#: quintic monomials in the five internal coordinates of a hyperplane
QUINTIC_MONOMIAL_COUNT = len(monomials(5, 5))

KINDS = ("generic", "special", "tangent")


def _rng(seed: int, task: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{task}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _draw(rng: random.Random, n: int) -> tuple[int, ...]:
    while True:
        vec = tuple(rng.randint(-9, 9) for _ in range(n))
        if any(vec):
            return vec


# -- section specifications ------------------------------------------------------------


@dataclass(frozen=True)
class SectionSpec:
    """A hyperplane slice of the invariant quintic, tagged by its kind.

    generic: avoids the 36 triple points and all 120 singular lines.
    special: one of the 36 reflection hyperplanes; its section is singular
    along 20 lines, so node extraction is refused.
    tangent: the tangent hyperplane at a smooth point, carried along.
    """

    hyperplane: MPoly
    kind: str
    tangency: ProjPoint | None = None

    def __post_init__(self):
        h = self.hyperplane
        if h.nvars != 6 or h.is_zero() or h.degree() != 1:
            raise ExactAlgError("hyperplane must be a nonzero linear form on P^5")
        if self.kind not in KINDS:
            raise ExactAlgError(f"unknown section kind {self.kind!r}")
        if (self.tangency is None) == (self.kind == "tangent"):
            raise ExactAlgError("tangency point is required exactly for tangent kind")


def _coeff_vector(h: MPoly) -> list[Fraction]:
    unit = [tuple(1 if j == i else 0 for j in range(6)) for i in range(6)]
    return h.coefficient_vector(unit)


def _hyperplane_clear(h: MPoly) -> tuple[bool, str]:
    loci = lines27.special_loci()
    for name, pt in loci.root_points.items():
        if h.eval(pt.coords) == 0:
            return False, f"hyperplane passes through the triple point {name}"
    for line in loci.lines120:
        if h.eval(line.p.coords) == 0 and h.eval(line.q.coords) == 0:
            return False, "hyperplane contains one of the 120 singular lines"
    return True, ""


def generic_section(seed: int = 0) -> SectionSpec:
    """Random small-integer hyperplane, redrawn until exactly valid."""
    rng = _rng(seed, "generic-hyperplane")
    while True:
        coeffs = _draw(rng, 6)
        h = MPoly.from_terms(6, [(tuple(1 if j == i else 0 for j in range(6)), c)
                                 for i, c in enumerate(coeffs) if c])
        if _hyperplane_clear(h)[0]:
            return SectionSpec(h, "generic")


def special_section(name: str) -> SectionSpec:
    """The reflection-hyperplane section named by its root label."""
    loci = lines27.special_loci()
    if name not in loci.hyperplanes:
        raise ExactAlgError(f"unknown reflection hyperplane {name!r}")
    return SectionSpec(loci.hyperplanes[name], "special")


def tangent_section(seed: int = 0) -> SectionSpec:
    """Tangent hyperplane at a smooth rational point of the quintic.

    The tangency point is an image of the degree-8 parametrization, which
    lands on the quintic by construction; draws are rejected until the
    point is smooth and the tangent hyperplane passes the same validity
    predicates as a generic one.
    """
    f = invariant_quintic_form()
    octics = psi_octics()
    rng = _rng(seed, "tangent-hyperplane")
    while True:
        y = _draw(rng, 5)
        vals = [o.eval(y) for o in octics]
        if all(v == 0 for v in vals):
            continue
        pt = ProjPoint(vals)
        grad = [g.eval(pt.coords) for g in f.partials()]
        if not any(grad):
            continue
        h = MPoly.from_terms(6, [(tuple(1 if j == i else 0 for j in range(6)), c)
                                 for i, c in enumerate(grad) if c])
        if _hyperplane_clear(h)[0]:
            return SectionSpec(h, "tangent", pt)


# -- node extraction --------------------------------------------------------------------


def _chart_generators(h: MPoly) -> list[tuple[int, ...]]:
    gens = kernel_int([_coeff_vector(h)])
    if len(gens) != 5:
        raise ExactAlgError("hyperplane chart must have five generators")
    return gens


def _restrict(f: MPoly, gens: list[tuple[int, ...]]) -> MPoly:
    images = [MPoly.from_terms(5, [(tuple(1 if jj == j else 0 for jj in range(5)),
                                    gens[j][i]) for j in range(5) if gens[j][i]])
              for i in range(6)]
    return f.subs(images)


def _to_chart(pt: ProjPoint, gens: list[tuple[int, ...]]) -> ProjPoint:
    rows = [[gens[j][i] for j in range(5)] for i in range(6)]
    sol = solve_exact(rows, list(pt.coords))
    if sol is None:
        raise ExactAlgError(f"{pt} does not lie on the hyperplane")
    return ProjPoint(sol)


def section_nodes(spec: SectionSpec) -> tuple[ProjPoint, ...]:
    """The nodes of the hyperplane section, exactly, as ambient points.

    Each of the 120 singular lines contributes its intersection with the
    hyperplane; a tangent section appends the tangency point. Every
    returned point is certified to lie on the section and to kill the
    gradient of the restricted quintic.
    """
    if spec.kind == "special":
        raise ExactAlgError(
            "special sections are singular along 20 lines, nodes are not isolated")
    ok, why = _hyperplane_clear(spec.hyperplane)
    if not ok:
        raise ExactAlgError(why)

    h = spec.hyperplane
    loci = lines27.special_loci()
    nodes = []
    for line in loci.lines120:
        a, b = h.eval(line.p.coords), h.eval(line.q.coords)
        nodes.append(ProjPoint([a * qc - b * pc
                                for pc, qc in zip(line.p.coords, line.q.coords)]))

    f = invariant_quintic_form()
    if spec.kind == "tangent":
        pt = spec.tangency
        grad = [g.eval(pt.coords) for g in f.partials()]
        if f.eval(pt.coords) or not any(grad):
            raise ExactAlgError("tangency point must be a smooth point of the quintic")
        if proportional(MPoly.from_terms(6, [(e, c) for e, c in
                                             zip([tuple(1 if j == i else 0 for j in range(6))
                                                  for i in range(6)], grad) if c]),
                        h) is None:
            raise ExactAlgError("hyperplane must be tangent at the tangency point")
        nodes.append(pt)

    if len(set(nodes)) != len(nodes):
        raise ExactAlgError("coincident nodes, hyperplane is too special")

    gens = _chart_generators(h)
    q = _restrict(f, gens)
    dq = q.partials()
    for node in nodes:
        u = _to_chart(node, gens)
        if q.eval(u.coords) or any(g.eval(u.coords) for g in dq):
            raise ExactAlgError(f"{node} is not a singular point of the section")
    return tuple(nodes)


# -- reports -----------------------------------------------------------------------------


def defect_from_dimension(quintic_dim: int, node_count: int) -> int:
    """Defect of a nodal quintic threefold from the through-nodes dimension."""
    return quintic_dim - QUINTIC_MONOMIAL_COUNT + node_count


@dataclass(frozen=True)
class NodalSectionReport:
    """Node census and derived topology of one hyperplane section.

    h11 equals b2 = 1 + defect and h21 = quintic_dim minus the span of the
    section's own Jacobian quintics, following the small-resolution
    reading; euler = 2*h11 - 2*h21. b1 is intentionally absent.
    """

    kind: str
    node_count: int
    quintic_dim: int
    defect: int
    jacobian_rank: int
    h11: int
    h21: int
    b2: int
    b3: int
    euler: int
    membership_checks: int
    charts_agree: bool
    vanishing: VanishingSpace


def _mixing_matrix(rng: random.Random) -> list[list[int]]:
    while True:
        mat = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(5)]
        if rank_exact(mat) == 5:
            return mat


def _quintic_candidates(q: MPoly, restricted_partials: list[MPoly],
                        tangency_chart: ProjPoint | None) -> list[MPoly]:
    uvars = [MPoly.var(j, 5) for j in range(5)]
    if tangency_chart is None:
        return [u * r for r in restricted_partials for u in uvars]
    cands = [u * dq for dq in q.partials() for u in uvars]
    off = next((r for r in restricted_partials if r.eval(tangency_chart.coords)), None)
    if off is None:
        raise ExactAlgError("tangency point annihilates every restricted partial")
    for form in kernel_int([list(tangency_chart.coords)]):
        ell = MPoly.from_terms(5, [(tuple(1 if jj == j else 0 for jj in range(5)), c)
                                   for j, c in enumerate(form) if c])
        cands.append(ell * off)
    return cands


def _chart_dimension(f: MPoly, h: MPoly, nodes, tangency, mix=None) -> tuple[int, VanishingSpace, MPoly, list[MPoly], list[ProjPoint]]:
    gens = _chart_generators(h)
    if mix is not None:
        gens = [tuple(sum(mix[j][k] * gens[k][i] for k in range(5)) for i in range(6))
                for j in range(5)]
    q = _restrict(f, gens)
    chart_nodes = [_to_chart(node, gens) for node in nodes]
    restricted = [_restrict(g, gens) for g in f.partials()]
    tangency_chart = _to_chart(tangency, gens) if tangency is not None else None
    cands = _quintic_candidates(q, restricted, tangency_chart)
    space = vanishing_space(5, 5, points=chart_nodes, candidates=cands)
    return space.dim, space, q, restricted, chart_nodes


def section_report(spec: SectionSpec, seed: int = 0) -> NodalSectionReport:
    """Extract nodes, measure quintics through them, derive the topology.

    The through-nodes dimension is recomputed in a second, randomly mixed
    chart and must agree. The six restricted partials are checked to vanish
    at every line-derived node; the tangency node is exempt, since the
    ambient gradient does not vanish at a smooth point.
    """
    nodes = section_nodes(spec)
    f = invariant_quintic_form()
    s = len(nodes)

    dim1, space, q, restricted, chart_nodes = _chart_dimension(
        f, spec.hyperplane, nodes, spec.tangency)
    mix = _mixing_matrix(_rng(seed, "chart-mix"))
    dim2 = _chart_dimension(f, spec.hyperplane, nodes, spec.tangency, mix)[0]
    if dim1 != dim2:
        raise ExactAlgError(f"chart choice leaked into the dimension: {dim1} vs {dim2}")

    line_nodes = chart_nodes[:120]
    for r in restricted:
        if any(r.eval(u.coords) for u in line_nodes):
            raise ExactAlgError("a restricted partial misses a line-derived node")

    mono = monomials(5, 5)
    uvars = [MPoly.var(j, 5) for j in range(5)]
    jac_rows = [(u * dq).coefficient_vector(mono) for dq in q.partials() for u in uvars]
    jac_rank = checked_rank(jac_rows)

    defect = defect_from_dimension(dim1, s)
    h21 = dim1 - jac_rank
    b2 = 1 + defect
    h11 = b2
    b3 = 2 + 2 * h21
    euler = 2 * h11 - 2 * h21
    return NodalSectionReport(spec.kind, s, dim1, defect, jac_rank, h11, h21,
                              b2, b3, euler, len(restricted), True, space)
