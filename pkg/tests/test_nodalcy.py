"""Nodal hyperplane sections: node extraction, defect, Hodge bookkeeping."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modgem import lines27
from modgem.exactalg import ExactAlgError, MPoly, ProjPoint
from modgem.gems import invariant_quintic_form
from modgem.nodalcy import (
    QUINTIC_MONOMIAL_COUNT,
    SectionSpec,
    defect_from_dimension,
    generic_section,
    section_nodes,
    section_report,
    special_section,
    tangent_section,
)


@pytest.fixture(scope="module")
def generic():
    spec = generic_section(0)
    return spec, section_report(spec)


@pytest.fixture(scope="module")
def tangent():
    spec = tangent_section(0)
    return spec, section_report(spec)


# -- section specs -----------------------------------------------------------


def test_spec_rejects_nonlinear_hyperplane():
    with pytest.raises(ExactAlgError):
        SectionSpec(invariant_quintic_form(), "generic")


def test_spec_rejects_unknown_kind():
    h = MPoly.var(0, 6) - MPoly.var(3, 6)
    with pytest.raises(ExactAlgError):
        SectionSpec(h, "transverse")


def test_spec_ties_tangency_to_kind():
    h = MPoly.var(0, 6) - MPoly.var(3, 6)
    with pytest.raises(ExactAlgError):
        SectionSpec(h, "tangent")
    with pytest.raises(ExactAlgError):
        SectionSpec(h, "generic", ProjPoint((1, 0, 0, 0, 0, 1)))


def test_generic_section_is_deterministic():
    assert generic_section(3).hyperplane == generic_section(3).hyperplane


def test_special_section_names():
    loci = lines27.special_loci()
    name = sorted(loci.hyperplanes)[0]
    assert special_section(name).kind == "special"
    with pytest.raises(ExactAlgError):
        special_section("not-a-root")


# -- node extraction ----------------------------------------------------------


def test_generic_nodes_census(generic):
    spec, _ = generic
    nodes = section_nodes(spec)
    assert len(nodes) == 120
    assert len(set(nodes)) == 120
    assert all(spec.hyperplane.eval(pt.coords) == 0 for pt in nodes)


def test_nodes_lie_on_singular_lines(generic):
    spec, _ = generic
    lines = lines27.special_loci().lines120
    for pt in section_nodes(spec):
        assert any(line.contains(pt) for line in lines)


def test_tangent_nodes_census(tangent):
    spec, _ = tangent
    nodes = section_nodes(spec)
    assert len(nodes) == 121
    assert nodes[-1] == spec.tangency


def test_tangency_point_is_smooth_on_quintic(tangent):
    spec, _ = tangent
    f = invariant_quintic_form()
    pt = spec.tangency
    assert f.eval(pt.coords) == 0
    assert any(g.eval(pt.coords) for g in f.partials())
    assert spec.hyperplane.eval(pt.coords) == 0


def test_special_section_refuses_node_extraction():
    name = sorted(lines27.special_loci().hyperplanes)[0]
    with pytest.raises(ExactAlgError):
        section_nodes(special_section(name))


def test_invalid_generic_hyperplane_is_caught():
    pt = next(iter(lines27.special_loci().root_points.values()))
    i = next(k for k, c in enumerate(pt.coords) if c)
    j = (i + 1) % 6
    h = pt.coords[j] * MPoly.var(i, 6) - pt.coords[i] * MPoly.var(j, 6)
    with pytest.raises(ExactAlgError):
        section_nodes(SectionSpec(h, "generic"))


@given(st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=5, deadline=None)
def test_generic_sections_always_yield_120_nodes(seed):
    assert len(section_nodes(generic_section(seed))) == 120


# -- reports -------------------------------------------------------------------


def test_quintic_monomial_count():
    assert QUINTIC_MONOMIAL_COUNT == 126


def test_defect_formula_degenerate_case():
    # a smooth quintic imposes no conditions: 126 quintics, zero defect
    assert defect_from_dimension(126, 0) == 0
    assert defect_from_dimension(30, 120) == 24


def test_generic_report(generic):
    _, rep = generic
    assert rep.kind == "generic"
    assert rep.node_count == 120
    assert rep.quintic_dim == 30
    assert rep.defect == 24
    assert rep.jacobian_rank == 25
    assert (rep.h11, rep.h21) == (25, 5)
    assert (rep.b2, rep.b3, rep.euler) == (25, 12, 40)
    assert rep.charts_agree
    assert rep.membership_checks == 6


def test_generic_vanishing_space_contract(generic):
    _, rep = generic
    vs = rep.vanishing
    assert vs.degree == 5 and vs.nvars == 5
    assert vs.dim == 30
    assert vs.method == "candidates"
    assert len(vs.modular_ranks) == 2
    assert set(vs.modular_ranks.values()) == {96}


def test_tangent_report(tangent):
    _, rep = tangent
    assert rep.kind == "tangent"
    assert rep.node_count == 121
    assert rep.quintic_dim == 29
    assert rep.defect == 24
    assert rep.jacobian_rank == 25
    assert (rep.h11, rep.h21) == (25, 4)
    assert (rep.b2, rep.b3, rep.euler) == (25, 10, 42)


def test_report_internal_consistency(generic, tangent):
    for _, rep in (generic, tangent):
        assert rep.b2 == 1 + rep.defect
        assert rep.euler == 2 * rep.h11 - 2 * rep.h21
        assert rep.defect == rep.quintic_dim - 126 + rep.node_count
        assert not hasattr(rep, "b1")
