"""Combinatorics of the 27 lines, the Weyl group, and the P^5 geometry."""

import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modgem import lines27 as L
from modgem.exactalg import MPoly, ProjLine, ProjPoint, proportional, rank_exact
from modgem.rootarr import cached_incidence


# -- meets relation ------------------------------------------------------------


def test_meets_examples():
    assert not L.meets("a1", "b1")
    assert L.meets("a1", "b2")
    assert not L.meets("a1", "a2")
    assert L.meets("a1", "c12")
    assert not L.meets("a1", "c23")
    assert L.meets("c12", "c34")
    assert not L.meets("c12", "c13")


def test_each_line_meets_ten():
    for lab in L.LINE_LABELS:
        assert sum(1 for m in L.LINE_LABELS if m != lab and L.meets(lab, m)) == 10


def test_meeting_and_skew_pair_counts():
    pairs = list(itertools.combinations(L.LINE_LABELS, 2))
    meeting = sum(1 for a, b in pairs if L.meets(a, b))
    assert len(pairs) == 351
    assert meeting == 135
    assert len(pairs) - meeting == 216


# -- classical structures --------------------------------------------------------


def test_structure_counts():
    st_ = L.enumerate_structures()
    assert st_.counts() == {
        "tritangents": 45,
        "double_sixes": 36,
        "trihedral_pairs": 120,
        "triads": 40,
        "syzygetic_pairs": 270,
        "azygetic_triples": 120,
    }
    assert len(st_.azygetic_pairs) == 360


def test_tritangent_contents():
    tri = L.tritangents()
    assert tri["(12)"] == {"a1", "b2", "c12"}
    assert tri["(12.34.56)"] == {"c12", "c34", "c56"}


def test_double_six_overlaps():
    n = L.ds_lines("N")
    assert len(n & L.ds_lines("N_12")) == 4      # syzygetic
    assert len(n & L.ds_lines("N_456")) == 6     # azygetic
    st_ = L.enumerate_structures()
    for name in st_.double_sixes:
        syz = sum(1 for p in st_.syzygetic_pairs if name in p)
        azy = sum(1 for p in st_.azygetic_pairs if name in p)
        assert (syz, azy) == (15, 20)


def test_trihedral_pair_line_kinds():
    st_ = L.enumerate_structures()
    kinds = {}
    for name, lines in st_.trihedral_pairs.items():
        key = tuple(sorted(lab[0] for lab in lines))
        kinds.setdefault("".join(key), []).append(name)
    assert len(kinds["ccccccccc"]) == 10
    assert len(kinds["aaabbbccc"]) == 20
    assert len(kinds["aabbccccc"]) == 90


def test_triads_partition_lines():
    st_ = L.enumerate_structures()
    for triad in st_.triads:
        union = frozenset().union(*(st_.trihedral_pairs[n] for n in triad))
        assert union == frozenset(L.LINE_LABELS)


def test_enneahedra_census():
    rep = L.enneahedra()
    assert len(rep.partitions) == 200
    assert rep.orbit_sizes == (40, 160)
    assert rep.triad_statistic == {1: 160, 4: 40}
    tri = L.tritangents()
    for part in rep.partitions:
        assert len(part) == 9
        covered = list(itertools.chain.from_iterable(tri[n] for n in part))
        assert len(covered) == 27 and len(set(covered)) == 27


# -- coordinates and duality ------------------------------------------------------


def test_form_inventories():
    t = L.coordinate_tables()
    assert len(t.root_forms) == 36
    assert len(t.weight_forms) == 27
    assert set(t.weight_forms) == set(L.LINE_LABELS)


def test_weight_sum_identities():
    t = L.coordinate_tables()
    suma = sum(
        (t.weight_forms[f"a{i}"] for i in range(1, 7)), MPoly.zero(6))
    sumb = sum(
        (t.weight_forms[f"b{i}"] for i in range(1, 7)), MPoly.zero(6))
    assert suma == t.root_forms["h"] * Fraction(-3)
    assert sumb == t.root_forms["h"] * Fraction(3)
    third = suma * Fraction(1, 3)
    for i in range(1, 7):
        assert t.weight_forms[f"b{i}"] == t.weight_forms[f"a{i}"] - third


def test_pairing_scalars():
    t = L.coordinate_tables()
    halves = 0
    for name, form in t.root_forms.items():
        s = t.pairing_scalar(form, t.root_duals[name])
        assert s in (Fraction(1), Fraction(1, 2))
        halves += s == Fraction(1, 2)
    assert halves == 20  # the integer-coefficient pair and 1jk families
    for name, form in t.weight_forms.items():
        assert t.pairing_scalar(form, t.weight_duals[name]) == 1


def test_tritangent_form_sums_vanish():
    # a_i + b_j + c_ij is identically zero for the coordinate realization
    t = L.coordinate_tables()
    for i, j in itertools.permutations(range(1, 7), 2):
        c = f"c{min(i,j)}{max(i,j)}"
        total = t.weight_forms[f"a{i}"] + t.weight_forms[f"b{j}"] + t.weight_forms[c]
        assert total.is_zero


# -- reflections and the Weyl group -------------------------------------------------


def test_reflection_involution_and_invariance():
    t = L.coordinate_tables()
    names, mats, perms = L.weyl_generators()
    for mat in mats:
        square = tuple(
            tuple(sum(mat[i][k] * mat[k][j] for k in range(6)) for j in range(6))
            for i in range(6)
        )
        assert all(square[i][j] == (1 if i == j else 0)
                   for i in range(6) for j in range(6))
        # the invariant quadric is preserved: I2(Sx) == I2(x)
        images = [L.apply_to_form(MPoly.var(i, 6), mat) for i in range(6)]
        pulled = t.killing.subs(images)
        assert pulled == t.killing


def test_generator_perms_preserve_meets():
    for perm in L.weyl_generator_perms():
        assert L.check_meets_preserved(perm)


def test_action_table_rule_against_matrices():
    names, mats, _ = L.weyl_generators()
    for name, mat in zip(names, mats):
        derived = L.root_action_from_matrix(mat)
        for target, (image, sign) in derived.items():
            assert L.action_table_rule(name, target) == image
            assert sign in (1, -1)


def test_action_table_examples():
    assert L.action_table_rule("h123", "h") == "h456"
    assert L.action_table_rule("h12", "h23") == "h13"
    assert L.action_table_rule("h", "h123") == "h456"
    assert L.action_table_rule("h12", "h12") == "h12"  # sign flip, same form
    assert L.action_table_rule("h45", "h123") == "h123"


def test_action_table_involution():
    for refl in L.coordinate_tables().root_forms:
        for target in L.coordinate_tables().root_forms:
            once = L.action_table_rule(refl, target)
            assert L.action_table_rule(refl, once) == target


def test_weyl_group_order_and_transitivity():
    g = L.weyl_group()
    assert g.order == 51840
    assert len(g.orbit_of_label("a1")) == 27


def test_weyl_orbits_on_structures():
    g = L.weyl_group()
    st_ = L.enumerate_structures()
    tri_orbits = g.orbits_of_sets(st_.tritangents.values())
    assert sorted(len(o) for o in tri_orbits) == [45]
    ds_orbits = g.orbits_of_sets(L.ds_lines(n) for n in st_.double_sixes)
    assert sorted(len(o) for o in ds_orbits) == [36]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=8))
def test_random_words_stay_in_group(word):
    g = L.weyl_group()
    gens = g.generators
    perm = L.IDENTITY27
    for k in word:
        perm = L.compose(gens[k], perm)
    assert perm in g.elements
    assert L.check_meets_preserved(perm)


# -- special loci -------------------------------------------------------------------


def test_special_loci_counts():
    loci = L.special_loci()
    assert len(loci.hyperplanes) == 36
    assert len(loci.root_points) == 36
    assert len(loci.weight_points) == 27
    assert len(loci.lines120) == 120
    assert len(loci.lines216) == 216
    assert len(loci.lines45) == 45
    assert len(loci.spaces120) == 120
    assert loci.spanning_triples == 40


def test_collinear_a2_example():
    # the dual points of an A2 triple of root forms lie on one line
    loci = L.special_loci()
    h12, h23, h13 = (loci.root_points[n] for n in ("h12", "h23", "h13"))
    assert rank_exact([list(h12.coords), list(h23.coords), list(h13.coords)]) == 2
    line = ProjLine(h12, h23)
    assert line.contains(h13)


def test_line_through_two_weight_points_hits_a_root_point():
    loci = L.special_loci()
    line = ProjLine(loci.weight_points["a1"], loci.weight_points["a2"])
    assert line.contains(loci.root_points["h12"])
    assert any(line.key == l.key for l in loci.lines216)


def test_line_of_a_tritangent_triple():
    loci = L.special_loci()
    line = ProjLine(loci.weight_points["a1"], loci.weight_points["b2"])
    assert line.contains(loci.weight_points["c12"])
    assert any(line.key == l.key for l in loci.lines45)


def test_hyperplane_counts():
    assert L.hyperplane_counts_through_points() == (20, 15)


def test_census_points_match_dual_points():
    table = cached_incidence("E", 6)
    loci = L.special_loci()
    pts20 = {ProjPoint(f.span_basis()[0])
             for f in table.flats_of_dim(0) if f.q == 20}
    pts15 = {ProjPoint(f.span_basis()[0])
             for f in table.flats_of_dim(0) if f.q == 15}
    assert pts20 == set(loci.weight_points.values())
    assert pts15 == set(loci.root_points.values())


def test_census_lines_match_120():
    table = cached_incidence("E", 6)
    loci = L.special_loci()
    keys6 = set()
    for f in table.flats_of_dim(1):
        if f.q == 6:
            b = f.span_basis()
            keys6.add(ProjLine(ProjPoint(b[0]), ProjPoint(b[1])).key)
    assert keys6 == {l.key for l in loci.lines120}


# -- vanishing ideals and incidence complexes -----------------------------------------


def test_macdonald_dimensions_and_memberships():
    rep = L.macdonald_membership()
    assert rep.dims == {
        "cubics_on_36_points": 20,
        "cubics_on_27_points": 30,
        "quartics_on_45_lines": 15,
        "sextics_on_216_lines": 24,
    }
    assert all(rep.memberships.values())
    for ranks in rep.modular_ranks.values():
        assert len(ranks) == 2  # two independent prime shadows agreed


def test_incidence_complex_ranks():
    r = L.incidence_complex_ranks()
    assert r.tritangent_line == {
        "rows": 45, "cols": 27, "rank": 21, "kernel": 24, "cokernel": 6}
    assert r.segre_hyperplane_plane == {
        "rows": 15, "cols": 15, "rank": 10, "kernel": 5, "cokernel": 5}


def test_structures_json_serializable():
    blob = json.dumps(L.structures_json(), sort_keys=True)
    parsed = json.loads(blob)
    assert parsed["counts"]["tritangents"] == 45
    assert parsed["tritangents"]["(12)"] == ["a1", "b2", "c12"]
    assert len(parsed["root_forms"]) == 36
