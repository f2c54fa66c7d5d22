import pytest

from flagchow.catalog import (
    CASE_IDS,
    CohomologyModel,
    GroupDescriptor,
    TransgressionEntry,
    WitnessPolynomial,
    descriptor,
    lookup,
    lookup_model,
    restriction_table,
    restriction_tables,
    sharp_data,
    validate_catalog,
    validate_model,
    witness_annotation,
)
from flagchow.errors import DataMissingError, UnsupportedCaseError


def test_validate_catalog_all_entries_pass():
    report = validate_catalog()
    assert len(report) == 11
    assert [case for case, _, _ in report] == list(CASE_IDS)
    for case, ok, fails in report:
        assert ok, (case, fails)


def test_unsupported_cases_list_supported_ones():
    with pytest.raises(UnsupportedCaseError) as err:
        lookup_model("E6", prime=2)
    assert "supported" in str(err.value)
    with pytest.raises(UnsupportedCaseError):
        lookup_model("G2", prime=3)
    with pytest.raises(UnsupportedCaseError):
        lookup_model("U", 3, 7)


def test_lookup_by_descriptor():
    d = descriptor("SO_odd", 3, 2)
    assert d.torsion_index_p == 8
    assert d.j_invariant == (2, 1)
    m = lookup(d)
    assert m.descriptor == d


def test_e8_p3_model_matches_stated_data():
    m = lookup_model("E8", prime=3)
    assert [(g.name, g.topdeg, g.trunc) for g in m.y_gens] == \
        [("y8", 8, 3), ("y20", 20, 3)]
    assert [x.topdeg for x in m.x_gens] == [3, 7, 15, 19, 27, 35, 39, 47]
    assert m.descriptor.torsion_index_p == 9
    assert m.descriptor.j_invariant == (1, 1)
    # Bockstein hits every positive monomial except the top one
    from flagchow.steenrod import beta_preimage
    R = m.y_ring()
    y, yp = R.gen("y8"), R.gen("y20")
    hit = {(1, 0): "x2", (2, 0): "x3", (0, 1): "x4", (1, 1): "x5",
           (2, 1): "x6", (0, 2): "x7", (1, 2): "x8"}
    for (i, j), src in hit.items():
        assert beta_preimage(m, y ** i * yp ** j) == src
    assert beta_preimage(m, y ** 2 * yp ** 2) is None


def test_e7_p2_model_matches_stated_data():
    m = lookup_model("E7", prime=2)
    assert [(g.name, g.trunc) for g in m.y_gens] == \
        [("y6", 2), ("y10", 2), ("y18", 2)]
    assert len(m.x_gens) == 7
    assert m.descriptor.torsion_index_p == 4
    assert [e.topdeg for e in m.transgression] == [4, 6, 10, 18, 16, 24, 28]


def test_e8_p2_model_matches_stated_data():
    m = lookup_model("E8", prime=2)
    assert [g.topdeg for g in m.y_gens] == [6, 10, 18, 30]
    assert [g.trunc for g in m.y_gens] == [8, 4, 2, 2]
    assert m.y_top_degree() == 120
    assert m.descriptor.torsion_index_p == 64
    b6 = m.entry(6)
    R = m.y_ring()
    assert b6.leading.body == R.gen("y6") * R.gen("y18") + R.gen("y6", 4)


def test_u_model_has_no_y_part():
    m = lookup_model("U", 3, 2)
    assert m.y_gens == ()
    assert [x.topdeg for x in m.x_gens] == [1, 3, 5]
    assert m.y_top() == m.y_ring().one()
    assert m.descriptor.torsion_index_p == 1


def test_so7_model():
    m = lookup_model("SO_odd", 3, 2)
    assert [(g.name, g.trunc) for g in m.y_gens] == [("y2", 4), ("y6", 2)]
    # leading term of every c_i is 2 * y_{2i}
    for i, e in enumerate(m.transgression, start=1):
        assert e.leading.s == 1
        assert e.leading.body == m.y_class(2 * i)
    # Spin(7) counterpart is one of the single-generator cases
    spin = lookup_model("Spin_odd", 3, 2)
    assert spin.is_type_one
    assert [(g.name, g.trunc) for g in spin.y_gens] == [("y6", 2)]
    assert [e.name for e in spin.transgression] == ["c'_2", "c'_3", "c_1^4"]


def test_spin11_entries():
    m = lookup_model("Spin_odd", 5, 2)
    z = m.entry("z")
    assert z.topdeg == 16
    R = m.y_ring()
    assert z.leading.body == R.gen("y6") * R.gen("y10")
    c4 = m.entry(4)
    assert c4.leading is None
    assert [(n, b.pretty()) for n, b in c4.v_terms] == [(1, "y10")]
    assert m.descriptor.torsion_index_p == 2
    assert m.extras["lbar"] == 5


def test_spin_lbar_drops_at_2_powers():
    assert lookup_model("Spin_odd", 4, 2).extras["lbar"] == 3
    assert lookup_model("Spin_odd", 8, 2).extras["lbar"] == 7
    assert lookup_model("Spin_odd", 6, 2).extras["lbar"] == 6


def test_mutated_entry_fails_validation():
    m = lookup_model("G2", prime=2)
    bad_entry = TransgressionEntry(1, "b_1", m.transgression[0].topdeg + 2,
                                   None, m.transgression[0].v_terms,
                                   complete=True)
    mutated = CohomologyModel(
        m.descriptor, m.y_gens, m.x_gens,
        (bad_entry,) + m.transgression[1:], m.op_rules,
        is_type_one=True, dim_gt=m.dim_gt, extras={})
    fails = validate_model(mutated)
    assert any("degree" in f or "|" in f for f in fails)


def test_witness_annotations_present():
    for fam, rank, p in [("SO_odd", 4, 2), ("E8", 8, 2), ("E8", 8, 3),
                         ("E7", 7, 2), ("G2", 2, 2), ("F4", 4, 3),
                         ("E8", 8, 5), ("PU", 2, 3), ("Spin_odd", 8, 2)]:
        m = lookup_model(fam, rank, p)
        ann = witness_annotation(m)
        assert ann is not None
    assert witness_annotation(lookup_model("Spin_odd", 6, 2)) is None
    assert witness_annotation(lookup_model("U", 2, 2)).indices == ()


def test_sharp_data_only_where_stored():
    assert sharp_data(lookup_model("E8", prime=2)) is not None
    assert sharp_data(lookup_model("E7", prime=2)) is not None
    assert sharp_data(lookup_model("SO_odd", 3, 2)) is None


def test_restriction_tables_registry():
    names = [t.name for t in restriction_tables()]
    assert names == ["so-rost-restriction-l3", "so-rost-restriction-l7",
                     "e8-2-rost-restriction", "e8-3-rost-restriction",
                     "e8-to-e7-rost-restriction", "e7-2-rost-restriction"]
    t = restriction_table("e8-3-rost-restriction")
    assert len(t.expected_image) == 7
    t = restriction_table("e8-2-rost-restriction")
    assert len(t.expected_image) == 5
    with pytest.raises(DataMissingError):
        restriction_table("nope")


def test_g2_explicit_forms():
    m = lookup_model("G2", prime=2)
    eb = m.extras["explicit_b"]
    assert eb[1].homogeneous_topdeg() == 4
    assert eb[2].homogeneous_topdeg() == 6
    assert eb[1].terms == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    assert eb[2].terms == {(0, 3): 1}


def test_spin_torsion_element_list():
    m = lookup_model("Spin_odd", 5, 2)
    assert m.extras["torsion_elements"] == ["c'_2 - 2*c_1^2", "c'_4 - 2*c_1^4"]


def test_witness_polynomial_invariants():
    m = lookup_model("G2", prime=2)
    with pytest.raises(Exception):
        WitnessPolynomial(-1, m.y_top())


def test_descriptor_label_and_eq():
    a = GroupDescriptor("SO_odd", 3, 2)
    b = GroupDescriptor("SO_odd", 3, 2, torsion_index_p=8)
    assert a == b
    assert a.label() == "SO(7) p=2"
    assert GroupDescriptor("E8", 8, 5).label() == "(E8, 5)"
