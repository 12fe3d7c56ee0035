import itertools

import pytest

from eii.codespec import (
    AlphaOrderError,
    DifferentChildrenError,
    FieldTooSmallError,
    LeafSpec,
    NegativeMultiplicityError,
    NodeSpec,
    NotNestedError,
    NotTotallyOrderedError,
    capability,
    capability_to_string,
    dimension,
    is_nested,
    layer_count,
    length,
    level_count,
    min_distance,
    parse_capability,
    spec_from_capability,
    spec_from_json,
    spec_to_json,
    tail_counts,
    validate,
)
from eii.gf import field

G8 = field(3)
G16 = field(4)
G4 = field(2)

L12 = (LeafSpec(G8, 7, 1), LeafSpec(G8, 7, 2))
L123 = (LeafSpec(G8, 7, 1), LeafSpec(G8, 7, 2), LeafSpec(G8, 7, 3))


def example4_c3():
    c20 = NodeSpec(G8, L123, (2, 1, 0, 0))
    c21 = NodeSpec(G8, L123, (1, 1, 1, 0))
    return NodeSpec(G8, (c20, c21), (1, 3, 0))


def test_validate_example4():
    validate(example4_c3())


def test_validate_m_too_large():
    leaves_16 = (LeafSpec(G8, 7, 1), LeafSpec(G8, 7, 2), LeafSpec(G8, 7, 3))
    with pytest.raises(FieldTooSmallError):
        validate(NodeSpec(G8, leaves_16, (5, 4, 3, 0)))  # m = 12 >= q = 8


def test_validate_wrong_child_order():
    with pytest.raises(NotNestedError):
        validate(NodeSpec(G8, (L12[1], L12[0]), (1, 1, 0)))


def test_validate_negative_multiplicity():
    with pytest.raises(NegativeMultiplicityError):
        validate(NodeSpec(G8, L12, (2, -1, 0)))


def test_validate_leaf_row_length_vs_field():
    # the row parity check needs n distinct evaluation points
    with pytest.raises(FieldTooSmallError):
        validate(LeafSpec(G4, 4, 2))
    validate(LeafSpec(G4, 3, 2))
    validate(LeafSpec(G4, 5, 0))  # whole space carries no Vandermonde rows


def test_validate_vector_length():
    with pytest.raises(Exception):
        validate(NodeSpec(G8, L12, (1, 1)))


def test_tail_counts():
    spec = NodeSpec(G8, (LeafSpec(G8, 7, 1),) , (2, 1))
    assert tail_counts(spec) == (3, 1)


def test_length_dimension_example1():
    # dimension per the k = 25 figure uses redundancies (1, 2, 3, 5)
    leaves = (LeafSpec(G8, 7, 1), LeafSpec(G8, 7, 2), LeafSpec(G8, 7, 3), LeafSpec(G8, 7, 5))
    spec = NodeSpec(G8, leaves, (2, 1, 1, 2, 1))
    assert length(spec) == 49
    assert dimension(spec) == 49 - (2 * 1 + 1 * 2 + 1 * 3 + 2 * 5 + 1 * 7)
    assert dimension(spec) == 25
    assert min_distance(spec) == 12


def test_example4_dimensions():
    spec = example4_c3()
    assert (length(spec), dimension(spec), min_distance(spec)) == (84, 62, 4)


def test_all_data_code():
    spec = NodeSpec(G8, (LeafSpec(G8, 7, 0),), (3, 0))
    assert dimension(spec) == length(spec) == 21


def test_min_distance_leaf():
    assert min_distance(LeafSpec(G8, 7, 2)) == 3
    assert min_distance(LeafSpec(G8, 7, 0)) == 1


def test_min_distance_example5():
    c20 = NodeSpec(G8, L12, (2, 1, 0))
    c21 = NodeSpec(G8, L12, (1, 1, 1))
    spec = NodeSpec(G8, (c20, c21), (3, 1, 0))
    assert min_distance(spec) == 6
    assert (length(spec), dimension(spec)) == (84, 62)


def test_min_distance_skips_leading_zero_multiplicities():
    # with no blocks on the weakest child, the weighted sums force every
    # block into the stronger children and the weak term is unreachable
    c20 = NodeSpec(G8, L123, (2, 1, 0, 0))
    c21 = NodeSpec(G8, L123, (1, 1, 1, 0))
    spec = NodeSpec(G8, (c20, c21), (0, 2, 0))
    assert min_distance(spec) == 4


def test_capability_examples():
    c20 = NodeSpec(G8, L12, (5, 1, 0))
    assert capability(c20) == (1, 1, 1, 1, 1, 2)
    c21b = NodeSpec(G8, L12, (1, 1, 1))
    assert capability(c21b) == (1, 2, 7)
    assert capability(LeafSpec(G8, 7, 2)) == (2,)


def test_capability_nested():
    spec = example4_c3()
    assert capability(spec) == ((1, 1, 2), (1, 2, 3), (1, 2, 3), (1, 2, 3))
    assert capability_to_string(capability(spec)) == "((1,1,2),(1,2,3),(1,2,3),(1,2,3))"


def test_capability_full_erasure_subtree():
    inner = NodeSpec(G8, L12, (2, 1, 0))
    spec = NodeSpec(G8, (inner,), (2, 1))
    assert capability(spec) == ((1, 1, 2), (1, 1, 2), (7, 7, 7))


def _flatten(tree):
    if isinstance(tree, int):
        return [tree]
    out = []
    for entry in tree:
        out.extend(_flatten(entry))
    return out


def test_capability_flat_length_is_row_count():
    from eii.codespec import row_length
    specs = [
        example4_c3(),
        NodeSpec(G8, L12, (1, 1, 1)),
        spec_from_capability(G8, "(((1,1,2),(1,2,3)),((1,2,3),(1,2,3)))", 7),
        NodeSpec(G8, (NodeSpec(G8, L12, (2, 1, 0)),), (2, 1)),
    ]
    for spec in specs:
        flat = _flatten(capability(spec))
        assert len(flat) == length(spec) // row_length(spec)
        assert all(0 <= v <= row_length(spec) for v in flat)


def test_two_layer_dimension_from_capability():
    # for 2-layer codes the flattened capability entries are exactly the
    # per-row redundancies, so they account for the full dimension deficit
    for s in [(5, 1, 0), (4, 2, 0), (1, 1, 1)]:
        spec = NodeSpec(G8, L12, s)
        flat = _flatten(capability(spec))
        assert dimension(spec) == length(spec) - sum(flat)


def test_is_nested_example3():
    c20 = NodeSpec(G8, L12, (5, 1, 0))
    c21 = NodeSpec(G8, L12, (4, 2, 0))
    assert is_nested(c20, c21)
    assert not is_nested(c21, c20)


def test_is_nested_reflexive():
    spec = example4_c3()
    assert is_nested(spec, spec)
    leaf = LeafSpec(G8, 7, 3)
    assert is_nested(leaf, leaf)


def test_is_nested_different_children():
    a = NodeSpec(G8, L12, (1, 1, 0))
    b = NodeSpec(G8, L123, (1, 1, 0, 0))
    with pytest.raises(DifferentChildrenError):
        is_nested(a, b)
    with pytest.raises(DifferentChildrenError):
        is_nested(a, LeafSpec(G8, 14, 2))


def test_is_nested_partial_order():
    profiles = [(2, 1, 0), (1, 1, 1), (1, 2, 0), (0, 2, 1)]
    specs = [NodeSpec(G8, L12, s) for s in profiles]
    for a, b in itertools.product(specs, specs):
        if is_nested(a, b) and is_nested(b, a):
            assert tail_counts(a) == tail_counts(b)
        for c in specs:
            if is_nested(a, b) and is_nested(b, c):
                assert is_nested(a, c)


def test_is_nested_exhaustive_membership_gf4():
    # s = (2,1,0) contains s = (1,1,1) over the same children; confirm by
    # enumerating every codeword of the smaller code on a tiny field
    from eii.codec import encode, is_codeword
    leaves = (LeafSpec(G4, 3, 1), LeafSpec(G4, 3, 2))
    big = NodeSpec(G4, leaves, (2, 1, 0))
    small = NodeSpec(G4, leaves, (1, 1, 1))
    assert is_nested(big, small)
    k = dimension(small)
    for data in itertools.product(range(4), repeat=k):
        word = encode(small, list(data))
        assert is_codeword(big, word)


def test_spec_from_capability_example4():
    spec = spec_from_capability(G8, "((1,1,2),(1,2,3),(1,2,3),(1,2,3))", 7)
    assert capability(spec) == ((1, 1, 2), (1, 2, 3), (1, 2, 3), (1, 2, 3))
    assert (length(spec), dimension(spec), min_distance(spec)) == (84, 62, 4)


def test_spec_from_capability_leaf():
    spec = spec_from_capability(field(7), "(22)", 84)
    assert isinstance(spec, LeafSpec)
    assert (length(spec), dimension(spec)) == (84, 62)


def test_spec_from_capability_not_totally_ordered():
    with pytest.raises(NotTotallyOrderedError):
        spec_from_capability(G8, "((1,2),(2,1))", 7)


def test_spec_from_capability_round_trip():
    for text, w in [
        ("(1,1,1,1,1,2,2,2,2,3,3,3)", 4),
        ("((1,1,2),(1,1,2),(1,1,2),(1,2,7))", 3),
        ("(((1,1,2),(1,2,3)),((1,2,3),(1,2,3)))", 3),
        ("(0,0,1,1,1,1,1,1,2,3,4,7)", 4),
    ]:
        spec = spec_from_capability(field(w), text, 7)
        assert capability_to_string(capability(spec)) == text


def test_spec_from_capability_harmonizes_children():
    # sibling sub-codes built over the union of their own children
    spec = spec_from_capability(G8, "(((1,1,2),(1,2,3)),((1,2,3),(1,2,3)))", 7)
    a, b = spec.children
    assert a.children == b.children
    validate(spec)


def test_parse_capability():
    assert parse_capability("(22)") == (22,)
    assert parse_capability("((1,1,2),(1,2,3))") == ((1, 1, 2), (1, 2, 3))
    with pytest.raises(Exception):
        parse_capability("((1,2)")


def test_layers_and_levels():
    spec = example4_c3()
    assert layer_count(spec) == 3
    assert level_count(spec) == 2
    assert layer_count(LeafSpec(G8, 7, 2)) == 1
    three_level = NodeSpec(G8, L123, (1, 1, 1, 0))
    assert level_count(three_level) == 3


def test_json_round_trip():
    spec = example4_c3()
    text = spec_to_json(spec)
    again = spec_from_json(text)
    assert again == spec


def test_json_leaf():
    doc = '{"field": {"w": 3}, "code": {"leaf": {"n": 7, "u": 2}}}'
    spec = spec_from_json(doc)
    assert spec == LeafSpec(G8, 7, 2)


def test_alpha_order_error_is_validation_error():
    from eii.codespec import ValidationError
    assert issubclass(AlphaOrderError, ValidationError)
