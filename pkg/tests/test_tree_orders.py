"""
Tree orders: built-in policies, path orders, table policies and their validation
"""

import pytest

from conftest import random_multigraph
from core.models.graph_model import EdgeRef, GraphModel
from core.models.order_model import (
    BUILTIN_POLICIES, BreadthFirstOrder, DepthFirstOrder, OrderModel, PolicyDefectError, TablePolicy,
    VertexAddingOrder,
)
from core.models.tree_model import RootedTree, TreeModel
from core.services.bijection_service import BijectionService
from core.services.enumeration_service import EnumerationService
from core.services.order_service import OrderService
from core.utils.validators import ValidationError


@pytest.fixture
def example_tree(order_example, fixture_store):
    return fixture_store.load_tree(order_example, "order_example.tree")


@pytest.mark.parametrize("policy, expected, b1", [
    ("bf", [0, 2, 6, 3, 4, 1, 5], 4),
    ("df", [0, 2, 3, 5, 4, 1, 6], 4),
    ("va", [0, 2, 3, 4, 1, 5, 6], 3),
])
def test_worked_example_orders(order_example, example_tree, policy, expected, b1):
    p = OrderModel.policy_from_name(policy)
    assert OrderService.compute_order(example_tree, p) == expected
    assert BijectionService.theta(order_example, example_tree, p).value(1) == b1


def test_right_to_left_depth_first(example_tree):
    assert OrderService.compute_order(example_tree, DepthFirstOrder(right_to_left=True)) == [0, 6, 2, 4, 1, 3, 5]


def test_single_vertex_tree(k3):
    tree = TreeModel.single_vertex(k3)
    for p in OrderModel.builtin_policies():
        assert OrderService.compute_order(tree, p) == [0]


def test_policy_names():
    assert [p.name for p in OrderModel.builtin_policies()] == list(BUILTIN_POLICIES)
    with pytest.raises(ValidationError):
        OrderModel.policy_from_name("path:nope")
    with pytest.raises(ValidationError):
        OrderModel.policy_from_name("random")


@pytest.mark.parametrize("name", BUILTIN_POLICIES)
def test_builtin_policies_are_proper(k4, name):
    report = OrderService.validate_proper_set(k4, OrderModel.policy_from_name(name), 4)
    assert report.valid, report.violation
    assert report.trees_checked > 16


def test_builtin_policies_proper_on_parallel_edges(parallel_cycle):
    for p in OrderModel.builtin_policies():
        assert OrderService.validate_proper_set(parallel_cycle, p, 5).valid


@pytest.mark.parametrize("path_name, classic", [
    ("path:lex", DepthFirstOrder()),
    ("path:bf", BreadthFirstOrder()),
    ("path:va", VertexAddingOrder()),
])
@pytest.mark.parametrize("seed", range(8))
def test_path_orders_match_classic_orders(seed, path_name, classic):
    graph = random_multigraph(seed, max_n=4)
    p = OrderModel.policy_from_name(path_name)
    for tree in EnumerationService.enumerate_spanning_trees(graph):
        assert OrderService.compute_order(tree, p) == OrderService.compute_order(tree, classic)


@pytest.mark.parametrize("path_name, classic", [
    ("path:lex", DepthFirstOrder()),
    ("path:bf", BreadthFirstOrder()),
    ("path:va", VertexAddingOrder()),
])
def test_path_orders_match_classic_orders_on_k4(k4, path_name, classic):
    p = OrderModel.policy_from_name(path_name)
    for tree in EnumerationService.enumerate_spanning_trees(k4):
        assert OrderService.compute_order(tree, p) == OrderService.compute_order(tree, classic)


def test_table_policy_is_proper_but_not_inducible(parallel_cycle, fixture_store):
    table = fixture_store.load_table_policy(parallel_cycle, "parallel_cycle.table")
    assert OrderService.validate_proper_set(parallel_cycle, table, 5).valid

    report = OrderService.check_inducibility(parallel_cycle, table)
    assert report.contradiction
    assert [str(p) for p in report.cycle] == ["<1,3>", "<2,4#1>", "<1,3#1>", "<2,4>"]


def test_builtin_path_order_has_no_contradiction(parallel_cycle):
    report = OrderService.check_inducibility(parallel_cycle, OrderModel.policy_from_name("path:lex"))
    assert not report.contradiction
    assert report.constraints > 0


def test_table_policy_still_gives_a_bijection(parallel_cycle, fixture_store):
    table = fixture_store.load_table_policy(parallel_cycle, "parallel_cycle.table")
    assert BijectionService.verify_bijection(parallel_cycle, table).passed


def test_table_policy_missing_tree_is_a_defect(k3):
    table = TablePolicy(k3, name="partial")
    table.add(TreeModel.from_parents(k3, {1: 0, 2: 0}), [0, 1, 2])
    table.complete_by_restriction()
    assert OrderService.compute_order(TreeModel.from_parents(k3, {1: 0}), table) == [0, 1]
    with pytest.raises(PolicyDefectError):
        OrderService.compute_order(TreeModel.from_parents(k3, {1: 0, 2: 1}), table)
    report = BijectionService.verify_bijection(k3, table)
    assert not report.passed
    assert report.policy_defect is not None


def test_table_restrictions_must_agree(k3):
    table = TablePolicy(k3)
    table.add(TreeModel.from_parents(k3, {1: 0, 2: 0}), [0, 1, 2])
    table.add(TreeModel.from_parents(k3, {1: 0, 2: 1}), [0, 1, 2])
    table.add(TreeModel.from_parents(k3, {1: 0}), [0, 1])
    table.complete_by_restriction()
    conflicting = TablePolicy(k3)
    conflicting.add(TreeModel.from_parents(k3, {1: 0, 2: 0}), [0, 1, 2])
    conflicting.add(TreeModel.from_parents(k3, {1: 2, 2: 0}), [0, 2, 1])
    conflicting.entries[TreeModel.from_parents(k3, {2: 0}).edges] = (2, 0)
    with pytest.raises(PolicyDefectError):
        conflicting.complete_by_restriction()


def test_proper_set_reports_parent_after_child(k3):
    table = TablePolicy(k3, name="backwards")
    table.add(TreeModel.single_vertex(k3), [0])
    table.add(TreeModel.from_parents(k3, {1: 0}), [0, 1])
    table.add(TreeModel.from_parents(k3, {2: 0}), [0, 2])
    table.add(TreeModel.from_parents(k3, {1: 0, 2: 0}), [0, 1, 2])
    table.add(TreeModel.from_parents(k3, {1: 0, 2: 1}), [0, 2, 1])
    table.add(TreeModel.from_parents(k3, {1: 2, 2: 0}), [0, 2, 1])
    report = OrderService.validate_proper_set(k3, table, 3)
    assert not report.valid
    assert report.edge == EdgeRef(2, 1)


def test_proper_set_reports_inconsistent_restriction(k3):
    table = TablePolicy(k3, name="inconsistent")
    table.add(TreeModel.single_vertex(k3), [0])
    table.add(TreeModel.from_parents(k3, {1: 0}), [0, 1])
    table.add(TreeModel.from_parents(k3, {2: 0}), [0, 2])
    table.add(TreeModel.from_parents(k3, {1: 0, 2: 0}), [0, 1, 2])
    table.add(TreeModel.from_parents(k3, {1: 0, 2: 1}), [0, 1, 2])
    table.add(TreeModel.from_parents(k3, {1: 2, 2: 0}), [0, 2, 1])
    assert OrderService.validate_proper_set(k3, table, 3).valid
    table.entries[TreeModel.from_parents(k3, {1: 0}).edges] = (1, 0)
    report = OrderService.validate_proper_set(k3, table, 3)
    assert not report.valid


def test_table_format_round_trip(parallel_cycle, fixture_store):
    table = fixture_store.load_table_policy(parallel_cycle, "parallel_cycle.table")
    text = OrderModel.serialize_table_policy(table)
    again = OrderModel.parse_table_policy(parallel_cycle, text, complete=False)
    assert again.entries == table.entries


def test_table_parse_errors(k3):
    with pytest.raises(ValidationError):
        OrderModel.parse_table_policy(k3, "treeedge 1 0 0\n")
    with pytest.raises(ValidationError):
        OrderModel.parse_table_policy(k3, "treeedge 1 0 0\norder 0 2\n")
    with pytest.raises(ValidationError):
        OrderModel.parse_table_policy(k3, "tree 1 0\norder 0 1\n")


def test_order_must_start_at_root(k3):
    table = TablePolicy(k3, name="rootless")
    tree = TreeModel.from_parents(k3, {1: 0})
    table.entries[tree.edges] = (1, 0)
    with pytest.raises(PolicyDefectError):
        OrderService.compute_order(tree, table)
