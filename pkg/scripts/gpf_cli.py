#!/usr/bin/env python3
"""
G-parking function toolkit
Command line interface over the graph, tree, parking-function and Dyck-path text formats
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

# Ensure project root is added to module path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.models.graph_model import Multigraph
from core.models.order_model import BUILTIN_POLICIES, OrderModel, OrderPolicy, PolicyDefectError
from core.models.parking_model import NotParkingFunctionError, ParkingModel
from core.models.sandpile_model import UndirectedEdgeOrder
from core.models.tree_model import RootedTree, TreeModel
from core.services.bijection_service import BijectionService
from core.services.classical_service import ClassicalService
from core.services.enumeration_service import EnumerationService
from core.services.log_service import LogService
from core.services.order_service import OrderService
from core.services.parking_service import ParkingService
from core.services.sandpile_service import SandpileService
from core.store.filestore import store
from core.utils.settings import get_settings
from core.utils.validators import ValidationError

JSON_VERSION = 1
EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


@dataclass
class CommandResult:
    """Exit code, text lines and the structured payload of one command"""
    code: int = EXIT_OK
    lines: List[str] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)


def tree_line(tree: RootedTree) -> str:
    return " ".join(str(e) for e in tree.edges)


def tree_json(tree: RootedTree) -> List[List[int]]:
    return [[e.tail, e.head, e.copy] for e in tree.edges]


def vertex_set(vertices) -> str:
    return ParkingModel.format_vertex_set(vertices)


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run() owns the exit code"""

    def error(self, message):
        raise ValidationError(f"{self.prog}: {message}")


class GpfApp:
    """Main application class"""

    def __init__(self):
        self.parser = self.build_parser()

    def build_parser(self) -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--format", choices=("text", "json"), default="text")
        common.add_argument("--verbose", action="store_true", help="log operations at INFO level")

        policy_help = f"one of {', '.join(BUILTIN_POLICIES)} or table:FILE"
        parser = _Parser(prog="gpf", description="G-parking functions and rooted spanning trees")
        commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

        check = commands.add_parser("check", parents=[common], help="decide whether b is a G-parking function")
        check.add_argument("graph")
        check.add_argument("pf", help="inline values or a file")
        check.add_argument("--method", choices=("burning", "definitional", "phi"), default="burning")
        check.add_argument("--policy", default="bf", help=f"policy for --method=phi; {policy_help}")

        to_tree = commands.add_parser("to-tree", parents=[common], help="apply phi")
        to_tree.add_argument("graph")
        to_tree.add_argument("pf")
        to_tree.add_argument("--policy", default="bf", help=policy_help)
        to_tree.add_argument("--trace", action="store_true", help="show each growth step as a comment")

        to_pf = commands.add_parser("to-pf", parents=[common], help="apply theta")
        to_pf.add_argument("graph")
        to_pf.add_argument("tree")
        to_pf.add_argument("--policy", default="bf", help=policy_help)

        enumerate_ = commands.add_parser("enumerate", parents=[common], help="list parking functions or trees")
        enumerate_.add_argument("graph")
        enumerate_.add_argument("--what", choices=("pfs", "trees", "pairs"), default="pfs")
        enumerate_.add_argument("--policy", default="bf", help=f"used by --what=pairs; {policy_help}")

        count = commands.add_parser("count", parents=[common], help="count spanning trees")
        count.add_argument("graph")
        count.add_argument("--method", choices=("matrix-tree", "exhaustive"), default="matrix-tree")

        verify = commands.add_parser("verify", parents=[common], help="check theta and phi are inverse")
        verify.add_argument("graph")
        verify.add_argument("--policy", default="bf", help=policy_help)
        verify.add_argument("--proper-set", type=int, metavar="K",
                            help="also check the proper-set conditions on subtrees of at most K vertices")
        verify.add_argument("--inducibility", action="store_true",
                            help="also search for a contradiction among required path relations")

        order = commands.add_parser("order", parents=[common], help="print the order of a tree's vertices")
        order.add_argument("tree")
        order.add_argument("graph")
        order.add_argument("--policy", default="bf", help=policy_help)

        sandpile = commands.add_parser("sandpile", help="sandpile correspondences")
        sandpile_commands = sandpile.add_subparsers(dest="action", required=True, parser_class=_Parser)
        waves = sandpile_commands.add_parser("waves", parents=[common], help="burning waves against tree heights")
        waves.add_argument("graph")
        waves.add_argument("pf")
        activity = sandpile_commands.add_parser("activity", parents=[common], help="external activity of a tree")
        activity.add_argument("graph")
        activity.add_argument("tree")
        activity.add_argument("--edge-order", help="file of `rank I J` lines (default: lexicographic)")
        separate = sandpile_commands.add_parser("separate", parents=[common], help="Hamiltonian path experiment")
        separate.add_argument("n", type=int)
        levels = sandpile_commands.add_parser("levels", parents=[common],
                                              help="parking levels against external activity")
        levels.add_argument("graph")
        levels.add_argument("--edge-order")

        dyck = commands.add_parser("dyck", help="labeled Dyck paths of classical parking functions")
        dyck_commands = dyck.add_subparsers(dest="action", required=True, parser_class=_Parser)
        encode = dyck_commands.add_parser("encode", parents=[common], help="parking function to Dyck path")
        encode.add_argument("pf")
        decode = dyck_commands.add_parser("decode", parents=[common], help="Dyck path to tree")
        decode.add_argument("path", help="inline steps like 'E(1) E(2) N E(3) N N' or a file")
        return parser

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Parse, dispatch and print; returns the exit code"""
        try:
            args = self.parser.parse_args(argv)
        except ValidationError as e:
            print(f"❌ {e}", file=sys.stderr)
            return EXIT_USAGE

        handler = getattr(self, "cmd_" + "_".join(filter(None, [args.command, getattr(args, "action", None)])).replace("-", "_"))
        try:
            LogService.configure("INFO" if args.verbose else get_settings().log_level)
            result = handler(args)
        except NotParkingFunctionError as e:
            result = CommandResult(EXIT_FALSE, [str(e)], {"parking": False, "step": e.step, "stuck": sorted(e.stuck)})
        except PolicyDefectError as e:
            print(f"❌ {e}", file=sys.stderr)
            return EXIT_USAGE
        except ValidationError as e:
            print(f"❌ {e}", file=sys.stderr)
            return EXIT_USAGE
        except Exception as e:
            LogService.log_suspicious_activity("Unexpected error", str(e))
            print(f"❌ Unexpected error: {e}", file=sys.stderr)
            return EXIT_USAGE

        self.emit(args, result)
        return result.code

    def emit(self, args, result: CommandResult) -> None:
        if args.format == "json":
            command = " ".join(filter(None, [args.command, getattr(args, "action", None)]))
            payload = {"v": JSON_VERSION, "command": command, "exit": result.code, **result.data}
            print(json.dumps(payload, sort_keys=True))
        else:
            for line in result.lines:
                print(line)

    def policy(self, graph: Multigraph, name: str) -> OrderPolicy:
        if name.startswith("table:"):
            return store.load_table_policy(graph, name[len("table:"):])
        return OrderModel.policy_from_name(name)

    def edge_order(self, graph: Multigraph, path: Optional[str]) -> UndirectedEdgeOrder:
        return store.load_edge_order(graph, path) if path else UndirectedEdgeOrder.lex(graph)

    def cmd_check(self, args) -> CommandResult:
        graph = store.load_graph(args.graph)
        b = store.load_candidate(args.pf)
        ParkingModel.check_length(b, graph.n)
        data: Dict[str, Any] = {"method": args.method, "pf": list(b)}

        if args.method == "definitional":
            verdict = ParkingService.is_parking_definitional(graph, b)
            accepted, lines = verdict.accepted, []
            if not accepted:
                lines.append(f"witness U={vertex_set(verdict.witness)}")
                data["witness"] = sorted(verdict.witness)
        elif args.method == "burning":
            burn = ParkingService.is_parking_burning(graph, b)
            accepted = burn.accepted
            lines = [f"wave {i}: {vertex_set(w)}" for i, w in enumerate(burn.waves)]
            data["waves"] = [sorted(w) for w in burn.waves]
            if not accepted:
                lines.append(f"witness U={vertex_set(burn.stuck)}")
                data["witness"] = sorted(burn.stuck)
        else:
            policy = self.policy(graph, args.policy)
            try:
                result = BijectionService.phi(graph, b, policy)
            except NotParkingFunctionError as e:
                accepted, lines = False, [f"stuck at step {e.step}", f"witness U={vertex_set(e.stuck)}"]
                data["witness"] = sorted(e.stuck)
            else:
                accepted, lines = True, result.trace.describe()
                data["tree"] = tree_json(result.tree)

        data["parking"] = accepted
        verdict_line = "parking function" if accepted else "not a parking function"
        return CommandResult(EXIT_OK if accepted else EXIT_FALSE, [verdict_line] + lines, data)

    def cmd_to_tree(self, args) -> CommandResult:
        graph = store.load_graph(args.graph)
        b = store.load_candidate(args.pf)
        result = BijectionService.phi(graph, b, self.policy(graph, args.policy))
        lines = ["# " + step for step in result.trace.describe()] if args.trace else []
        lines.extend(TreeModel.serialize_tree(result.tree).splitlines())
        data = {"tree": tree_json(result.tree), "attached": result.trace.attached}
        return CommandResult(EXIT_OK, lines, data)

    def cmd_to_pf(self, args) -> CommandResult:
        graph = store.load_graph(args.graph)
        tree = store.load_tree(graph, args.tree)
        b = BijectionService.theta(graph, tree, self.policy(graph, args.policy))
        return CommandResult(EXIT_OK, [ParkingModel.format_candidate(b)], {"pf": list(b)})

    def cmd_enumerate(self, args) -> CommandResult:
        graph = store.load_graph(args.graph)
        if args.what == "pfs":
            found = ParkingService.enumerate_parking_functions(graph)
            return CommandResult(EXIT_OK, [str(b) for b in found], {"pfs": [list(b) for b in found]})
        if args.what == "trees":
            trees = sorted(EnumerationService.enumerate_spanning_trees(graph))
            return CommandResult(EXIT_OK, [tree_line(t) for t in trees], {"trees": [tree_json(t) for t in trees]})
        pairs = BijectionService.enumerate_pairs(graph, self.policy(graph, args.policy))
        return CommandResult(
            EXIT_OK,
            [f"{p.candidate} -> {tree_line(p.tree)}" for p in pairs],
            {"pairs": [{"pf": list(p.candidate), "tree": tree_json(p.tree)} for p in pairs]},
        )

    def cmd_count(self, args) -> CommandResult:
        graph = store.load_graph(args.graph)
        if args.method == "matrix-tree":
            total = EnumerationService.count_spanning_trees(graph)
        else:
            total = len(EnumerationService.enumerate_spanning_trees(graph))
        return CommandResult(EXIT_OK, [str(total)], {"method": args.method, "count": total})

    def cmd_verify(self, args) -> CommandResult:
        graph = store.load_graph(args.graph)
        policy = self.policy(graph, args.policy)
        report = BijectionService.verify_bijection(graph, policy)
        passed = report.passed
        lines = [f"policy {policy.name}: {report.summary()}"]
        lines.extend(f"failure: {f}" for f in report.failures)
        data: Dict[str, Any] = {
            "policy": policy.name, "trees": report.trees, "pfs": report.parking_functions,
            "failures": report.failures, "policy_defect": report.policy_defect,
        }

        if args.proper_set is not None:
            proper = OrderService.validate_proper_set(graph, policy, args.proper_set)
            passed = passed and proper.valid
            lines.append(f"proper set: {'valid' if proper.valid else proper.violation} ({proper.trees_checked} subtrees)")
            data["proper_set"] = {"valid": proper.valid, "violation": proper.violation}

        if args.inducibility:
            induced = OrderService.check_inducibility(graph, policy)
            if induced.contradiction:
                lines.append("inducibility contradiction: " + " < ".join(map(str, induced.cycle + induced.cycle[:1])))
            else:
                lines.append(f"no inducibility contradiction among {induced.constraints} relations")
            data["inducibility_cycle"] = [str(p) for p in induced.cycle]

        data["passed"] = passed
        lines.append("PASS" if passed else "FAIL")
        return CommandResult(EXIT_OK if passed else EXIT_FALSE, lines, data)

    def cmd_order(self, args) -> CommandResult:
        graph = store.load_graph(args.graph)
        tree = store.load_tree(graph, args.tree)
        order = OrderService.compute_order(tree, self.policy(graph, args.policy))
        return CommandResult(EXIT_OK, [" ".join(map(str, order))], {"order": order})

    def cmd_sandpile_waves(self, args) -> CommandResult:
        graph = store.load_graph(args.graph)
        b = store.load_candidate(args.pf)
        matched = SandpileService.burning_waves_match_heights(graph, b)
        burn = ParkingService.is_parking_burning(graph, b)
        lines = [f"wave {i}: {vertex_set(w)}" for i, w in enumerate(burn.waves)]
        lines.append("waves match heights" if matched else "waves differ from heights")
        data = {"waves": [sorted(w) for w in burn.waves], "match": matched}
        return CommandResult(EXIT_OK if matched else EXIT_FALSE, lines, data)

    def cmd_sandpile_activity(self, args) -> CommandResult:
        graph = store.load_graph(args.graph)
        tree = store.load_tree(graph, args.tree)
        activity = SandpileService.external_activity(graph, tree, self.edge_order(graph, args.edge_order))
        return CommandResult(EXIT_OK, [str(activity)], {"activity": activity})

    def cmd_sandpile_separate(self, args) -> CommandResult:
        report = SandpileService.separation_experiment(args.n)
        lines = [
            f"Hamiltonian paths of K_{report.n + 1}: {report.paths_checked}",
            f"theta gives permutations under {', '.join(report.policies)}: "
            f"{'yes' if report.all_permutations else 'no'}",
        ]
        lines.extend(f"failure: {f}" for f in report.permutation_failures)
        lines.append(f"greedy path {tree_line(report.greedy_path)} activity {report.greedy_activity}")
        if report.witness_path is not None:
            lines.append(f"witness path {tree_line(report.witness_path)} activity {report.witness_activity}")
        lines.append("PASS" if report.holds else "FAIL")
        data = {
            "n": report.n, "paths": report.paths_checked, "permutations": report.all_permutations,
            "greedy_activity": report.greedy_activity, "witness_activity": report.witness_activity,
            "passed": report.holds,
        }
        return CommandResult(EXIT_OK if report.holds else EXIT_FALSE, lines, data)

    def cmd_sandpile_levels(self, args) -> CommandResult:
        graph = store.load_graph(args.graph)
        report = SandpileService.level_distribution(graph, self.edge_order(graph, args.edge_order))
        levels = sorted(set(report.parking_levels) | set(report.activity_levels))
        lines = [
            f"level {k}: {report.parking_levels.get(k, 0)} parking functions, "
            f"{report.activity_levels.get(k, 0)} trees"
            for k in levels
        ]
        lines.append("distributions match" if report.matches else "distributions differ")
        data = {
            "parking_levels": {str(k): v for k, v in report.parking_levels.items()},
            "activity_levels": {str(k): v for k, v in report.activity_levels.items()},
            "match": report.matches,
        }
        return CommandResult(EXIT_OK if report.matches else EXIT_FALSE, lines, data)

    def cmd_dyck_encode(self, args) -> CommandResult:
        path = ClassicalService.parking_to_dyck(store.load_candidate(args.pf))
        return CommandResult(EXIT_OK, [str(path)], {"path": str(path)})

    def cmd_dyck_decode(self, args) -> CommandResult:
        path = store.load_dyck(args.path)
        tree = ClassicalService.tree_from_dyck(path)
        lines = [f"# pf {path.to_candidate()}"] + TreeModel.serialize_tree(tree).splitlines()
        return CommandResult(EXIT_OK, lines, {"pf": list(path.to_candidate()), "tree": tree_json(tree)})


def main(argv: Optional[Sequence[str]] = None) -> int:
    return GpfApp().run(argv)


if __name__ == "__main__":
    sys.exit(main())
