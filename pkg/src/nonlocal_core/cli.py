# -*- coding: utf-8 -*-
#######
# nonlocal-core - a workbench for multiplayer nonlocal games: classical,
# no-signaling, explicit quantum and NPA-relaxed quantum values.
#
# Copyright (c) 2019 nonlocal-core developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
#
#######

"""
The nonlocal-core command line interface

Examples::

    nonlocal-core value classical --game chsh
    nonlocal-core value npa --game-file game.json --level 1 --basis dichotomic
    nonlocal-core eval quantum --game chsh --strategy strategy.json
    nonlocal-core bell eval --functional f.json --behavior p.json
    nonlocal-core membership --game chsh --behavior p.json
    nonlocal-core report all --game magic_square --table
"""
import argparse
import os
import sys
import time
from fractions import Fraction
from .common.config import Configuration, DEFAULT_CONFIG_PATH
from .common.exceptions import NonlocalCoreError, InputFormatError, SolverError, \
    UnsupportedScenarioError
from .common.messages_logger import MessageLogger
from .common.response_models import ComputationModel, ValueReportModel, MembershipModel, \
    CatalogEntryModel, to_json, round_floats
from .games import signaling_violation
from .classical import classical_value, ns_value, local_membership, InLocal
from .quantum import winning_probability, strategy_behavior, seesaw_refine, random_strategy, \
    xor_quantum_value
from .bell import local_bound, eval_functional
from .npa import npa_bound, npa_functional_bound
from .hardy import hardy_optimize
from .catalog import CATALOG, coloring_proviso
from . import formats

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

EXIT_SUCCESS = 0
EXIT_INPUT_ERROR = 1
EXIT_NOT_CONVERGED = 2

BORN_RULE_TOLERANCE = 1e-12
# Explicit and relaxed values closer than this share the omega_q label
QUANTUM_MATCH_TOLERANCE = 1e-5


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Raise instead of exiting, so that usage errors map to exit code 1"""

    def error(self, message):
        raise UsageError("%s\n%s" % (self.format_usage(), message))


def _common_options():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--game", help="A catalog game: %s" % ", ".join(sorted(CATALOG)))
    parser.add_argument("--game-file", help="A game JSON document")
    parser.add_argument("--strategy", help="A quantum strategy JSON document")
    parser.add_argument("--behavior", help="A behavior JSON document")
    parser.add_argument("--functional", help="A Bell functional JSON document")
    parser.add_argument("--npa-level", "--level", dest="npa_level", type=int,
                        help="The NPA relaxation level")
    parser.add_argument("--basis", choices=["projector", "dichotomic"], help="The NPA operator basis")
    parser.add_argument("--colors", type=int, help="The number of colors of the coloring game")
    parser.add_argument("--graph", help="A graph JSON document for the coloring game")
    parser.add_argument("--seed", type=int, default=0, help="Seed of all randomized routines")
    parser.add_argument("--tol", type=float, help="Tolerance of the SDP solver")
    parser.add_argument("--restarts", type=int, help="Restarts of the Hardy search")
    parser.add_argument("--seesaw", action="store_true",
                        help="Refine the quantum strategy by seesaw iterations")
    parser.add_argument("--timing", action="store_true", help="Report the wall time of every computation")
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", dest="output", action="store_const", const="json", default="json",
                        help="Print the JSON report (default)")
    output.add_argument("--table", dest="output", action="store_const", const="table",
                        help="Print a summary table")
    return parser


def create_parser():
    common = _common_options()
    parser = ArgumentParser(prog="nonlocal-core", description=__doc__,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    value = commands.add_parser("value", parents=[common], help="Classical, no-signaling or NPA value")
    value.add_argument("kind", choices=["classical", "ns", "npa"])

    evaluate = commands.add_parser("eval", parents=[common], help="Value of an explicit strategy")
    evaluate.add_argument("kind", choices=["quantum"])

    bell = commands.add_parser("bell", help="Bell functionals")
    bell_commands = bell.add_subparsers(dest="bell_command")
    bell_commands.required = True
    bell_commands.add_parser("eval", parents=[common], help="Evaluate a functional on a behavior")

    commands.add_parser("membership", parents=[common], help="Local polytope membership of a behavior")

    catalog = commands.add_parser("catalog", help="The named games")
    catalog.add_argument("kind", choices=["list"])
    catalog.add_argument("--table", dest="output", action="store_const", const="table", default="json")

    report = commands.add_parser("report", parents=[common], help="All values of a game")
    report.add_argument("kind", choices=["all"])

    hardy = commands.add_parser("hardy", parents=[common], help="The Hardy paradox probability")
    hardy.add_argument("kind", choices=["optimize"])
    return parser


def _load_graph(args):
    if args.graph is None:
        return None
    return formats.parse_graph(formats.load_document(args.graph))


def load_game(args, required=True):
    """The game of --game or --game-file

    Raises:
        InputFormatError

    """
    if args.game is not None and args.game_file is not None:
        raise InputFormatError("Use either --game or --game-file")
    graph = _load_graph(args)
    if args.game_file is not None:
        return formats.parse_game(formats.load_document(args.game_file), colors=args.colors, graph=graph)
    if args.game is None:
        if required:
            raise InputFormatError("A game is required, use --game or --game-file")
        return None
    if args.game not in CATALOG:
        raise InputFormatError("Unknown game <%s>, known are %s" % (args.game, ", ".join(sorted(CATALOG))))
    if args.game == "coloring":
        if graph is None or args.colors is None:
            raise InputFormatError("The coloring game requires --graph and --colors")
        return CATALOG["coloring"].build(graph, args.colors)
    return CATALOG[args.game].build()


def load_strategy(args, game, required=True):
    if args.strategy is not None:
        return formats.parse_strategy(formats.load_document(args.strategy))
    if args.game is not None and args.game in CATALOG and CATALOG[args.game].strategy is not None:
        return CATALOG[args.game].strategy()
    if required:
        raise InputFormatError("A quantum strategy is required, the game %s has no canonical one"
                               % str(game.name))
    return None


def _value_fields(value):
    if isinstance(value, Fraction):
        return str(value), float(value)
    value = float(value)
    return repr(round(value, 12) + 0.0), value


def computation(name, method, value, tolerance, start=None, **extra):
    """A ComputationModel for one value"""
    text, number = _value_fields(value)
    model = ComputationModel(computation=name, method=method, value=text, value_float=number,
                             tolerance=float(tolerance), **extra)
    if start is not None:
        model["wall_time"] = time.time() - start
    return model


def _clock(args):
    return time.time() if args.timing else None


def _classical(args, game, config):
    start = _clock(args)
    value, witness = classical_value(game, config=config)
    return computation("classical", "enumeration", value, 0.0, start=start, label="omega_c",
                       witness={"parties": witness.to_labels(game.scenario)})


def _ns(args, game, config):
    start = _clock(args)
    value = ns_value(game, config=config)
    return computation("ns", "lp", value, config.LP_TOLERANCE, start=start, label="omega_ns")


def _npa(args, game, config):
    start = _clock(args)
    result = npa_bound(game, level=args.npa_level, basis=args.basis, config=config, tol=args.tol)
    problem = result.problem
    return computation("npa", "sdp", result.bound, args.tol or config.SDP_TOLERANCE, start=start,
                       label="npa_%i" % problem.level, converged=bool(result.converged),
                       residuals={"primal": float(result.primal_residual),
                                  "dual": float(result.dual_residual)},
                       details={"level": problem.level, "basis": problem.basis, "side": problem.side,
                                "optimum": float(result.value), "iterations": int(result.iterations)})


def _quantum(args, game, config, strategy=None, seesaw=False):
    start = _clock(args)
    if not seesaw:
        strategy.validate(game.scenario)
        value = winning_probability(game, strategy)
        behavior = strategy_behavior(strategy, game.scenario)
        return computation("quantum", "born-rule", value, BORN_RULE_TOLERANCE, start=start,
                           label="explicit", details={"signaling": float(signaling_violation(behavior))})
    if strategy is None:
        dims = [max(2, len(p.answers)) for p in game.scenario.parties]
        strategy = random_strategy(game.scenario, dims, seed=args.seed)
    result = seesaw_refine(game, strategy, config=config)
    return computation("quantum", "seesaw", result.value, config.SEESAW_TOLERANCE, start=start,
                       label="explicit", converged=bool(result.converged),
                       details={"iterations": int(result.iterations), "seed": args.seed,
                                "dims": list(result.strategy.state.party_dims)})


def _xor_sdp(args, game, config):
    start = _clock(args)
    try:
        value, result = xor_quantum_value(game, config=config)
    except UnsupportedScenarioError:
        return None
    return computation("quantum_xor", "sdp", value, config.SDP_TOLERANCE, start=start, label="omega_q",
                       converged=bool(result.converged),
                       residuals={"primal": float(result.primal_residual), "dual": float(result.dual_residual)})


def _label_quantum(computations):
    """omega_q is only used if the explicit value meets the relaxation bound"""
    explicit = [c for c in computations if c["computation"] == "quantum"]
    relaxed = [c for c in computations if c["computation"] == "npa"]
    if not explicit or not relaxed:
        return
    if abs(explicit[0]["value_float"] - relaxed[0]["value_float"]) <= QUANTUM_MATCH_TOLERANCE:
        explicit[0]["label"] = "omega_q"
        relaxed[0]["label"] = "omega_q"
    else:
        explicit[0]["label"] = "lower_bound"
        relaxed[0]["label"] = "upper_bound"


def _report(game, computations, notes=None):
    report = ValueReportModel(game=str(game.name) if game is not None else "none",
                              game_hash=formats.game_hash(game) if game is not None else "",
                              computations=computations)
    if notes:
        report["notes"] = notes
    return report


def _game_notes(args, game):
    notes = []
    graph = _load_graph(args)
    if graph is not None and (game.name or "").startswith("coloring"):
        if coloring_proviso(game, graph):
            notes.append("pi weights every self pair and ordered edge, value 1 iff colors >= chi")
        else:
            notes.append("pi misses a self pair or an edge, value 1 does not imply colors >= chi")
    return notes


def command_value(args, config):
    game = load_game(args)
    runner = {"classical": _classical, "ns": _ns, "npa": _npa}[args.kind]
    return _report(game, [runner(args, game, config)], _game_notes(args, game))


def command_eval(args, config):
    game = load_game(args)
    strategy = load_strategy(args, game, required=not args.seesaw)
    return _report(game, [_quantum(args, game, config, strategy=strategy, seesaw=args.seesaw)],
                   _game_notes(args, game))


def _behavior(args, game, scenario):
    if args.behavior is not None:
        return formats.parse_behavior(formats.load_document(args.behavior), scenario=scenario)
    if game is not None:
        strategy = load_strategy(args, game, required=False)
        if strategy is not None:
            strategy.validate(game.scenario)
            return strategy_behavior(strategy, game.scenario)
    raise InputFormatError("A behavior is required, use --behavior or --strategy with a game")


def command_bell(args, config):
    game = load_game(args, required=False)
    if args.functional is None:
        raise InputFormatError("bell eval requires --functional")
    scenario = game.scenario if game is not None else None
    f = formats.parse_functional(formats.load_document(args.functional), scenario=scenario, game=game)
    behavior = _behavior(args, game, f.scenario)
    computations = []
    start = _clock(args)
    details = {"functional": formats.functional_to_document(f)}
    if f.affine_to_game is not None:
        details["affine_to_game"] = {"offset": f.affine_to_game[0], "scale": f.affine_to_game[1]}
    computations.append(computation("bell", "evaluation", eval_functional(f, behavior), BORN_RULE_TOLERANCE,
                                    start=start, details=details))
    start = _clock(args)
    bound, witness = local_bound(f, config=config)
    computations.append(computation("bell_local_bound", "enumeration", float(bound), 0.0, start=start,
                                    witness={"parties": witness.to_labels(f.scenario)}))
    if args.npa_level is not None:
        start = _clock(args)
        result = npa_functional_bound(f, level=args.npa_level, basis=args.basis, config=config, tol=args.tol)
        computations.append(computation("bell_npa", "sdp", result.bound, args.tol or config.SDP_TOLERANCE,
                                        start=start, converged=bool(result.converged),
                                        label="npa_%i" % result.problem.level,
                                        residuals={"primal": float(result.primal_residual),
                                                   "dual": float(result.dual_residual)}))
    return _report(game, computations)


def _membership_model(result, scenario):
    if isinstance(result, InLocal):
        components = [{"weight": str(w) if isinstance(w, Fraction) else float(w),
                       "strategy": s.to_labels(scenario)} for w, s in result.model.components]
        return MembershipModel(local=True, components=components)
    return MembershipModel(local=False, functional=formats.functional_to_document(result.functional),
                           local_bound=float(result.local_bound),
                           behavior_value=float(result.behavior_value),
                           visibility=float(result.visibility))


def command_membership(args, config):
    game = load_game(args, required=False)
    behavior = _behavior(args, game, game.scenario if game is not None else None)
    start = _clock(args)
    result = local_membership(behavior, behavior.scenario, config=config)
    visibility = 1.0 if result.is_local else result.visibility
    model = _membership_model(result, behavior.scenario)
    return _report(game, [computation("membership", "lp", visibility, config.LP_TOLERANCE, start=start,
                                      label="visibility", details=model)])


def command_catalog(args, config):
    return [CatalogEntryModel(name=entry.name, description=entry.description,
                              parameters=list(entry.parameters),
                              canonical_strategy=entry.strategy is not None)
            for _, entry in sorted(CATALOG.items())]


def command_report(args, config):
    game = load_game(args)
    computations = [_classical(args, game, config)]
    strategy = load_strategy(args, game, required=False)
    computations.append(_quantum(args, game, config, strategy=strategy,
                                 seesaw=args.seesaw or strategy is None))
    xor = _xor_sdp(args, game, config)
    if xor is not None:
        computations.append(xor)
    computations.append(_npa(args, game, config))
    computations.append(_ns(args, game, config))
    _label_quantum(computations)
    return _report(game, computations, _game_notes(args, game))


def command_hardy(args, config):
    start = _clock(args)
    result = hardy_optimize(seed=args.seed, restarts=args.restarts, config=config)
    check = result.check
    return ValueReportModel(game="hardy", game_hash="", computations=[
        computation("hardy", "local-search", result.best_probability, float(check.max_residual), start=start,
                    details={"amplitudes": list(result.amplitudes),
                             "constraint_residuals": [float(r) for r in check.constraint_residuals],
                             "seed": args.seed})])


COMMANDS = {"value": command_value, "eval": command_eval, "bell": command_bell,
            "membership": command_membership, "catalog": command_catalog, "report": command_report,
            "hardy": command_hardy}


def _header(c):
    if c["computation"] == "npa":
        return "NPA-%i %s" % (c["details"]["level"], c.get("label", ""))
    if c["computation"] == "quantum":
        return "quantum %s (%s)" % (c.get("label", ""), c["method"])
    return c.get("label", c["computation"])


def _cell(c):
    if c["method"] == "enumeration" and "/" in c["value"]:
        return "%s (%.6f)" % (c["value"], c["value_float"])
    if c["method"] == "sdp":
        return "%.6f +- %g" % (c["value_float"], c["tolerance"])
    return "%.6f" % c["value_float"]


def render_table(report):
    """A human readable summary, one column per computation"""
    if isinstance(report, list):
        width = max(len(entry["name"]) for entry in report)
        return "\n".join("%s  %s" % (entry["name"].ljust(width), entry["description"]) for entry in report)
    computations = report["computations"]
    headers = [_header(c) for c in computations]
    cells = [_cell(c) for c in computations]
    widths = [max(len(h), len(v)) for h, v in zip(headers, cells)]
    lines = ["game: %s" % report["game"],
             " | ".join(h.ljust(w) for h, w in zip(headers, widths)),
             "-+-".join("-" * w for w in widths),
             " | ".join(v.ljust(w) for v, w in zip(cells, widths))]
    for note in report.get("notes", []):
        lines.append("note: %s" % note)
    return "\n".join(lines)


def _not_converged(report):
    if isinstance(report, list):
        return False
    return any(c.get("converged") is False for c in report["computations"])


def load_config(path=DEFAULT_CONFIG_PATH):
    config = Configuration()
    if os.path.exists(path) is True and os.path.isfile(path):
        config.read(path)
    return config


def run(argv, config=None, stdout=None, stderr=None):
    """Parse the arguments, run the command and print the report

    Returns:
        tuple: (exit code, report or None)

    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if config is None:
        config = load_config()
    log = MessageLogger(config=config, component="cli")

    try:
        args = create_parser().parse_args(argv)
    except UsageError as e:
        stderr.write("%s\n" % str(e))
        return EXIT_INPUT_ERROR, None

    try:
        report = COMMANDS[args.command](args, config)
    except SolverError as e:
        log.error(str(e), status=e.status)
        stderr.write("%s\n" % str(e))
        if e.status == "too_large":
            return EXIT_INPUT_ERROR, None
        return EXIT_NOT_CONVERGED, None
    except NonlocalCoreError as e:
        stderr.write("%s\n" % str(e))
        return EXIT_INPUT_ERROR, None

    report = round_floats(report)
    if args.output == "table":
        stdout.write(render_table(report) + "\n")
    else:
        stdout.write(to_json(report) + "\n")

    if _not_converged(report):
        log.warning("At least one solver did not converge")
        return EXIT_NOT_CONVERGED, report
    return EXIT_SUCCESS, report


def main():
    code, _ = run(sys.argv[1:])
    sys.exit(code)


if __name__ == "__main__":
    main()
