import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import tablib
from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from gadgets.services.clique import gen_clique
from gadgets.services.composition import cross_compose
from gadgets.services.multicolored import gen_multicolored_clique
from gadgets.services.sat3 import gen_sat3_layered
from graphs.exceptions import (
    GadgetConstructionError,
    ParameterTooLargeError,
    PathCapExceededError,
)
from graphs.serializers import InstanceSummarySerializer, VerifyReportSerializer
from graphs.services.formats import (
    parse_dimacs_cnf,
    parse_edge_list,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from graphs.services.verify import VerifyReport, verify_layering, verify_solution
from solvers.cli import EXIT_BUDGET, EXIT_NO, EXIT_USAGE
from solvers.serializers import SolveReportSerializer
from solvers.services.reports import ANSWER_NO, ANSWER_YES
from solvers.services.solve import ALGO_BRUTE, ALGO_CC, ALGO_CC_DET, ALGO_CHOICES, ALGO_GREEDY, solve, solve_max

logger = logging.getLogger(__name__)

GADGET_CLIQUE = "clique"
GADGET_MCC = "mcc"
GADGET_SAT3 = "sat3"
GADGET_CHOICES = [
    (GADGET_CLIQUE, "Clique gadget from a DIMACS edge list"),
    (GADGET_MCC, "Multicolored clique gadget from a DIMACS edge list (needs --colors)"),
    (GADGET_SAT3, "Layered 3-SAT gadget from a DIMACS CNF formula"),
]

INSTANCE_SUFFIX = ".mvdsp"
BENCH_ALGOS = [ALGO_GREEDY, ALGO_CC, ALGO_CC_DET, ALGO_BRUTE]
BENCH_HEADERS = ["instance", "algo", "size", "total_arcs", "millis"]


class Command(BaseCommand):
    help = "Solve, generate, compose, verify and benchmark MVDSP instances."
    requires_system_checks = []

    def add_arguments(self, parser):
        commands = parser.add_subparsers(dest="command", required=True)

        solve_parser = commands.add_parser("solve", help="Route terminal pairs along vertex-disjoint shortest paths")
        solve_parser.add_argument("file", help="Instance document")
        solve_parser.add_argument("--algo", choices=[name for name, _ in ALGO_CHOICES], default=ALGO_CC_DET)
        target = solve_parser.add_mutually_exclusive_group()
        target.add_argument("--p", type=int, dest="p", help="Target number of pairs (default: the instance header)")
        target.add_argument("--max", action="store_true", dest="maximize", help="Find the largest routable number of pairs")
        solve_parser.add_argument("--seed", type=int, default=0)
        solve_parser.add_argument("--max-iterations", type=int, dest="max_iterations")
        solve_parser.add_argument("--max-ell", type=int, dest="max_ell")
        solve_parser.add_argument("--path-cap", type=int, dest="path_cap")
        solve_parser.add_argument("--json", action="store_true", dest="as_json", help="Print the report as JSON")

        generate_parser = commands.add_parser("generate", help="Build a gadget instance")
        generate_parser.add_argument("gadget", choices=[name for name, _ in GADGET_CHOICES])
        generate_parser.add_argument("input", help="DIMACS edge list or CNF formula")
        generate_parser.add_argument("-o", "--output", required=True)
        generate_parser.add_argument("--colors", type=int, help="Number of color classes (mcc only)")
        generate_parser.add_argument("--p", type=int, dest="p", help="Target written to the header (default: all pairs)")

        compose_parser = commands.add_parser("compose", help="OR-compose layered instances")
        compose_parser.add_argument("files", nargs="+")
        compose_parser.add_argument("-o", "--output", required=True)

        verify_parser = commands.add_parser("verify", help="Check a solution against an instance")
        verify_parser.add_argument("instance")
        verify_parser.add_argument("solution")
        verify_parser.add_argument("--layered", action="store_true", help="Also check the instance layering")
        verify_parser.add_argument("--json", action="store_true", dest="as_json")

        bench_parser = commands.add_parser("bench", help="Run every algorithm over a directory of instances")
        bench_parser.add_argument("directory")
        bench_parser.add_argument("-o", "--output", help="CSV destination (default: stdout)")
        bench_parser.add_argument("--workers", type=int)
        bench_parser.add_argument("--seed", type=int, default=0)

    def handle(self, *args, **options):
        handler = getattr(self, f"handle_{options['command']}")
        try:
            handler(options)
        except (ParameterTooLargeError, PathCapExceededError) as exc:
            raise CommandError(exc.messages[0], returncode=EXIT_BUDGET)
        except GadgetConstructionError as exc:
            raise CommandError(exc.messages[0], returncode=EXIT_NO)
        except ValidationError as exc:
            raise CommandError(exc.messages[0], returncode=EXIT_USAGE)
        except OSError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)

    def _read(self, name: str) -> str:
        return Path(name).read_text()

    def _write(self, name: str, text: str) -> None:
        Path(name).write_text(text)
        self.stderr.write(f"Wrote {name}")

    def handle_solve(self, options):
        instance = parse_instance(self._read(options["file"]))
        if options["p"] is not None:
            if not 0 <= options["p"] <= instance.k:
                raise CommandError(f"--p must lie in 0..{instance.k}", returncode=EXIT_USAGE)
            instance = instance.with_p(options["p"])

        algo = options["algo"]
        runner = solve_max if options["maximize"] else solve
        started = time.perf_counter()
        report = runner(
            instance,
            algo,
            seed=options["seed"],
            max_ell=options["max_ell"],
            max_iterations=options["max_iterations"],
            path_cap=options["path_cap"],
        )
        millis = (time.perf_counter() - started) * 1000
        logger.debug(f"{algo} finished in {millis:.1f} ms")

        if options["as_json"]:
            self.stdout.write(json.dumps(SolveReportSerializer(report).data, indent=2))
        else:
            self.stdout.write(serialize_solution(report.solution))
        self.stderr.write(
            f"{algo}: answer={report.answer} size={report.size} total_arcs={report.solution.total_arcs} "
            f"optimal={report.optimal} ell_used={report.ell_used} iterations={report.iterations}"
        )

        if options["maximize"]:
            if report.budget_exhausted:
                raise CommandError("iteration or ell budget exhausted before the maximum was settled", returncode=EXIT_BUDGET)
            return
        if report.answer == ANSWER_YES:
            return
        if report.budget_exhausted:
            raise CommandError(f"no solution of size {instance.p} found within the budget", returncode=EXIT_BUDGET)
        reason = "no solution" if report.answer == ANSWER_NO else "no solution found"
        raise CommandError(f"{reason} of size {instance.p}", returncode=EXIT_NO)

    def handle_generate(self, options):
        gadget = options["gadget"]
        text = self._read(options["input"])
        if gadget == GADGET_SAT3:
            generated = gen_sat3_layered(parse_dimacs_cnf(text))
        elif gadget == GADGET_CLIQUE:
            generated = gen_clique(parse_edge_list(text), p=options["p"])
        else:
            graph = parse_edge_list(text)
            colors = options["colors"]
            if not colors or colors < 1:
                raise CommandError("mcc needs --colors K", returncode=EXIT_USAGE)
            if graph.number_of_nodes() % colors:
                raise CommandError(
                    f"{graph.number_of_nodes()} vertices do not split into {colors} equal color classes",
                    returncode=EXIT_USAGE,
                )
            generated = gen_multicolored_clique(graph, colors, graph.number_of_nodes() // colors, p=options["p"])

        instance = generated.instance
        if gadget == GADGET_SAT3 and options["p"] is not None:
            instance = instance.with_p(options["p"])
        self._write(options["output"], serialize_instance(instance))
        self.stderr.write(f"{generated.provenance}: {generated.claim}")
        self.stdout.write(json.dumps(InstanceSummarySerializer(instance).data))

    def handle_compose(self, options):
        instances = [parse_instance(self._read(name)) for name in options["files"]]
        composed = cross_compose(instances)
        self._write(options["output"], serialize_instance(composed.instance))
        self.stderr.write(
            f"Composed {len(instances)} instance(s) in {composed.metadata['rounds']} round(s), "
            f"ell = {composed.metadata['ell']}"
        )
        self.stdout.write(json.dumps(InstanceSummarySerializer(composed.instance).data))

    def handle_verify(self, options):
        instance = parse_instance(self._read(options["instance"]))
        solution = parse_solution(self._read(options["solution"]))
        report = verify_solution(instance, solution)
        if options["layered"]:
            report = VerifyReport(
                report.violations + verify_layering(instance).violations,
                report.size,
                report.total_arcs,
            )

        if options["as_json"]:
            self.stdout.write(json.dumps(VerifyReportSerializer(report).data, indent=2))
        else:
            state = "feasible" if report.feasible else "infeasible"
            self.stdout.write(f"{state} size={report.size} total_arcs={report.total_arcs}")
            for violation in report.violations:
                self.stderr.write(f"{violation.kind}: {violation.detail}")
        if not report.feasible:
            raise CommandError(f"{len(report.violations)} violation(s)", returncode=EXIT_NO)

    def handle_bench(self, options):
        directory = Path(options["directory"])
        if not directory.is_dir():
            raise CommandError(f"{directory} is not a directory", returncode=EXIT_USAGE)
        files = sorted(directory.glob(f"*{INSTANCE_SUFFIX}"))
        if not files:
            raise CommandError(f"no *{INSTANCE_SUFFIX} files in {directory}", returncode=EXIT_USAGE)
        workers = options["workers"] or getattr(settings, "MVDSP_BENCH_WORKERS", 4)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda path: self._bench_one(path, options["seed"]), files))

        dataset = tablib.Dataset(headers=BENCH_HEADERS)
        for rows in results:
            for row in rows:
                dataset.append(row)
        csv = dataset.export("csv")
        if options["output"]:
            self._write(options["output"], csv)
        else:
            self.stdout.write(csv, ending="")
        self.stderr.write(f"Benchmarked {len(files)} instance(s) with {len(BENCH_ALGOS)} algorithms")

    def _bench_one(self, path: Path, seed: int) -> list:
        instance = parse_instance(path.read_text())
        rows = []
        for algo in BENCH_ALGOS:
            started = time.perf_counter()
            try:
                report = solve_max(instance, algo, seed=seed)
            except (ParameterTooLargeError, PathCapExceededError) as exc:
                logger.warning(f"{path.name}: {algo} gave up: {exc.messages[0]}")
                rows.append((path.name, algo, "", "", round((time.perf_counter() - started) * 1000)))
                continue
            millis = round((time.perf_counter() - started) * 1000)
            rows.append((path.name, algo, report.size, report.solution.total_arcs, millis))
        return rows
