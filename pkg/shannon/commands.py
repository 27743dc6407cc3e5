from argparse import Namespace
from pathlib import Path
from typing import Any, Dict, List, Optional

from rich.console import Console
from rich.table import Table

from shannon.algebra.polynomial import evaluate, format_polynomial, parse_polynomial
from shannon.bounds.capacity import capacity_interval
from shannon.cache import AlphaCache
from shannon.config import Settings, init_user_config
from shannon.emitter import _EmitterCallable, emit
from shannon.errors import GraphFormatError, ParameterError, SizeError
from shannon.graphs.generators import generate
from shannon.graphs.graph import Graph, power
from shannon.graphs.graph6 import emit_graph6, parse_graph6
from shannon.report import ReportDocument, default_report_path, write_report
from shannon.solvers.alpha import AlphaSolver
from shannon.solvers.theta import theta
from shannon.verifier.suite import run_suite


def resolve_graph(text: str) -> Graph:
    """
    A graph argument is 'g6:<string>', a path to a graph6 file (first non-empty
    line is read), or a generator spec.
    """
    if text.startswith("g6:"):
        return parse_graph6(text[3:])
    path = Path(text).expanduser()
    if path.is_file():
        for line in path.read_text(encoding="ascii", errors="replace").splitlines():
            if line.strip():
                return parse_graph6(line.strip())
        raise GraphFormatError(f"No graph6 line in {path}", 0)
    return generate(text)


class CommandHandler:
    """Runs one subcommand against the layered settings; returns the exit code."""

    def __init__(self, settings: Settings, args: Namespace, emit_fn: _EmitterCallable = emit):
        self.settings = settings
        self.args = args
        self._emit = emit_fn
        self.console = Console()
        self.cache: Optional[AlphaCache] = None
        general = settings.general
        if general.cache_enabled and not getattr(args, "no_cache", False):
            self.cache = AlphaCache(general.cache_dir, emit_fn)

    @property
    def table_mode(self) -> bool:
        return self.settings.general.format == "table"

    def handle_command(self, name: str) -> int:
        self._emit(
            "debug_log",
            {"message": f"Running command: {name}", "location": "commands.CommandHandler.handle_command"},
        )
        handlers = {
            "init": self._handle_init,
            "gen": self._handle_gen,
            "alpha": self._handle_alpha,
            "theta": self._handle_theta,
            "capacity": self._handle_capacity,
            "eval": self._handle_eval,
            "verify": self._handle_verify,
        }
        handler = handlers.get(name)
        if handler is None:
            raise ParameterError(f"Unhandled command: {name}")
        return handler()

    # Helpers ---------------------------------------------------------------
    def _solver(self) -> AlphaSolver:
        budgets = self.settings.budgets
        return AlphaSolver(
            budgets.alpha_nodes,
            budgets.alpha_seconds,
            self.cache,
            self._emit,
            getattr(self.args, "verify_cache", False),
        )

    def _graph(self) -> Graph:
        g = resolve_graph(self.args.graph)
        k = getattr(self.args, "power", None)
        if k is not None and k != 1:
            size = g.n**k
            if size > self.settings.budgets.max_vertices:
                raise SizeError(size, self.settings.budgets.max_vertices)
            g = power(g, k)
        return g

    def _write_out(self, text: str):
        out = getattr(self.args, "out", None)
        if out:
            Path(out).expanduser().write_text(text + "\n", encoding="ascii")

    def _result(self, data: Dict[str, Any], title: str, rows: Optional[List[List[Any]]] = None):
        if not self.table_mode:
            self._emit("result", data)
            return
        table = Table(title=title)
        table.add_column("field")
        table.add_column("value")
        for key, value in rows if rows is not None else data.items():
            table.add_row(str(key), str(value))
        self.console.print(table)

    def _cache_stats(self) -> Optional[Dict[str, int]]:
        return dict(self.cache.stats) if self.cache is not None else None

    # Handlers --------------------------------------------------------------
    def _handle_init(self) -> int:
        path = init_user_config(getattr(self.args, "force", False))
        self._result({"command": "init", "path": str(path)}, "init")
        return 0

    def _handle_gen(self) -> int:
        g = resolve_graph(self.args.graph)
        text = emit_graph6(g)
        self._write_out(text)
        self._result(
            {"command": "gen", "graph": g.label(), "n": g.n, "edges": g.edge_count, "graph6": text},
            "gen",
        )
        return 0

    def _handle_alpha(self) -> int:
        g = self._graph()
        result = self._solver().solve(g)
        self._result(
            {
                "command": "alpha",
                "graph": g.label(),
                "n": g.n,
                "alpha": result.value,
                "witness": list(result.witness.vertices),
                "stats": result.stats,
                "cache": self._cache_stats(),
            },
            f"alpha({g.label()})",
        )
        return 0

    def _handle_theta(self) -> int:
        g = self._graph()
        budgets = self.settings.budgets
        result = theta(g, self.settings.capacity.tol, budgets.theta_max_vertices, budgets.theta_max_iters)
        self._result({"command": "theta", "graph": g.label(), "n": g.n, **result.to_dict()}, f"theta({g.label()})")
        return 0

    def _handle_capacity(self) -> int:
        g = self._graph()
        cap, budgets = self.settings.capacity, self.settings.budgets
        interval = capacity_interval(
            g,
            cap.kmax,
            cap.tol,
            self._solver(),
            budgets.max_vertices,
            budgets.theta_max_vertices,
            cap.rank_primes,
        )
        self._result(
            {"command": "capacity", "graph": g.label(), "kmax": cap.kmax, **interval.to_dict()},
            f"capacity({g.label()})",
            [
                ["lower", interval.lower],
                ["upper", interval.upper],
                ["width", interval.width],
                ["lower from", f"alpha(G^{interval.lower_provenance.get('k')}) = {interval.lower_provenance.get('alpha')}"],
                ["upper from", interval.upper_provenance.get("source")],
            ],
        )
        return 0

    def _handle_eval(self) -> int:
        graphs = [resolve_graph(text) for text in self.args.graphs]
        p = parse_polynomial(self.args.polynomial, len(graphs))
        g = evaluate(p, graphs, self.settings.budgets.max_vertices)
        text = emit_graph6(g)
        self._write_out(text)
        data: Dict[str, Any] = {
            "command": "eval",
            "polynomial": format_polynomial(p),
            "graphs": [h.label() for h in graphs],
            "n": g.n,
            "edges": g.edge_count,
        }
        if self.args.alpha:
            data["alpha"] = self._solver().value(g)
        if self.args.theta:
            budgets = self.settings.budgets
            data["theta"] = theta(
                g, self.settings.capacity.tol, budgets.theta_max_vertices, budgets.theta_max_iters
            ).to_dict()
        self._result(data, "eval")
        return 0

    def _handle_verify(self) -> int:
        report = run_suite(self.settings, self._solver(), self._emit)
        document = ReportDocument.from_verification(report, self.settings.to_dict(), self._cache_stats())
        target = self.args.report or default_report_path(self.settings.general.report_dir, report.seed)
        path = write_report(document, target)
        if self.table_mode:
            table = Table(title=f"verification (seed {report.seed})")
            for column in ("check", "lhs", "relation", "rhs", "status"):
                table.add_column(column)
            for r in report.results:
                table.add_row(r.check_id, str(r.lhs), r.relation, str(r.rhs), r.status.value)
            self.console.print(table)
        self._emit(
            "report",
            {
                "path": str(path),
                "counts_by_status": report.counts_by_status,
                "hard_failures": report.hard_failures,
                "exit_code": report.exit_code,
            },
        )
        return report.exit_code
