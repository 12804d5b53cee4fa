import functools
import io
import sys
from typing import Optional

import click
import pandas as pd

from graph_core.edge_list import format_edge_list, graph_to_json
from kernel import Kernel, corpus_graphs, load_graph, load_partition
from triangulation.partition import format_partition, partition_to_json
from util.config import RunConfig, load_run_config, max_dim_from_env
from util.errors import (GeneratorError, GraphFormatError, NotTriangulableError, NumericalError, OracleError,
                         PartitionFormatError, PartitionInvalidError, SearchBudgetExceeded, TriwalkError)
from util.serialize import FLOAT_FORMAT, dumps
from util.types import ExitCode, OutputFormat

FORMATS = [f.value for f in OutputFormat]


def exit_code_for(exc: Exception) -> ExitCode:
    if isinstance(exc, NotTriangulableError):
        return ExitCode.NOT_TRIANGULABLE
    if isinstance(exc, (PartitionInvalidError, PartitionFormatError)):
        return ExitCode.VERIFICATION
    if isinstance(exc, (NumericalError, SearchBudgetExceeded)):
        return ExitCode.NUMERICAL
    if isinstance(exc, (GeneratorError, GraphFormatError, OracleError, TriwalkError)):
        return ExitCode.USAGE
    return ExitCode.NUMERICAL


class TriwalkGroup(click.Group):
    """ Maps usage errors and library errors onto the documented exit codes """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            code = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
            code = int(code) if code is not None else int(ExitCode.OK)
        except click.ClickException as e:
            e.show()
            code = int(ExitCode.USAGE)
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            code = int(ExitCode.USAGE)
        except TriwalkError as e:
            click.echo(f"error: {e}", err=True)
            code = int(exit_code_for(e))
        except OSError as e:
            click.echo(f"error: {e}", err=True)
            code = int(ExitCode.USAGE)
        except Exception as e:
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            code = int(exit_code_for(e))
        if standalone_mode:
            sys.exit(code)
        return code


def common_options(f):
    """ Tolerance, output and logging flags shared by every command """
    options = [
        click.option("--tol", type=float, default=None, help="pairing and residual tolerance"),
        click.option("--cluster-tol", type=float, default=None, help="eigenvalue clustering tolerance"),
        click.option("--rank-tol", type=float, default=None, help="relative singular value threshold"),
        click.option("--format", "fmt", type=click.Choice(FORMATS), default=None),
        click.option("--out", type=click.Path(dir_okay=False), default=None, help="write output here instead of stdout"),
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
                     help="YAML run configuration"),
        click.option("--log", "log_name", default=None, help="log file name under logs/"),
    ]
    for option in reversed(options):
        f = option(f)

    @functools.wraps(f)
    def wrapper(tol, cluster_tol, rank_tol, fmt, out, config_path, log_name, **kwargs):
        run = load_run_config(config_path) if config_path else RunConfig()
        tolerances = run.tolerances.with_overrides(pairing_tol=tol, residual_tol=tol,
                                                   cluster_tol=cluster_tol, rank_tol=rank_tol)
        tolerances = tolerances.with_overrides(max_dim=max_dim_from_env(tolerances.max_dim))
        run.output_format = fmt or run.output_format
        run.out = out or run.out
        run.log = log_name or run.log
        run.tolerances = tolerances
        kernel = Kernel(run.log, tolerances)
        return f(kernel=kernel, run=run, **kwargs)

    return wrapper


def _format(run: RunConfig, default: OutputFormat) -> OutputFormat:
    return OutputFormat(run.output_format) if run.output_format else default


def _emit(run: RunConfig, text: str):
    if run.out:
        with open(run.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


def _frame_csv(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def _resolve(kernel: Kernel, graph_path: str, partition_path: Optional[str], limit: Optional[int]):
    """ (graph, partition); NotTriangulableError when no partition exists """
    g = load_graph(graph_path)
    pi = load_partition(partition_path, g) if partition_path else None
    return g, kernel.require_partition(g, pi, limit)


@click.group(cls=TriwalkGroup)
def cli():
    """ Moving-shift quantum walks on triangulable graphs """


@cli.command()
@click.argument("family")
@common_options
def gen(kernel: Kernel, run: RunConfig, family: str):
    """ Write the edge list of k4, complete:n, cycle:n, double-cone:n, path:n or star:k """
    g = kernel.gen(family)
    if _format(run, OutputFormat.TEXT) == OutputFormat.JSON:
        _emit(run, dumps(graph_to_json(g)))
    else:
        _emit(run, format_edge_list(g))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--limit", type=int, default=None, help="search budget in node expansions")
@common_options
def triangulate(kernel: Kernel, run: RunConfig, graph: str, limit: Optional[int]):
    """ Find a partition of the arcs into directed triangles """
    g = load_graph(graph)
    pi = kernel.triangulate(g, limit if limit is not None else run.limit)
    if not pi:
        click.echo(pi.message, err=True)
        click.get_current_context().exit(int(ExitCode.NOT_TRIANGULABLE))
    if _format(run, OutputFormat.TEXT) == OutputFormat.JSON:
        _emit(run, dumps(partition_to_json(pi)))
    else:
        _emit(run, format_partition(pi))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("partition", type=click.Path(exists=True, dir_okay=False), required=False)
@click.option("--limit", type=int, default=None)
@click.option("--conventional", is_flag=True, help="check the Grover walk U instead of U_c")
@common_options
def verify(kernel: Kernel, run: RunConfig, graph: str, partition: Optional[str], limit: Optional[int],
           conventional: bool):
    """ Compare the computed spectrum of U_c with the one predicted from T; exit 0 iff they match """
    if conventional:
        report = kernel.verify_conventional(load_graph(graph))
    else:
        g, pi = _resolve(kernel, graph, partition, limit if limit is not None else run.limit)
        report = kernel.verify(g, pi)
    if _format(run, OutputFormat.JSON) == OutputFormat.TEXT:
        _emit(run, f"{report}\n")
    else:
        _emit(run, dumps(report.to_json()))
    if not report.matched:
        click.get_current_context().exit(int(ExitCode.VERIFICATION))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("partition", type=click.Path(exists=True, dir_okay=False), required=False)
@click.option("--op", type=click.Choice(["T", "U", "U_c"]), default="T")
@click.option("--limit", type=int, default=None)
@common_options
def spectrum(kernel: Kernel, run: RunConfig, graph: str, partition: Optional[str], op: str, limit: Optional[int]):
    """ Sorted eigenvalues of T, U or U_c """
    if op == "U_c":
        g, pi = _resolve(kernel, graph, partition, limit if limit is not None else run.limit)
    else:
        g, pi = load_graph(graph), None
    values = kernel.spectrum(g, op, pi)
    fmt = _format(run, OutputFormat.JSON)
    if fmt == OutputFormat.JSON:
        _emit(run, dumps({"op": op, "eigenvalues": values}))
    elif fmt == OutputFormat.CSV:
        frame = pd.DataFrame({"re": values.real, "im": values.imag}) if op != "T" else pd.DataFrame({"value": values})
        _emit(run, _frame_csv(frame))
    elif op == "T":
        _emit(run, "".join(f"{float(v)!r}\n" for v in values))
    else:
        _emit(run, "".join(f"{float(v.real)!r} {float(v.imag)!r}\n" for v in values))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("partition", type=click.Path(exists=True, dir_okay=False), required=False)
@click.option("--steps", type=int, default=None)
@click.option("--start-arc", default=None, help='arc "u v" holding all initial amplitude')
@click.option("--start-vertex", type=int, default=None, help="spread the start over the arcs into this vertex")
@click.option("--stride", type=int, default=None, help="record every s-th step")
@click.option("--walk", type=click.Choice(["U_c", "U"]), default="U_c")
@click.option("--limit", type=int, default=None)
@common_options
def simulate(kernel: Kernel, run: RunConfig, graph: str, partition: Optional[str], steps: Optional[int],
             start_arc: Optional[str], start_vertex: Optional[int], stride: Optional[int], walk: str,
             limit: Optional[int]):
    """ Vertex distributions of the walk, one CSV row per recorded step """
    if walk == "U_c":
        g, pi = _resolve(kernel, graph, partition, limit if limit is not None else run.limit)
    else:
        g, pi = load_graph(graph), None
    frame = kernel.simulate(g, pi, steps if steps is not None else run.steps, start_arc, start_vertex,
                            stride if stride is not None else run.stride, walk)
    if _format(run, OutputFormat.CSV) == OutputFormat.JSON:
        _emit(run, dumps(frame.to_dict(orient="records")))
    else:
        _emit(run, _frame_csv(frame))


@cli.command()
@click.argument("family", type=click.Choice(["double-cone"]))
@click.argument("n", type=int)
@click.option("--what", type=click.Choice(["T-spectrum", "T-eigenvectors", "birth-vectors", "b"]), default="T-spectrum")
@click.option("--k", "k", type=click.IntRange(0, 2), default=None, help="birth eigenvalue -omega^k")
@common_options
def oracle(kernel: Kernel, run: RunConfig, family: str, n: int, what: str, k: Optional[int]):
    """ Closed-form spectra and eigenvectors of the double cone """
    payload = kernel.oracle(n, what, k)
    if what == "T-spectrum" and _format(run, OutputFormat.JSON) == OutputFormat.TEXT:
        _emit(run, "".join(f"{float(v)!r}\n" for v in payload["T_spectrum"]))
    else:
        _emit(run, dumps(payload))


@cli.command()
@click.option("--n-min", type=int, default=3)
@click.option("--n-max", type=int, default=8)
@click.option("--no-k4", is_flag=True)
@click.option("--jobs", type=int, default=1, help="joblib worker count")
@click.option("--limit", type=int, default=None)
@click.option("--quiet", is_flag=True, help="no progress bar")
@common_options
def corpus(kernel: Kernel, run: RunConfig, n_min: int, n_max: int, no_k4: bool, jobs: int,
           limit: Optional[int], quiet: bool):
    """ Verify K4 and the double cones n_min..n_max """
    specs = corpus_graphs(n_min, n_max, include_k4=not no_k4)
    frame = kernel.corpus(specs, jobs, limit if limit is not None else run.limit, progress=not quiet)
    if _format(run, OutputFormat.JSON) == OutputFormat.CSV:
        _emit(run, _frame_csv(frame))
    else:
        _emit(run, dumps(frame.to_dict(orient="records")))
    if not bool(frame["matched"].all()):
        click.get_current_context().exit(int(ExitCode.VERIFICATION))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("partition", type=click.Path(exists=True, dir_okay=False), required=False)
@click.option("--name", default="U_c", help="d, S, S_c, U, U_c, T, T1, T2, R, A, D, L, Ttilde or Bmat")
@click.option("--limit", type=int, default=None)
@common_options
def dump(kernel: Kernel, run: RunConfig, graph: str, partition: Optional[str], name: str, limit: Optional[int]):
    """ Write one operator matrix in canonical arc order """
    g, pi = _resolve(kernel, graph, partition, limit if limit is not None else run.limit)
    fmt = _format(run, OutputFormat.CSV)
    if fmt == OutputFormat.JSON:
        _emit(run, dumps(kernel.dump(g, pi, name, OutputFormat.JSON)))
    else:
        _emit(run, kernel.dump(g, pi, name, OutputFormat.CSV))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("partition", type=click.Path(exists=True, dir_okay=False), required=False)
@click.option("--limit", type=int, default=None)
@common_options
def identities(kernel: Kernel, run: RunConfig, graph: str, partition: Optional[str], limit: Optional[int]):
    """ Error of every operator identity; exit 3 if one exceeds the identity tolerance """
    g, pi = _resolve(kernel, graph, partition, limit if limit is not None else run.limit)
    errors = kernel.identities(g, pi)
    _emit(run, dumps(errors))
    if max(errors.values()) > kernel.tolerances.identity_tol:
        click.get_current_context().exit(int(ExitCode.VERIFICATION))


@cli.command()
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("partition", type=click.Path(exists=True, dir_okay=False), required=False)
@click.option("--limit", type=int, default=None)
@common_options
def ledger(kernel: Kernel, run: RunConfig, graph: str, partition: Optional[str], limit: Optional[int]):
    """ Kernel and eigenspace dimensions next to their closed forms """
    g, pi = _resolve(kernel, graph, partition, limit if limit is not None else run.limit)
    entries = kernel.ledger(g, pi)
    _emit(run, dumps(entries))
    if any(e["computed"] != e["expected"] for e in entries.values()):
        click.get_current_context().exit(int(ExitCode.VERIFICATION))


def main(argv=None) -> int:
    return cli.main(args=argv, prog_name="triwalk", standalone_mode=False)


if __name__ == "__main__":
    sys.exit(main())
