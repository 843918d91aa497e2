"""
Scarpis CLI: generate, verify and inspect Hadamard matrices.

Exit codes: 0 success (or Hadamard), 1 not Hadamard, 2 usage, I/O or
format error.
"""
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, Optional

import typer
from rich.markup import escape

from scarpis import __version__
from scarpis.cli.console import configure_logging, console, err_console
from scarpis.config.models import MatrixFormat, ScarpisConfig, load_config
from scarpis.construction.extend import (
    ConstructionParams,
    extended_order,
    scarpis_extend,
)
from scarpis.construction.labeling import (
    Labeling,
    default_labeling,
    shuffled_labeling,
)
from scarpis.construction.paley import paley_hadamard
from scarpis.errors import ConfigError, NotHadamardError, ScarpisError
from scarpis.field.gf import FieldSpec, field_from_descriptor, format_polynomial
from scarpis.matrix.sign import SignMatrix, core, sylvester_hadamard
from scarpis.matrix.verify import check_core_invariants, check_hadamard
from scarpis.storage.formats import (
    Provenance,
    load_matrix,
    matrix_digest,
    render_text,
    save_matrix,
)

EXIT_OK = 0
EXIT_NOT_HADAMARD = 1
EXIT_ERROR = 2

app = typer.Typer(help="Build and verify Hadamard matrices.", no_args_is_help=True)
generate_app = typer.Typer(help="Generate Hadamard matrices.", no_args_is_help=True)
app.add_typer(generate_app, name="generate")


def _fail(message: str, code: int) -> typer.Exit:
    err_console.print(f"[red]Error:[/red] {escape(message)}")
    return typer.Exit(code=code)


@contextmanager
def _cli_errors() -> Iterator[None]:
    """Map library exceptions onto the exit-code contract."""
    try:
        yield
    except NotHadamardError as e:
        raise _fail(str(e), EXIT_NOT_HADAMARD) from e
    except (ScarpisError, OSError) as e:
        raise _fail(str(e), EXIT_ERROR) from e


def _config(ctx: typer.Context) -> ScarpisConfig:
    return ctx.obj if isinstance(ctx.obj, ScarpisConfig) else ScarpisConfig()


@app.callback()
def main(
    ctx: typer.Context,
    config: Optional[Path] = typer.Option(
        None, "--config", help="YAML configuration file."
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging."),
) -> None:
    """Build and verify Hadamard matrices."""
    configure_logging(verbose)
    try:
        ctx.obj = load_config(config)
    except (FileNotFoundError, ConfigError) as e:
        raise _fail(str(e), EXIT_ERROR) from e


def _provenance(
    command: str,
    order: int,
    cfg: ScarpisConfig,
    no_timestamp: bool,
    spec: Optional[FieldSpec] = None,
    **extra: Optional[str],
) -> Provenance:
    stamped = cfg.output.timestamp and not no_timestamp
    return Provenance(
        generator=f"scarpis {__version__} {command}",
        field=str(spec) if spec else None,
        q=spec.q if spec else None,
        modulus=format_polynomial(spec) if spec else None,
        order=order,
        created_at=datetime.now(timezone.utc) if stamped else None,
        **extra,
    )


def _emit(
    matrix: SignMatrix,
    cfg: ScarpisConfig,
    provenance: Provenance,
    fmt: Optional[MatrixFormat],
    output: Optional[Path],
) -> None:
    """Re-verify, then write to output or stdout."""
    report = check_hadamard(
        matrix, workers=cfg.verify.workers, chunk_rows=cfg.verify.chunk_rows
    )
    if not report.is_hadamard:
        raise _fail(
            f"Refusing to write: output of order {report.order} failed verification, "
            f"{report.first_violation}",
            EXIT_NOT_HADAMARD,
        )
    fmt = fmt or cfg.output.format
    comments = provenance.comment_lines()
    if output is None:
        typer.echo(render_text(matrix, fmt, comments), nl=False)
    else:
        save_matrix(output, matrix, fmt, comments)
        err_console.print(f"Wrote verified order {matrix.rows} matrix to {output}")


FORMAT_OPTION = typer.Option(None, "--format", help="Output format: pm or int.")
OUTPUT_OPTION = typer.Option(None, "--output", "-o", help="Write to FILE instead of stdout.")
NO_TIMESTAMP_OPTION = typer.Option(
    False, "--no-timestamp", help="Omit the timestamp comment (reproducible output)."
)


@generate_app.command("paley")
def generate_paley(
    ctx: typer.Context,
    q: str = typer.Argument(..., help="Field order as 'p' or 'p^k', q = 3 mod 4."),
    output: Optional[Path] = OUTPUT_OPTION,
    fmt: Optional[MatrixFormat] = FORMAT_OPTION,
    no_timestamp: bool = NO_TIMESTAMP_OPTION,
) -> None:
    """Paley Type I Hadamard matrix of order q + 1."""
    cfg = _config(ctx)
    with _cli_errors():
        spec = field_from_descriptor(q, max_order=cfg.field.max_order)
        matrix = paley_hadamard(spec, max_order=cfg.matrix.max_order)
        provenance = _provenance("generate paley", matrix.rows, cfg, no_timestamp, spec)
        _emit(matrix, cfg, provenance, fmt, output)


@generate_app.command("scarpis")
def generate_scarpis(
    ctx: typer.Context,
    q: str = typer.Argument(..., help="Field order as 'p' or 'p^k', q = 3 mod 4."),
    input_path: Optional[Path] = typer.Option(
        None, "--input", help="Hadamard matrix of order q + 1 (default: Paley)."
    ),
    alpha_seed: Optional[int] = typer.Option(
        None, "--alpha-seed", help="Seed for a shuffled labeling (default: canonical)."
    ),
    output: Optional[Path] = OUTPUT_OPTION,
    fmt: Optional[MatrixFormat] = FORMAT_OPTION,
    no_timestamp: bool = NO_TIMESTAMP_OPTION,
) -> None:
    """Extend a Hadamard matrix of order q + 1 to order q(q + 1)."""
    cfg = _config(ctx)
    with _cli_errors():
        spec = field_from_descriptor(q, max_order=cfg.field.max_order)
        labeling: Labeling
        if alpha_seed is None:
            labeling = default_labeling(spec)
            labeling_note = "canonical"
        else:
            labeling = shuffled_labeling(spec, alpha_seed)
            indices = ",".join(str(t) for t in labeling.element_indices())
            labeling_note = f"seed={alpha_seed} indices={indices}"
        params = ConstructionParams.for_field(spec, labeling)
        extended_order(params, max_order=cfg.matrix.max_order)

        if input_path is None:
            source = paley_hadamard(spec, max_order=cfg.matrix.max_order)
            input_note = "paley"
        else:
            source = load_matrix(input_path)
            input_note = input_path.name

        result = scarpis_extend(
            source, params, workers=cfg.verify.workers, max_order=cfg.matrix.max_order
        )
        provenance = _provenance(
            "generate scarpis",
            result.rows,
            cfg,
            no_timestamp,
            spec,
            labeling=labeling_note,
            input_sha256=f"{matrix_digest(source)} ({input_note})",
        )
        _emit(result, cfg, provenance, fmt, output)


@generate_app.command("sylvester")
def generate_sylvester(
    ctx: typer.Context,
    order: int = typer.Argument(..., help="Matrix order, a power of two."),
    output: Optional[Path] = OUTPUT_OPTION,
    fmt: Optional[MatrixFormat] = FORMAT_OPTION,
    no_timestamp: bool = NO_TIMESTAMP_OPTION,
) -> None:
    """Sylvester Hadamard matrix by Kronecker doubling."""
    cfg = _config(ctx)
    with _cli_errors():
        matrix = sylvester_hadamard(order, max_order=cfg.matrix.max_order)
        provenance = _provenance("generate sylvester", matrix.rows, cfg, no_timestamp)
        _emit(matrix, cfg, provenance, fmt, output)


@app.command()
def verify(
    ctx: typer.Context,
    path: Path = typer.Argument(..., help="Matrix file (pm or int format)."),
    workers: Optional[int] = typer.Option(
        None, "--workers", min=1, help="Threads for the Gram check."
    ),
) -> None:
    """Exactly check H H^T = m I."""
    cfg = _config(ctx)
    with _cli_errors():
        matrix = load_matrix(path)
    if not matrix.is_square:
        console.print(f"shape {matrix.rows}x{matrix.cols}: not Hadamard (not square)")
        raise typer.Exit(code=EXIT_NOT_HADAMARD)
    report = check_hadamard(
        matrix,
        workers=workers or cfg.verify.workers,
        chunk_rows=cfg.verify.chunk_rows,
    )
    if report.is_hadamard:
        console.print(f"order {report.order}: Hadamard")
        return
    console.print(f"order {report.order}: not Hadamard")
    console.print(f"first violation: {report.first_violation}")
    raise typer.Exit(code=EXIT_NOT_HADAMARD)


@app.command()
def info(
    ctx: typer.Context,
    path: Path = typer.Argument(..., help="Matrix file (pm or int format)."),
) -> None:
    """Describe a matrix file: order, normalization, core row sums."""
    cfg = _config(ctx)
    with _cli_errors():
        matrix = load_matrix(path)
    if not matrix.is_square:
        console.print(f"shape {matrix.rows}x{matrix.cols} (not square)")
        return
    console.print(f"order {matrix.rows}")
    normalized = matrix.is_normalized()
    console.print(f"normalized: {'yes' if normalized else 'no'}")
    report = check_hadamard(
        matrix, workers=cfg.verify.workers, chunk_rows=cfg.verify.chunk_rows
    )
    console.print(f"hadamard: {'yes' if report.is_hadamard else 'no'}")
    if normalized and report.is_hadamard and matrix.rows > 1:
        core_report = check_core_invariants(core(matrix))
        if core_report.passed:
            console.print("core: every row and column sums to -1")
        else:
            console.print(
                f"core: {len(core_report.bad_row_sums)} rows and "
                f"{len(core_report.bad_col_sums)} columns do not sum to -1"
            )


@app.command()
def version() -> None:
    """Print the version of the Scarpis CLI."""
    typer.echo(f"scarpis-hadamard v{__version__}")


if __name__ == "__main__":
    app()
