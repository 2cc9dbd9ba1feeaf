#!/usr/bin/env python3
"""
conjtensor - Conjugate complex polynomials and their symmetric tensors

Command-line interface over the conjtensor library: parse and certify
conjugate polynomials, convert between forms and structured tensors,
decompose conjugate partial-symmetric tensors, compute C-/G-/Q-eigenpairs,
compare single-vector and multilinear maxima, and run the rank-one and radar
applications.

Usage:
    python cli.py parse poly.txt                  # Canonical text + term list
    python cli.py convert poly.txt --mode S-inv   # Polynomial -> tensor document
    python cli.py eig tensor.json --kind C        # C-eigenpairs
    python cli.py banach tensor.json --check cps   # Single-vector vs multilinear maxima
    python cli.py radar scenario.yaml --csv amb.csv
    python cli.py help                            # Show usage guide

JSON goes to stdout (or --output); diagnostics go to stderr.
Exit codes: 0 success, 2 invalid input, 3 no convergence, 1 failed verification.
"""

import functools
import logging
import time
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from src.apps import coupled_sphere_ascent, rank_one_als, rank_one_via_geig, solve_radar
from src.banach import (
    check_cps_banach,
    check_css_banach,
    check_symmetric_complex_banach,
    hermitian_banach,
    sandwich_check,
)
from src.bijection import (
    complex_form_of,
    cps_decompose,
    css_project,
    embed_cps_to_css,
    g_forward,
    g_inverse,
    is_flattening_psd,
    s_forward,
    s_inverse,
    sos_split,
    symmetric_tensor_of,
)
from src.core.config import settings
from src.core.exceptions import (
    ArgumentError,
    ConvergenceError,
    DimensionError,
    DocumentError,
    InternalError,
    ParseError,
    RelationError,
    StructureError,
)
from src.core.models import RunManifest, SolverConfig
from src.eigen import check_c_g_relation, check_q_c_relation, solver_registry
from src.forms import check_real_valued, classify_form, print_poly
from src.io import (
    load_polynomial,
    load_scenario,
    load_tensor,
    render_json,
    to_jsonable,
    write_ambiguity_csv,
    write_text,
)

# Diagnostics on stderr, payloads on stdout
console = Console(stderr=True)
screen = Console()

# Main app
app = typer.Typer(
    name="conjtensor",
    help="Conjugate complex polynomials, structured tensors and their eigenvalues",
    rich_markup_mode="rich",
    no_args_is_help=True,
    add_completion=False
)

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper()),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.FileHandler(settings.log_file) if settings.log_file else logging.NullHandler(),
        logging.StreamHandler()
    ]
)
logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_NO_CONVERGENCE = 3

INVALID_INPUT = (
    DocumentError, ValidationError, ParseError, DimensionError, ArgumentError, StructureError,
)


class ConvertMode(str, Enum):
    S = "S"
    S_INV = "S-inv"
    G = "G"
    G_INV = "G-inv"
    EMBED_CSS = "embed-css"
    COMPLEX = "complex"
    COMPLEX_INV = "complex-inv"
    CSS_PROJECT = "css-project"


class BanachCheck(str, Enum):
    CSS = "css"
    CPS = "cps"
    HERMITIAN = "hermitian"
    SYMMETRIC = "symmetric"
    SANDWICH = "sandwich"


class RankOneMethod(str, Enum):
    ALS = "als"
    GEIG = "geig"
    COUPLED = "coupled"


class Relation(str, Enum):
    Q_C = "q-c"
    C_G = "c-g"


def exit_codes(func):
    """Map library errors onto the documented exit codes"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except typer.Exit:
            raise
        except INVALID_INPUT as e:
            console.print(f"[red]Invalid input: {escape(str(e))}[/red]")
            raise typer.Exit(EXIT_INVALID)
        except ConvergenceError as e:
            console.print(f"[yellow]No convergence: {escape(str(e))}[/yellow]")
            console.print("[dim]💡 Try more --starts or a looser --tol[/dim]")
            raise typer.Exit(EXIT_NO_CONVERGENCE)
        except (RelationError, InternalError) as e:
            console.print(f"[red]Verification failed: {escape(str(e))}[/red]")
            raise typer.Exit(EXIT_FAILED)
    return wrapper


def _solver_config(seed: Optional[int], starts: Optional[int], **tolerances: Optional[float]) -> SolverConfig:
    try:
        return SolverConfig.from_settings(seed=seed, starts=starts, **tolerances)
    except ValidationError as e:
        first = e.errors()[0]
        raise DocumentError(first["msg"], field="--" + str(first["loc"][0]).replace("_", "-")) from e


def _emit(command: str, payload: Any, output: Optional[Path], manifest: Optional[Path],
          config: Dict[str, Any], input_digest: str, started: float, rendered: Optional[str] = None) -> None:
    """Write the payload (as JSON unless pre-rendered) and, when asked, the run manifest"""
    text = render_json(payload) if rendered is None else rendered
    if output:
        write_text(text, output)
        console.print(f"[green]✓ Wrote {escape(str(output))}[/green]")
    else:
        typer.echo(text, nl=False)
    if manifest:
        record = RunManifest(
            command=command,
            config=config,
            input_digest=input_digest,
            payload=to_jsonable(payload),
            wall_time=time.perf_counter() - started,
        )
        write_text(render_json(record), manifest)
        console.print(f"[green]✓ Manifest written to {escape(str(manifest))}[/green]")


def _term_list(poly) -> list:
    return [{"conj": list(key.conj), "plain": list(key.plain), "coefficient": c} for key, c in poly.items()]


SOURCE_HELP = "Input file path, or - for stdin"
OUTPUT_OPTION = typer.Option(None, "--output", "-o", help="Write JSON here instead of stdout")
MANIFEST_OPTION = typer.Option(None, "--manifest", help="Write a run manifest (config, input digest, payload, wall time)")
SEED_OPTION = typer.Option(None, "--seed", help="Seed of the run generator (default from settings)")
STARTS_OPTION = typer.Option(None, "--starts", help="Random starts per multistart run")


@app.command("help")
def show_help():
    """📚 Show usage examples"""

    screen.print(Panel.fit(
        "[bold cyan]conjtensor - Usage Guide[/bold cyan]\n\n"
        "[bold yellow]POLYNOMIALS:[/bold yellow]\n"
        "  [cyan]python cli.py parse poly.txt[/cyan]                       # Canonical text + terms\n"
        "  [cyan]python cli.py parse \"~x1*x1 + 2*x2\" --text[/cyan]          # Inline polynomial\n"
        "  [cyan]python cli.py check-real poly.txt[/cyan]                  # Real-valuedness verdict\n\n"
        "[bold yellow]CONVERSIONS:[/bold yellow]\n"
        "  [cyan]python cli.py convert poly.txt --mode S-inv[/cyan]        # Form -> partial-symmetric tensor\n"
        "  [cyan]python cli.py convert tensor.json --mode S[/cyan]         # Tensor -> form text\n"
        "  [cyan]python cli.py convert tensor.json --mode embed-css[/cyan] # CPS -> CSS embedding\n"
        "  [cyan]python cli.py decompose tensor.json[/cyan]                # Σ αₖ conj(Hₖ)⊗Hₖ\n\n"
        "[bold yellow]EIGENVALUES & MAXIMA:[/bold yellow]\n"
        "  [cyan]python cli.py eig tensor.json --kind C --starts 64[/cyan]\n"
        "  [cyan]python cli.py relation tensor.json --pair c-g[/cyan]\n"
        "  [cyan]python cli.py banach tensor.json --check cps[/cyan]\n\n"
        "[bold yellow]APPLICATIONS:[/bold yellow]\n"
        "  [cyan]python cli.py rank1 tensor.json --method als[/cyan]\n"
        "  [cyan]python cli.py radar scenario.yaml --csv ambiguity.csv[/cyan]\n\n"
        "[bold yellow]💡 Every input may be - to read stdin; --manifest records the run.[/bold yellow]",
        border_style="blue"
    ))


@app.command("info")
def show_info():
    """⚙️ Show the active configuration and registered solvers"""

    table = Table(title="Settings", show_header=True)
    table.add_column("Name", style="cyan")
    table.add_column("Value", style="white")
    table.add_column("Description", style="dim")
    for name, field in type(settings).model_fields.items():
        table.add_row(name, str(getattr(settings, name)), field.description or "")
    screen.print(table)

    solvers = Table(title="Eigen solvers", show_header=True)
    solvers.add_column("Kind", style="bold magenta", justify="center")
    solvers.add_column("Solver", style="green")
    solvers.add_column("Phase canonical", justify="center")
    for kind, meta in solver_registry.list_solvers().items():
        solvers.add_row(kind, meta["name"], "yes" if meta["phase_canonicalized"] else "no")
    screen.print(solvers)


SCHEMAS = {
    "tensor": "tensor_document.schema.json",
    "radar": "radar_scenario.schema.json",
}


@app.command("schema")
@exit_codes
def show_schema(
    document: str = typer.Argument(..., help="Document type: tensor or radar"),
):
    """📄 Print the JSON schema of an input document"""
    if document not in SCHEMAS:
        raise ArgumentError(f"Unknown document type {document!r} (expected one of {', '.join(SCHEMAS)})")
    path = settings.schemas_dir / SCHEMAS[document]
    if not path.is_file():
        raise DocumentError(f"schema file not found: {path}")
    typer.echo(path.read_text(encoding="utf-8"), nl=False)


@app.command("parse")
@exit_codes
def parse(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    text: bool = typer.Option(False, "--text", "-t", help="Treat SOURCE as the polynomial itself"),
    n: Optional[int] = typer.Option(None, "--n", help="Number of variables (at least the largest index used)"),
    output: Optional[Path] = OUTPUT_OPTION,
    manifest: Optional[Path] = MANIFEST_OPTION,
):
    """🧾 Parse a polynomial into canonical text and a term list"""
    started = time.perf_counter()
    poly, sha = load_polynomial(source, n, inline=text)
    payload = {
        "text": print_poly(poly),
        "n": poly.n,
        "degree": poly.degree,
        "class": classify_form(poly),
        "terms": _term_list(poly),
    }
    _emit("parse", payload, output, manifest, {"n": n}, sha, started)


@app.command("check-real")
@exit_codes
def check_real(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    text: bool = typer.Option(False, "--text", "-t", help="Treat SOURCE as the polynomial itself"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Coefficient tolerance (default tau_real_parsed)"),
    output: Optional[Path] = OUTPUT_OPTION,
    manifest: Optional[Path] = MANIFEST_OPTION,
):
    """✅ Decide whether a polynomial takes only real values"""
    started = time.perf_counter()
    if tol is not None and tol <= 0:
        raise ArgumentError(f"--tol must be positive, got {tol}")
    poly, sha = load_polynomial(source, inline=text)
    verdict = check_real_valued(poly, tol)
    if not verdict:
        console.print(f"[yellow]Not real-valued: {verdict.violations} violated conjugate pairs[/yellow]")
    _emit("check-real", verdict, output, manifest, {"tol": verdict.tolerance}, sha, started)


@app.command("convert")
@exit_codes
def convert(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    mode: ConvertMode = typer.Option(..., "--mode", "-m", help="Conversion direction"),
    text: bool = typer.Option(False, "--text", "-t", help="Treat SOURCE as polynomial text (inverse modes)"),
    degree: Optional[int] = typer.Option(None, "--degree", "-d", help="Form degree d (required for the zero polynomial)"),
    n: Optional[int] = typer.Option(None, "--n", help="Number of variables"),
    output: Optional[Path] = OUTPUT_OPTION,
    manifest: Optional[Path] = MANIFEST_OPTION,
):
    """🔁 Convert between conjugate forms and structured tensors

    S, G and complex read a tensor document and print polynomial text;
    S-inv, G-inv and complex-inv read polynomial text and print a tensor
    document; embed-css and css-project map tensor documents to tensor documents.
    """
    started = time.perf_counter()
    config = {"mode": mode.value, "degree": degree, "n": n}

    if mode in (ConvertMode.S_INV, ConvertMode.G_INV, ConvertMode.COMPLEX_INV):
        poly, sha = load_polynomial(source, n, inline=text)
        if mode == ConvertMode.S_INV:
            result = s_inverse(poly, degree, n)
        elif mode == ConvertMode.G_INV:
            result = g_inverse(poly, degree, n)
        else:
            result = symmetric_tensor_of(poly, degree, n)
        _emit("convert", result, output, manifest, config, sha, started)
        return

    F, sha = load_tensor(source)
    if mode == ConvertMode.EMBED_CSS:
        _emit("convert", embed_cps_to_css(F), output, manifest, config, sha, started)
        return
    if mode == ConvertMode.CSS_PROJECT:
        _emit("convert", css_project(F), output, manifest, config, sha, started)
        return

    if mode == ConvertMode.S:
        poly = s_forward(F)
    elif mode == ConvertMode.G:
        poly = g_forward(F)
    else:
        poly = complex_form_of(F)
    _emit("convert", {"text": print_poly(poly)}, output, manifest, config, sha, started,
          rendered=print_poly(poly) + "\n")


@app.command("decompose")
@exit_codes
def decompose(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    form: bool = typer.Option(False, "--form", "-f", help="SOURCE is a real-valued symmetric conjugate form; print Σ αₖ|hₖ|²"),
    text: bool = typer.Option(False, "--text", "-t", help="Treat SOURCE as polynomial text (with --form)"),
    output: Optional[Path] = OUTPUT_OPTION,
    manifest: Optional[Path] = MANIFEST_OPTION,
):
    """🧩 Decompose a CPS tensor as Σ αₖ conj(Hₖ)⊗Hₖ"""
    started = time.perf_counter()
    if form:
        poly, sha = load_polynomial(source, inline=text)
        pieces = sos_split(poly)
        payload = {
            "alphas": [alpha for alpha, _ in pieces],
            "forms": [print_poly(h) for _, h in pieces],
        }
        _emit("decompose", payload, output, manifest, {"form": True}, sha, started)
        return

    F, sha = load_tensor(source)
    result = cps_decompose(F)
    payload = {
        "alphas": result.alphas,
        "components": result.components,
        "residual": result.residual,
        "flattening_psd": is_flattening_psd(F),
    }
    _emit("decompose", payload, output, manifest, {"tau_dec": settings.tau_dec}, sha, started)


@app.command("eig")
@exit_codes
def eig(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    kind: str = typer.Option("C", "--kind", "-k", help="Eigen notion: C (CPS), G (CSS) or Q (symmetric)"),
    starts: Optional[int] = STARTS_OPTION,
    tol: Optional[float] = typer.Option(None, "--tol", help="Residual bound for accepted eigenpairs"),
    seed: Optional[int] = SEED_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    manifest: Optional[Path] = MANIFEST_OPTION,
):
    """🎯 Compute eigenpairs of a structured tensor"""
    started = time.perf_counter()
    solver = solver_registry.get(kind)
    cfg = _solver_config(seed, starts, tau_eig=tol)
    F, sha = load_tensor(source)
    pairs = solver.solve(F, cfg)
    logger.info(f"{solver.name}: {len(pairs)} eigenpairs")
    _emit("eig", pairs, output, manifest, {"kind": solver.kind.value, **cfg.model_dump()}, sha, started)


@app.command("relation")
@exit_codes
def relation(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    pair: Relation = typer.Option(..., "--pair", "-p", help="q-c: symmetric H vs conj(H)⊗H; c-g: CPS F vs its CSS embedding"),
    starts: Optional[int] = STARTS_OPTION,
    tol: Optional[float] = typer.Option(None, "--tol", help="Residual bound for accepted eigenpairs"),
    seed: Optional[int] = SEED_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    manifest: Optional[Path] = MANIFEST_OPTION,
):
    """🔗 Verify the correspondence between two eigen notions"""
    started = time.perf_counter()
    cfg = _solver_config(seed, starts, tau_eig=tol)
    F, sha = load_tensor(source)
    report = check_q_c_relation(F, cfg) if pair == Relation.Q_C else check_c_g_relation(F, cfg)
    _emit("relation", report, output, manifest, {"pair": pair.value, **cfg.model_dump()}, sha, started)


@app.command("banach")
@exit_codes
def banach(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    check: BanachCheck = typer.Option(..., "--check", "-c", help="Which equality to test"),
    starts: Optional[int] = STARTS_OPTION,
    tol: Optional[float] = typer.Option(None, "--tol", help="Gap tolerance of the verdict"),
    seed: Optional[int] = SEED_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    manifest: Optional[Path] = MANIFEST_OPTION,
):
    """⚖️ Compare a single-vector maximum with its multilinear relaxation"""
    started = time.perf_counter()
    cfg = _solver_config(seed, starts, tau_eq=tol)
    F, sha = load_tensor(source)
    if check == BanachCheck.CSS:
        report = check_css_banach(F, cfg)
    elif check == BanachCheck.CPS:
        report = check_cps_banach(F, cfg)
    elif check == BanachCheck.HERMITIAN:
        if F.order != 2:
            raise DimensionError(f"--check hermitian needs a matrix document, got order {F.order}")
        report = hermitian_banach(F.data, cfg)
    elif check == BanachCheck.SYMMETRIC:
        report = check_symmetric_complex_banach(F, cfg)
    else:
        report = sandwich_check(F, cfg)
    _emit("banach", report, output, manifest, {"check": check.value, **cfg.model_dump()}, sha, started)


@app.command("rank1")
@exit_codes
def rank1(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    method: RankOneMethod = typer.Option(RankOneMethod.ALS, "--method", help="als, geig (CSS embedding) or coupled"),
    starts: Optional[int] = STARTS_OPTION,
    seed: Optional[int] = SEED_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    manifest: Optional[Path] = MANIFEST_OPTION,
):
    """📐 Best rank-one approximation λ z¹⊗⋯⊗z^d"""
    started = time.perf_counter()
    cfg = _solver_config(seed, starts)
    F, sha = load_tensor(source)
    if method == RankOneMethod.ALS:
        result = rank_one_als(F, cfg)
    elif method == RankOneMethod.GEIG:
        result = rank_one_via_geig(F, cfg)
    else:
        result = coupled_sphere_ascent(F, cfg)
    _emit("rank1", result, output, manifest, {"method": method.value, **cfg.model_dump()}, sha, started)


@app.command("radar")
@exit_codes
def radar(
    source: str = typer.Argument(..., help="Scenario file (JSON or YAML), or - for stdin"),
    csv_path: Optional[Path] = typer.Option(None, "--csv", help="Write the ambiguity report (r, j, x_j, weight, value)"),
    starts: Optional[int] = STARTS_OPTION,
    tol: Optional[float] = typer.Option(None, "--tol", help="Residual bound for the eigen solve"),
    seed: Optional[int] = SEED_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
    manifest: Optional[Path] = MANIFEST_OPTION,
):
    """📡 Design a radar code by shaping its ambiguity function"""
    started = time.perf_counter()
    cfg = _solver_config(seed, starts, tau_eig=tol)
    scenario, sha = load_scenario(source)
    solution = solve_radar(scenario, cfg)
    if csv_path:
        write_ambiguity_csv(solution.rows, csv_path)
        console.print(f"[green]✓ Ambiguity report written to {escape(str(csv_path))}[/green]")
    _emit("radar", solution, output, manifest, cfg.model_dump(), sha, started)


if __name__ == "__main__":
    app()
