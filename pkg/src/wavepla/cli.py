"""Command-line interface for WavePLA."""

import contextlib
from pathlib import Path
from typing import Iterator, List, Optional

import typer
import yaml

from wavepla.channels import as_input_vector
from wavepla.config import default_config, resize_config, resolve_config
from wavepla.life import engine
from wavepla.life.patterns import (
    DEFAULT_SIZES,
    PATTERNS,
    builtin,
    load_pattern,
    parse_pattern,
    place,
    write_pgm,
    write_trace,
)
from wavepla.metrics import format_db, format_mw
from wavepla.reports import (
    margin_summary,
    power_report,
    sweep_frame,
    write_confusion_csv,
    write_sweep_csv,
    write_waveform_csv,
)
from wavepla.simulator import PlaSimulator, configure, diagonal_margins
from wavepla.synthesis import (
    ExprSyntaxError,
    TruthTable,
    bitmap_truth_table,
    compile_expr,
    decode_outputs,
    estimate_capacity,
    load_bundle,
    load_truth_table,
    save_truth_table,
    stdlib_function,
)
from wavepla.synthesis.capacity import modulator_comparison
from wavepla.synthesis.stdlib import decoder, is_stdlib_name
from wavepla.utils import ensure_dir, parse_name_list, setup_environment, setup_logging
from wavepla.waveform import run_waveform

app = typer.Typer(
    name="wavepla",
    help="WavePLA: compile and simulate wavelength-parallel optical logic arrays.",
    add_completion=False,
)

ARITHMETIC = {"adder4", "multiplier4"}


@app.callback()
def main(
    verbose: int = typer.Option(
        0,
        "--verbose",
        "-v",
        count=True,
        help="Log progress to stderr (-vv for debug).",
    ),
) -> None:
    """Compile Boolean functions to channel masks and simulate the optical chain."""
    setup_environment()
    setup_logging(verbose)


@contextlib.contextmanager
def domain_errors() -> Iterator[None]:
    """Report domain failures on stderr and exit with status 1."""
    try:
        yield
    except ExprSyntaxError as e:
        typer.echo(e.diagnostic(), err=True)
        raise typer.Exit(code=2)
    except (ValueError, FileNotFoundError, yaml.YAMLError) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=1)


def _load_functions(
    function: str, decoder_size: int, input_count: int | None = None
) -> tuple[list[TruthTable], bool]:
    """Resolve a stdlib name, bundle file or truth-table file.

    ``input_count`` fixes the operand count of bundle entries; without it the
    count is inferred from the hex length.

    Returns:
        Tuple of (tables, decode) where decode marks arithmetic bundles.
    """
    if is_stdlib_name(function):
        return stdlib_function(function, decoder_size=decoder_size), function in ARITHMETIC
    path = Path(function)
    if not path.exists():
        raise ValueError(f"Unknown function or missing file: {function}")
    if path.suffix == ".json":
        return load_bundle(path, input_count), False
    return [load_truth_table(path)], False


def _prepare(config: Optional[Path], function: Optional[str]) -> tuple[PlaSimulator, bool]:
    """Build the simulator for ``function`` on the active configuration."""
    cfg, explicit = resolve_config(config)
    if function is None:
        if not cfg.outputs:
            raise ValueError("Configuration has no outputs; pass --function")
        return PlaSimulator(cfg), False
    tables, decode = _load_functions(
        function, cfg.operand_count, cfg.operand_count if explicit else None
    )
    base = cfg
    if not explicit and tables[0].input_count != cfg.operand_count:
        base = resize_config(cfg, tables[0].input_count)
    return PlaSimulator(configure(tables, base)), decode


@app.command("compile")
def cmd_compile(
    expr: Optional[str] = typer.Option(None, "--expr", "-e", help="Boolean expression (~ & ^ |)."),
    table: Optional[Path] = typer.Option(None, "--table", "-t", help="Truth-table file to normalize."),
    bitmap: Optional[Path] = typer.Option(
        None, "--bitmap", "-b", help="Bitmap pattern file ('.'/'O'), rows = leading operands."
    ),
    variables: Optional[str] = typer.Option(None, "--vars", help="Comma-separated variable order."),
    name: str = typer.Option("f", "--name", help="Function name."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output truth-table file."),
) -> None:
    """Compile an expression or table into a truth-table (mask) file."""
    sources = [s for s in (expr, table, bitmap) if s is not None]
    if len(sources) != 1:
        raise typer.BadParameter("Give exactly one of --expr, --table, --bitmap")
    if expr is not None and not variables:
        raise typer.BadParameter("--expr needs --vars")

    with domain_errors():
        if expr is not None:
            tt = compile_expr(expr, parse_name_list(variables or ""), name=name)
        elif table is not None:
            tt = load_truth_table(table, name=name)
        else:
            tt = bitmap_truth_table(load_pattern(bitmap), name=name)

        if out is not None:
            save_truth_table(tt, out)
            typer.echo(f"Wrote {out}")
        else:
            typer.echo(f"N={tt.input_count}")
            typer.echo(tt.to_hex())
        typer.echo(f"N={tt.input_count}, minterms={tt.popcount}")


@app.command("simulate")
def cmd_simulate(
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="PLA configuration file."),
    function: Optional[str] = typer.Option(
        None, "--function", "-f", help="decoder[N], comparator4, adder4, multiplier4, or a file."
    ),
    input_bits: Optional[str] = typer.Option(None, "--input", "-i", help="Input bits x1..xN."),
    all_inputs: bool = typer.Option(False, "--all", help="Sweep every input state."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV path for --all."),
) -> None:
    """Evaluate a function on the simulated PLA."""
    if (input_bits is None) == (not all_inputs):
        raise typer.BadParameter("Give exactly one of --input, --all")

    with domain_errors():
        sim, decode = _prepare(config, function)

        if all_inputs:
            if out is not None:
                write_sweep_csv(sim, out, decode=decode)
                typer.echo(f"Wrote {out}")
            else:
                typer.echo(sweep_frame(sim, decode=decode).to_csv(index=False, lineterminator="\n"), nl=False)
            typer.echo(margin_summary(sim))
            return

        try:
            vector = as_input_vector(input_bits or "")
        except ValueError as e:
            raise typer.BadParameter(str(e))
        if len(vector) != sim.operand_count:
            raise typer.BadParameter(f"--input needs {sim.operand_count} bits, got {len(vector)}")

        result = sim.evaluate(vector)
        for name in sim.output_names:
            typer.echo(
                f"{name}: {format_mw(result.powers_mw[name])} mW "
                f"({format_db(result.powers_dbm[name])} dBm) -> {result.decisions[name]}"
            )
        if decode:
            typer.echo(f"value={decode_outputs(result.bits())}")


@app.command("matrix")
def cmd_matrix(
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="PLA configuration file."),
    out: Path = typer.Option(..., "--out", "-o", help="Confusion-matrix CSV path."),
    report: Optional[Path] = typer.Option(None, "--report", help="Per-output power report CSV."),
) -> None:
    """Write the decoder confusion matrix (dBm at the waveshaper input)."""
    with domain_errors():
        cfg, _ = resolve_config(config)
        sim = PlaSimulator(configure(decoder(cfg.operand_count), cfg))
        matrix = sim.confusion_matrix()
        write_confusion_csv(matrix, out)
        typer.echo(f"Wrote {out}")
        typer.echo(f"diagonal margin: min={format_db(float(diagonal_margins(matrix).min()))} dB")
        if report is not None:
            power_report(sim).to_csv(report, index=False, lineterminator="\n")
            typer.echo(f"Wrote {report}")
        typer.echo(margin_summary(sim))


@app.command("waveform")
def cmd_waveform(
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="PLA configuration file."),
    function: Optional[str] = typer.Option(None, "--function", "-f", help="Function name or file."),
    stream: List[str] = typer.Option(
        ..., "--stream", "-s", help="Bit stream per operand, in operand order; one bit = constant."
    ),
    rate: float = typer.Option(10e9, "--rate", help="Bit rate (b/s)."),
    samples_per_bit: int = typer.Option(16, "--samples-per-bit", help="Samples per bit period."),
    rise: float = typer.Option(0.0, "--rise", help="Transition time as a fraction of the bit period."),
    out: Path = typer.Option(..., "--out", "-o", help="Waveform CSV path."),
) -> None:
    """Drive operands with NRZ streams and write sampled output waveforms."""
    try:
        bits = [as_input_vector(s) for s in stream]
    except ValueError as e:
        raise typer.BadParameter(str(e))
    length = max(len(b) for b in bits)
    if any(len(b) not in (1, length) for b in bits):
        raise typer.BadParameter("Streams must share one length (single bits are held constant)")
    streams = [b * length if len(b) == 1 else b for b in bits]

    with domain_errors():
        sim, _ = _prepare(config, function)
        waveforms = run_waveform(sim, streams, rate, samples_per_bit, rise)
        write_waveform_csv(waveforms, out)
        typer.echo(f"Wrote {out}")
        typer.echo(f"bit_period={1e12 / rate:.2f} ps, bits={length}")
        thresholds = sim.calibrate().thresholds
        for name, wf in waveforms.items():
            typer.echo(f"{name}: {''.join(str(d) for d in wf.decisions(thresholds[name]))}")


@app.command("life")
def cmd_life(
    pattern: str = typer.Option(..., "--pattern", "-p", help=f"Pattern file or one of {list(PATTERNS)}."),
    steps: int = typer.Option(1, "--steps", "-n", help="Generations to run."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Trace file."),
    pgm_dir: Optional[Path] = typer.Option(None, "--pgm-dir", help="Write one PGM per step here."),
    boundary: str = typer.Option("dead", "--boundary", help="dead or toroidal."),
    height: Optional[int] = typer.Option(None, "--height", help="Grid height (pattern centred)."),
    width: Optional[int] = typer.Option(None, "--width", help="Grid width (pattern centred)."),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="9-operand PLA configuration."),
    check: bool = typer.Option(False, "--check", help="Compare every step with the direct rule."),
) -> None:
    """Run Conway's Game of Life with every cell decided by the PLA."""
    if boundary not in ("dead", "toroidal"):
        raise typer.BadParameter("--boundary must be dead or toroidal")
    if steps < 0:
        raise typer.BadParameter("--steps must be >= 0")

    with domain_errors():
        if pattern in PATTERNS and not Path(pattern).exists():
            if height is None and width is None:
                grid = builtin(pattern, boundary)
            else:
                default_height, default_width = DEFAULT_SIZES[pattern]
                cells = parse_pattern(PATTERNS[pattern])
                grid = place(cells, height or default_height, width or default_width, boundary)
        else:
            cells = load_pattern(pattern)
            grid = place(cells, height or cells.shape[0], width or cells.shape[1], boundary)

        if config is not None:
            cfg, _ = resolve_config(config)
            if not cfg.outputs:
                cfg = configure([engine.conway_truth_table()], cfg)
        else:
            cfg = engine.rule_config(params=default_config().params)
        sim = PlaSimulator(cfg)

        trace = engine.run(grid, steps, sim)

        if check:
            oracle = engine.direct_run(grid, steps)
            mismatches = [k for k, (a, b) in enumerate(zip(trace, oracle)) if a != b]
            if mismatches:
                typer.echo(f"Error: PLA diverges from the direct rule at steps {mismatches}", err=True)
                raise typer.Exit(code=1)
            typer.echo(f"oracle check: {steps} steps match")

        if out is not None:
            write_trace(trace, out)
            typer.echo(f"Wrote {out}")
        if pgm_dir is not None:
            directory = ensure_dir(pgm_dir)
            for k, g in enumerate(trace):
                write_pgm(g, directory / f"step_{k:04d}.pgm")
            typer.echo(f"Wrote {len(trace)} PGM files to {pgm_dir}")

        typer.echo(f"steps={steps}, population={trace[-1].population}")
        typer.echo(f"final equals initial: {'yes' if trace[-1] == trace[0] else 'no'}")


@app.command("estimate")
def cmd_estimate(
    lambda1: float = typer.Option(1500.0, "--lambda1", help="Short band edge (nm)."),
    lambda2: float = typer.Option(1600.0, "--lambda2", help="Long band edge (nm)."),
    bw: float = typer.Option(1.0, "--bw", help="Channel bandwidth (GHz)."),
    operands: Optional[int] = typer.Option(None, "--operands", help="Also compare modulators for N operands."),
) -> None:
    """Estimate channel and operand capacity of a wavelength band."""
    with domain_errors():
        est = estimate_capacity(lambda1, lambda2, bw)
        typer.echo(
            f"delta_f={est.delta_f_reported:.1f} GHz, W={est.max_channels}, N={est.max_operands}"
        )
        typer.echo(f"modulators: proposed={est.modulators_proposed}, eo={est.modulators_eo}")
        typer.echo(f"minterms={est.minterms}, functions=10^{est.log10_functions:.1f}")
        if operands is not None:
            counts = modulator_comparison(operands)
            typer.echo(f"N={operands}: proposed={counts['proposed']}, eo={counts['eo']}")


if __name__ == "__main__":
    app()
