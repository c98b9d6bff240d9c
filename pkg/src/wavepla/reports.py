"""CSV reports: confusion matrix, input sweeps, power distributions, waveforms.

Numbers are rendered fixed-format (dB/dBm with 2 decimals, mW with 4
significant figures) so reports are byte-identical across runs.
"""

from pathlib import Path
from typing import Mapping

import numpy as np
import pandas as pd

from wavepla.channels import minterm_of_channel
from wavepla.metrics import format_db, format_mw, mw_to_dbm
from wavepla.simulator import PlaSimulator
from wavepla.synthesis.stdlib import decode_outputs
from wavepla.waveform import Waveform


def _write(df: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, lineterminator="\n")
    return path


def confusion_frame(matrix: np.ndarray) -> pd.DataFrame:
    """Rows = input state, columns = channel index, cells = dBm."""
    size = matrix.shape[1]
    cells = [[format_db(float(v)) for v in row] for row in matrix]
    df = pd.DataFrame(cells, columns=[str(c) for c in range(size)])
    df.insert(0, "input", [str(i) for i in range(matrix.shape[0])])
    return df


def write_confusion_csv(matrix: np.ndarray, path: str | Path) -> Path:
    return _write(confusion_frame(matrix), path)


def sweep_frame(sim: PlaSimulator, decode: bool = False) -> pd.DataFrame:
    """Every input state with per-output power (mW, dBm) and decision.

    With ``decode`` the output decisions, read most significant first, are
    also reported as an integer column ``value``.
    """
    sweep = sim.sweep()
    decisions = sim.decision_table()
    n = sim.operand_count
    records = []
    for i in range(sweep.shape[0]):
        record: dict[str, str | int] = {
            "input": i,
            "bits": "".join(str(b) for b in minterm_of_channel(i, n)),
        }
        for k, name in enumerate(sim.output_names):
            record[f"{name}_mw"] = format_mw(float(sweep[i, k]))
            record[f"{name}_dbm"] = format_db(mw_to_dbm(float(sweep[i, k])))
            record[name] = int(decisions[i, k])
        if decode:
            record["value"] = decode_outputs(decisions[i])
        records.append(record)
    return pd.DataFrame.from_records(records)


def write_sweep_csv(sim: PlaSimulator, path: str | Path, decode: bool = False) -> Path:
    return _write(sweep_frame(sim, decode=decode), path)


def power_report(sim: PlaSimulator) -> pd.DataFrame:
    """Per-output power distribution summary: weakest high, strongest low, margin."""
    calibration = sim.calibrate()
    rows = []
    for name in sim.output_names:
        rows.append(
            {
                "output": name,
                "min_high_dbm": format_db(mw_to_dbm(calibration.min_high[name])),
                "max_low_dbm": format_db(mw_to_dbm(calibration.max_low[name])),
                "threshold_mw": format_mw(calibration.thresholds[name]),
                "margin_db": format_db(calibration.margins_db[name]),
            }
        )
    return pd.DataFrame.from_records(rows)


def margin_summary(sim: PlaSimulator) -> str:
    """One line: per-output margins and the worst one."""
    calibration = sim.calibrate()
    worst = calibration.worst_margin_db
    if len(calibration.margins_db) > 8:
        return f"margin: worst={format_db(worst)} dB over {len(calibration.margins_db)} outputs"
    parts = ", ".join(f"{n}={format_db(m)} dB" for n, m in calibration.margins_db.items())
    return f"margin: {parts}; worst={format_db(worst)} dB"


def waveform_frame(waveforms: Mapping[str, Waveform]) -> pd.DataFrame:
    """time_ps plus one power_mw column per output."""
    if not waveforms:
        raise ValueError("No waveforms to report")
    first = next(iter(waveforms.values()))
    data: dict[str, list[str]] = {"time_ps": [f"{t:.3f}" for t in first.times_ps()]}
    for name, wf in waveforms.items():
        data[f"{name}_mw"] = [format_mw(float(v)) for v in wf.samples]
    return pd.DataFrame(data)


def write_waveform_csv(waveforms: Mapping[str, Waveform], path: str | Path) -> Path:
    return _write(waveform_frame(waveforms), path)
