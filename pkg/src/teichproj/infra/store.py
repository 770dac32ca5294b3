"""
Artifact persistence for runs.

Every report is written as three files under the output directory:
`<experiment>.csv` with a commented provenance header, `<experiment>.json`
with the full report, and `<experiment>_plot.py`, a plotting script that
reads the CSV by relative path. Measured constants live in one versioned
JSON file that later runs load.
"""

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Optional

from teichproj.config import get_settings
from teichproj.errors import ConstantsMissingError
from teichproj.logging_config import get_logger
from teichproj.schemas.constants import EmpiricalConstants
from teichproj.schemas.report import ExperimentReport
from teichproj.version import __version__

logger = get_logger(__name__)

# (x column, y column) of each experiment's plot
PLOT_AXES = {
    "constants": ("name", "value"),
    "contract": ("distance", "diam"),
    "stability": ("segment_length", "deviation"),
    "thin": ("delta", "offset"),
    "pa-translation": ("distance", "displacement"),
    "sharpness": ("T", "max_deviation"),
}

PLOT_TEMPLATE = '''"""Plot {experiment} results. Generated by teichproj {version}."""

import csv
from pathlib import Path

import matplotlib.pyplot as plt

path = Path(__file__).with_name("{csv_name}")
with path.open() as handle:
    rows = list(csv.DictReader(line for line in handle if not line.startswith("#")))

xs = [row["{x}"] for row in rows]
ys = [float(row["{y}"]) for row in rows]
plt.scatter(xs, ys, s=8)
plt.xlabel("{x}")
plt.ylabel("{y}")
plt.title("{experiment}")
plt.savefig(path.with_suffix(".png"), dpi=150)
'''


def format_value(value: Any) -> str:
    """Locale-free cell text; floats keep 17 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def _canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


class ArtifactStore:
    """Reads and writes run artifacts under one output directory."""

    def __init__(self, root: Optional[Path] = None):
        self._root = Path(root) if root is not None else Path(get_settings().output_dir)

    @property
    def root(self) -> Path:
        return self._root

    @property
    def constants_path(self) -> Path:
        return self._root / get_settings().constants_filename

    def render_csv(self, report: ExperimentReport) -> str:
        """The CSV text of a report, provenance header included."""
        buffer = io.StringIO()
        buffer.write(f"# teichproj {report.artifact_version}\n")
        buffer.write(f"# seed: {report.seed}\n")
        buffer.write(f"# config: {_canonical_json(report.config)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([format_value(value) for value in row])
        return buffer.getvalue()

    def write_report(self, report: ExperimentReport) -> dict[str, Path]:
        """Write the CSV, JSON and plot script of a report."""
        self._root.mkdir(parents=True, exist_ok=True)
        name = report.experiment_id
        paths = {
            "csv": self._root / f"{name}.csv",
            "json": self._root / f"{name}.json",
            "plot": self._root / f"{name}_plot.py",
        }
        paths["csv"].write_text(self.render_csv(report), encoding="utf-8")
        paths["json"].write_text(
            json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        x, y = PLOT_AXES.get(name, (report.columns[0], report.columns[-1]))
        paths["plot"].write_text(
            PLOT_TEMPLATE.format(
                experiment=name, version=__version__, csv_name=paths["csv"].name, x=x, y=y
            ),
            encoding="utf-8",
        )
        logger.info("Report written", extra={"experiment_id": name, "rows": len(report.rows)})
        return paths

    def write_json(self, name: str, payload: dict[str, Any]) -> Path:
        self._root.mkdir(parents=True, exist_ok=True)
        path = self._root / name
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path

    def save_constants(self, constants: EmpiricalConstants) -> Path:
        self._root.mkdir(parents=True, exist_ok=True)
        path = self.constants_path
        path.write_text(constants.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info(
            "Constants persisted",
            extra={"path": str(path), "schema_version": constants.schema_version},
        )
        return path

    def load_constants(self) -> EmpiricalConstants:
        """
        Raises:
            ConstantsMissingError: If no constants have been measured here yet
        """
        path = self.constants_path
        if not path.is_file():
            raise ConstantsMissingError(str(path))
        return EmpiricalConstants.model_validate_json(path.read_text(encoding="utf-8"))
