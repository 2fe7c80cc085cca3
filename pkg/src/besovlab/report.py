"""Report assembly: per-symbol value rows, verdicts, text and delimited output.

Every run writes three artifacts into the output directory: report.txt (an
aligned human-readable table plus verdict lines), report.tsv (tab-delimited,
one header row, plot-ready), and config-echo.yaml (the exact validated
configuration, so any value in the report can be reproduced from the echo and
the recorded seed).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["Report"]


@dataclass
class Report:
    command: str
    columns: list
    rows: list = field(default_factory=list)   # dicts keyed by column
    notes: list = field(default_factory=list)
    passed: bool = True
    runtime: float = 0.0
    config_echo: str = ""
    artifacts: dict = field(default_factory=dict)  # name -> text payload

    def add_row(self, **values):
        self.rows.append(values)

    def note(self, text: str):
        self.notes.append(text)

    def _formatted(self, value) -> str:
        if isinstance(value, float):
            return f"{value:.8g}"
        if isinstance(value, complex):
            return f"{value.real:.8g}{value.imag:+.8g}j"
        return str(value)

    def text(self) -> str:
        cells = [[self._formatted(row.get(c, "")) for c in self.columns]
                 for row in self.rows]
        widths = [max([len(c)] + [len(r[i]) for r in cells])
                  for i, c in enumerate(self.columns)]
        lines = [f"# besovlab {self.command}  ({self.runtime:.2f}s)"]
        lines.append("  ".join(c.ljust(w) for c, w in zip(self.columns, widths)))
        for r in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
        for note in self.notes:
            lines.append(f"# {note}")
        lines.append(f"# verdict: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def tsv(self) -> str:
        lines = ["\t".join(self.columns)]
        for row in self.rows:
            lines.append("\t".join(self._formatted(row.get(c, "")) for c in self.columns))
        return "\n".join(lines) + "\n"

    def write(self, outdir) -> Path:
        out = Path(outdir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.txt").write_text(self.text())
        (out / "report.tsv").write_text(self.tsv())
        (out / "config-echo.yaml").write_text(self.config_echo)
        for name, payload in self.artifacts.items():
            (out / name).write_text(payload)
        return out

    @staticmethod
    def timed(command: str, columns, config_echo: str = "") -> "Report":
        rep = Report(command=command, columns=list(columns), config_echo=config_echo)
        rep._t0 = time.time()
        return rep

    def finish(self) -> "Report":
        if hasattr(self, "_t0") and self.runtime == 0.0:
            self.runtime = time.time() - self._t0
        return self
