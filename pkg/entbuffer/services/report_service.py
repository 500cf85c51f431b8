"""Terminal reports (jinja2) and CSV output."""
import csv
import io
import logging
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from entbuffer.settings import get_settings

logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates"


def format_number(value, digits: Optional[int] = None) -> str:
    """Shortest representation that round-trips, capped at ``digits`` significant digits."""
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, int):
        return str(value)
    value = float(value)
    digits = digits or get_settings().csv_significant_digits
    for precision in range(1, digits + 1):
        text = f"{value:.{precision}g}"
        if float(text) == value:
            return text
    return f"{value:.{digits}g}"


class ReportService:
    """Renders report templates and writes CSV files."""

    def __init__(self, templates_dir: Path = TEMPLATES_DIR):
        self.settings = get_settings()
        self.env = Environment(
            loader=FileSystemLoader(str(templates_dir)),
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
        self.env.filters["num"] = self.format

    def format(self, value) -> str:
        return format_number(value, self.settings.csv_significant_digits)

    def render(self, template_name: str, context: dict) -> str:
        """Render a Jinja2 template."""
        template = self.env.get_template(template_name)
        return template.render(**context)

    def csv_text(self, header: Sequence[str], rows: Iterable[Sequence], trailer: Iterable[Sequence] = ()) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([self._cell(v) for v in row])
        for row in trailer:
            writer.writerow([self._cell(v) for v in row])
        return buffer.getvalue()

    def write_csv(self, out: Optional[Union[str, Path]], header: Sequence[str], rows: Iterable[Sequence],
                  trailer: Iterable[Sequence] = ()) -> str:
        """Write CSV to ``out`` (stdout when None) and return the text."""
        text = self.csv_text(header, rows, trailer)
        if out is None:
            sys.stdout.write(text)
        else:
            path = Path(out)
            path.parent.mkdir(parents=True, exist_ok=True)
            # newline="" keeps LF line endings on every platform
            with path.open("w", encoding="utf-8", newline="") as handle:
                handle.write(text)
            logger.info(f"Wrote {path}")
        return text

    def _cell(self, value) -> str:
        return value if isinstance(value, str) else self.format(value)
