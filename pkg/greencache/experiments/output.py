"""
Rendering of SweepResults. Both formats open with the same metadata block:
package versions, then one `# config: key = value` line per resolved key in
sorted order. Nothing run-dependent (timestamps, paths, hosts) is written,
so identical configs give byte-identical output.
"""

import csv
import io
import json

import django
import numpy
import scipy

from greencache import VERSION
from greencache.experiments.choices import OutputFormat
from greencache.experiments.config import ECHO_PREFIX


def metadata_lines(result):
    lines = [
        "# greencache {}".format(VERSION),
        "# numpy {}".format(numpy.__version__),
        "# scipy {}".format(scipy.__version__),
        "# django {}".format(django.get_version()),
    ]
    lines += ["{} {} = {}".format(ECHO_PREFIX, key, value) for key, value in result.echo]
    return lines


def format_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value):
    if isinstance(value, float) and value != value:
        return None
    return value


def render_csv(result):
    buffer = io.StringIO()
    for line in metadata_lines(result):
        buffer.write(line + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([format_cell(value) for value in row])
    return buffer.getvalue()


def render_text(result):
    """One JSON object per result row after the metadata block."""
    lines = metadata_lines(result)
    for row in result.rows:
        record = {
            column: _json_value(value) for column, value in zip(result.columns, row)
        }
        lines.append(json.dumps(record))
    return "\n".join(lines) + "\n"


RENDERERS = {
    OutputFormat.CSV: render_csv,
    OutputFormat.TEXT: render_text,
}


def render(result, output_format=OutputFormat.CSV):
    return RENDERERS[OutputFormat(output_format)](result)
