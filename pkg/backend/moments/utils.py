import csv
import hashlib
import io
import json
import logging
import sys
from datetime import datetime

from reportlab.pdfgen import canvas
from rest_framework.renderers import JSONRenderer

from cubicl_project.settings import (BIG_FONT, BIG_FONT_SIZE, CSV_FLOAT_FORMAT,
                                     MANIFEST_SUFFIX, REPORT_FILEFORMAT,
                                     SMALL_FONT, SMALL_FONT_SIZE, TOOL_VERSION)

logger = logging.getLogger(__name__)

START = 0
COLUMN_0 = 40
LINE_0 = 800
LINE_1 = 780
NEXT_LINE = 14
PAGE_BOTTOM = 40
TEXT_0 = 'Второй момент кубических L-функций: q = {}'
WRITTEN = 'Результат записан в %s'
RUNTIME = 'runtime_ms'


def format_value(value):
    if isinstance(value, float):
        return format(value, CSV_FLOAT_FORMAT)
    if isinstance(value, (list, tuple)):
        return ' '.join(format_value(item) for item in value)
    return '' if value is None else str(value)


def render_json(data):
    return JSONRenderer().render(data) + b'\n'


def render_csv(rows, columns=None):
    if not rows:
        return ''
    columns = columns or list(rows[0])
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(column)) for column in columns])
    return buffer.getvalue()


def without_runtime(data):
    if isinstance(data, dict):
        return {key: without_runtime(value)
                for key, value in data.items() if key != RUNTIME}
    if isinstance(data, list):
        return [without_runtime(item) for item in data]
    return data


def canonical(data):
    """The report without its timing, as checksummed in the manifest."""
    return json.dumps(
        without_runtime(data), sort_keys=True, default=str).encode()


def build_manifest(tower, argv, data, runtime_ms, cutoffs=None):
    return {
        'tool_version': TOOL_VERSION,
        'tower': tower.describe(),
        'argv': list(argv),
        'cutoffs': cutoffs or {},
        'runtime_ms': runtime_ms,
        'created': datetime.now().isoformat(timespec='seconds'),
        'sha256': hashlib.sha256(canonical(data)).hexdigest(),
    }


def make_table(rows, columns, q, fileformat=REPORT_FILEFORMAT):
    """Main-term comparison table as text or as a PDF buffer."""
    title = TEXT_0.format(q)
    lines = [' | '.join(columns)] + [
        ' | '.join(format_value(row.get(column)) for column in columns)
        for row in rows]
    if fileformat == 'text/plain':
        return '\n'.join((title, *lines)) + '\n'
    if fileformat == 'application/pdf':
        buffer = io.BytesIO()
        doc = canvas.Canvas(buffer)
        doc.setFont(BIG_FONT, BIG_FONT_SIZE)
        doc.drawString(COLUMN_0, LINE_0, title)
        doc.setFont(SMALL_FONT, SMALL_FONT_SIZE)
        y = LINE_1
        for line in lines:
            if y < PAGE_BOTTOM:
                doc.showPage()
                doc.setFont(SMALL_FONT, SMALL_FONT_SIZE)
                y = LINE_0
            doc.drawString(COLUMN_0, y, line)
            y -= NEXT_LINE
        doc.showPage()
        doc.save()
        buffer.seek(START)
        return buffer.getvalue()
    raise ValueError(fileformat)


def write_output(content, out=None, stdout=None, manifest=None, stderr=None):
    """Write content to out, or to stdout.

    The manifest goes next to out, or to stderr when there is no out.
    """
    if out is None:
        stream = stdout or sys.stdout
        stream.write(content.decode() if isinstance(content, bytes)
                     else content)
        if manifest is not None:
            (stderr or sys.stderr).write(render_json(manifest).decode())
        return
    mode = 'wb' if isinstance(content, bytes) else 'w'
    with open(out, mode) as target:
        target.write(content)
    logger.info(WRITTEN, out)
    if manifest is not None:
        with open(out + MANIFEST_SUFFIX, 'wb') as target:
            target.write(render_json(manifest))
