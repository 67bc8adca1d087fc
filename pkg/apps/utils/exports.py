import csv
import io
import json
import logging
from pathlib import Path

from django.conf import settings

logger = logging.getLogger(__name__)


def to_json(payload):
    return json.dumps(payload, indent=2, default=str) + '\n'


def to_csv(rows, columns):
    """Rows (dicts) restricted to ``columns``; booleans and nulls written as JSON literals"""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, extrasaction='ignore', lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({column: _cell(row.get(column)) for column in columns})
    return buffer.getvalue()


def _cell(value):
    if value is None or isinstance(value, bool):
        return json.dumps(value)
    return value


def read_csv(text):
    """Inverse of to_csv: integers, booleans and nulls are restored"""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({key: _parse_cell(value) for key, value in row.items()})
    return rows


def _parse_cell(value):
    if value in ('true', 'false', 'null'):
        return json.loads(value)
    try:
        return int(value)
    except ValueError:
        return value


def resolve_output_path(out):
    path = Path(out)
    if not path.is_absolute():
        path = Path(settings.CODING['OUTPUT_DIR']) / path
    return path


def write_output(out, content):
    path = resolve_output_path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding='utf-8')
    logger.info(f"Wrote {len(content)} characters to {path}")
    return path
