"""
Standard Report Helpers
"""
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import click
from flask import current_app, has_app_context

CSV_DIGITS = 17
SVG_DIGITS = 6


def format_number(value: Any, digits: int = CSV_DIGITS) -> str:
    """
    Format a number for text reports

    17 significant digits round-trip a double exactly; booleans and
    strings pass through unchanged.
    """
    if isinstance(value, bool) or value is None:
        return '' if value is None else str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) or hasattr(value, 'dtype'):
        value = float(value)
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return f'{value:.{digits}g}'
    return str(value)


def json_safe(value: Any) -> Any:
    """Replace non-finite floats by strings so the output stays valid JSON"""
    if isinstance(value, dict):
        return {key: json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(item) for item in value]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float) or hasattr(value, 'dtype'):
        value = float(value)
        if not math.isfinite(value):
            return format_number(value)
        return value
    return value


def dumps(payload: Any) -> str:
    """Serialize a payload with stable key order"""
    payload = json_safe(payload)
    if has_app_context():
        return current_app.json.dumps(payload, indent=2) + '\n'
    return json.dumps(payload, indent=2, sort_keys=False) + '\n'


def write_atomic(path: str | os.PathLike, text: str) -> Path:
    """
    Write a text file atomically (write-then-rename)

    Args:
        path: Destination path, parent directories are created
        text: File contents, written with LF line endings

    Returns:
        The destination path
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)

    handle = tempfile.NamedTemporaryFile(
        'w', encoding='utf-8', newline='\n', dir=target.parent,
        prefix=f'.{target.name}.', delete=False
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, target)
    except BaseException:
        Path(handle.name).unlink(missing_ok=True)
        raise

    return target


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render a comma-separated table with a header row"""
    lines = [','.join(header)]
    for row in rows:
        lines.append(','.join(format_number(cell) for cell in row))
    return '\n'.join(lines) + '\n'


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a CSV report atomically"""
    return write_atomic(path, csv_text(header, rows))


def write_json(path, payload: Any) -> Path:
    """Write a JSON report atomically"""
    return write_atomic(path, dumps(payload))


def success_response(data: Any = None, message: str = "") -> int:
    """
    Print a standardized success payload on stdout

    Args:
        data: Report data (dict, list, etc.)
        message: Success message

    Returns:
        Process exit code
    """
    response = {
        'success': True
    }

    if message:
        response['message'] = message

    if data is not None:
        response['data'] = data

    click.echo(dumps(response), nl=False)
    return 0


def error_response(error: str, message: str, exit_code: int = 1, details: Optional[dict] = None) -> int:
    """
    Print a standardized error payload on stderr

    Args:
        error: Error name
        message: Human readable message
        exit_code: Process exit code to return
        details: Additional error details

    Returns:
        Process exit code
    """
    response = {
        'success': False,
        'error': error,
        'message': message
    }

    if details:
        response['details'] = details

    click.echo(dumps(response), nl=False, err=True)
    return exit_code
