"""
CSV Readers

Read back the tables written by the report helpers, and tabulated
damping knots supplied by users.
"""
import csv
import math
from pathlib import Path

from dampinglab.errors.exceptions import ConfigError


def parse_cell(cell: str):
    """Number, boolean or text from one CSV cell"""
    text = cell.strip()
    lowered = text.lower()
    if lowered in ('true', 'false'):
        return lowered == 'true'
    if lowered in ('inf', '-inf', 'nan'):
        return float(lowered)
    try:
        return float(text)
    except ValueError:
        return text


def read_csv_table(path) -> tuple[list[str], list[list]]:
    """
    Read a comma-separated table with a header row

    Returns:
        (header, rows) with numeric cells converted to float
    """
    target = Path(path)
    if not target.is_file():
        raise ConfigError(f'CSV file not found: {target}')

    with target.open(newline='', encoding='utf-8') as handle:
        reader = csv.reader(handle)
        try:
            header = [name.strip() for name in next(reader)]
        except StopIteration:
            raise ConfigError(f'{target}: empty CSV file') from None
        rows = [[parse_cell(cell) for cell in row] for row in reader if row]

    for number, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise ConfigError(f'{target}: line {number}: expected {len(header)} columns, got {len(row)}')
    return header, rows


def read_knots_csv(path) -> list[tuple[float, float]]:
    """
    Read (s, f(s)) knots from a two-column CSV

    A header row is optional. Values must be finite; sorting and the
    positivity checks are left to the damping constructor.
    """
    target = Path(path)
    if not target.is_file():
        raise ConfigError(f'knots file not found: {target}')

    knots = []
    with target.open(newline='', encoding='utf-8') as handle:
        for number, row in enumerate(csv.reader(handle), start=1):
            if not row or row[0].strip().startswith('#'):
                continue
            if len(row) != 2:
                raise ConfigError(f'{target}: line {number}: knots need exactly two columns')
            first, second = parse_cell(row[0]), parse_cell(row[1])
            if isinstance(first, str) or isinstance(second, str):
                if number == 1:
                    continue
                raise ConfigError(f'{target}: line {number}: knots must be numbers')
            if not (math.isfinite(first) and math.isfinite(second)):
                raise ConfigError(f'{target}: line {number}: knots must be finite')
            knots.append((first, second))

    if not knots:
        raise ConfigError(f'{target}: no knots found')
    return knots
