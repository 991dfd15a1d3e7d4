"""
Utility Module Exports
"""
from dampinglab.utils.responses import (
    success_response,
    error_response,
    write_csv,
    write_json,
    write_atomic,
    format_number
)

from dampinglab.utils.validators import (
    validate_budget,
    validate_number,
    validate_grid,
    validate_run_config
)

from dampinglab.utils.csv_io import (
    read_csv_table,
    read_knots_csv
)

__all__ = [
    'success_response',
    'error_response',
    'write_csv',
    'write_json',
    'write_atomic',
    'format_number',
    'validate_budget',
    'validate_number',
    'validate_grid',
    'validate_run_config',
    'read_csv_table',
    'read_knots_csv'
]
