"""
Input Validation Utilities
"""
import math
from typing import Any, Dict, List, Sequence

from dampinglab.analysis.models import PRESET_PARAMETERS

RAW_SPECTRUM_KEYS = ('spectrum_kind', 'eigenvalues', 'tail', 'intervals')
DAMPING_FAMILIES = ('zero', 'constant', 'power', 'rotational', 'tabulated')


def validate_budget(budget: Any) -> tuple[bool, str]:
    """
    Validate a mode budget

    Args:
        budget: Number of sampled modes

    Returns:
        Tuple of (is_valid, error_message)
    """
    if budget is None:
        return False, "Budget is required"

    try:
        value = int(str(budget).strip())
    except ValueError:
        return False, "Budget must be an integer"

    if value < 1:
        return False, "Budget must be at least 1"

    return True, ""


def validate_number(value: Any, name: str, positive: bool = False) -> tuple[bool, str]:
    """
    Validate a finite real parameter

    Args:
        value: Raw value (string or number)
        name: Field name used in the message
        positive: Require value > 0

    Returns:
        Tuple of (is_valid, error_message)
    """
    try:
        number = float(value)
    except (ValueError, TypeError):
        return False, f"{name} must be a number"

    if not math.isfinite(number):
        return False, f"{name} must be finite"

    if positive and number <= 0:
        return False, f"{name} must be positive"

    return True, ""


def validate_grid(values: Sequence[float], name: str = 'grid') -> tuple[bool, str]:
    """Validate a nonempty, strictly increasing grid"""
    if values is None or len(values) == 0:
        return False, f"{name} must not be empty"

    if any(not math.isfinite(value) for value in values):
        return False, f"{name} must contain finite values only"

    if any(b <= a for a, b in zip(values, values[1:])):
        return False, f"{name} must be strictly increasing"

    return True, ""


def validate_required_fields(data: Dict[str, Any], required_fields: List[str]) -> Dict[str, str]:
    """
    Validate that required fields are present in data

    Returns:
        Dictionary of validation errors (empty if valid)
    """
    errors = {}

    for field in required_fields:
        if field not in data or data[field] is None or str(data[field]).strip() == '':
            errors[field] = f"{field.replace('_', ' ').title()} is required"

    return errors


def validate_run_config(data: Dict[str, Any]) -> tuple[bool, Dict[str, str]]:
    """
    Validate merged run settings (config file values overridden by flags)

    Exactly one input source is allowed: a model preset or a raw
    spectrum with its damping.

    Args:
        data: Lower-case keys as in the config-file schema

    Returns:
        Tuple of (is_valid, errors_dict)
    """
    errors = {}

    model = data.get('model')
    raw = [key for key in RAW_SPECTRUM_KEYS if data.get(key) not in (None, '')]

    if model and raw:
        errors['model'] = f"Use either a model preset or a raw spectrum, not both ({', '.join(raw)})"
    elif not model and not raw:
        errors['model'] = "A model preset or a raw spectrum is required"

    if model:
        key = str(model).strip().lower()
        if key not in PRESET_PARAMETERS:
            errors['model'] = f"Model must be one of: {', '.join(PRESET_PARAMETERS)}"
        else:
            errors.update(validate_required_fields(data, list(PRESET_PARAMETERS[key])))

    for name in ('theta', 'omega'):
        if data.get(name) is not None:
            is_valid, message = validate_number(data[name], name.title())
            if not is_valid:
                errors[name] = message

    if data.get('m') is not None:
        is_valid, message = validate_number(data['m'], 'Mass', positive=True)
        if not is_valid:
            errors['m'] = message

    if raw:
        family = str(data.get('damping') or 'zero').strip().lower()
        if family not in DAMPING_FAMILIES:
            errors['damping'] = f"Damping must be one of: {', '.join(DAMPING_FAMILIES)}"
        elif family == 'tabulated' and not data.get('damping_knots'):
            errors['damping_knots'] = "Tabulated damping needs a knots CSV file"

    if data.get('modes') is not None:
        is_valid, message = validate_budget(data['modes'])
        if not is_valid:
            errors['modes'] = message

    for lower_key, upper_key in (('t_min', 't_max'), ('lambda_min', 'lambda_max')):
        bounds = {}
        for key in (lower_key, upper_key):
            if data.get(key) is not None:
                is_valid, message = validate_number(data[key], key.upper())
                if is_valid:
                    bounds[key] = float(data[key])
                else:
                    errors[key] = message
        if len(bounds) == 2 and bounds[upper_key] <= bounds[lower_key]:
            errors[upper_key] = f"{upper_key.upper()} must exceed {lower_key.upper()}"

    for key in ('t_count', 'lambda_count'):
        if data.get(key) is not None:
            is_valid, message = validate_budget(data[key])
            if not is_valid:
                errors[key] = message.replace('Budget', key.upper())

    return len(errors) == 0, errors
