"""
Input resolution middleware
"""
from dampinglab.middleware.inputs import model_options, require_model, require_semiuniform

__all__ = [
    'model_options',
    'require_model',
    'require_semiuniform'
]
