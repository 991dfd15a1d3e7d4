"""
Damping Lab - Command Line Entry Point

Usage:
    python run.py classify --model wave --theta -1
    python run.py spectrum --model beam-rot --theta 1 --omega 0.005 --modes 200
"""
import os

from dotenv import load_dotenv
from flask.cli import FlaskGroup

# Load environment variables
load_dotenv()

from dampinglab import create_app  # noqa: E402
from dampinglab.config import DevelopmentConfig, ProductionConfig  # noqa: E402


def make_app():
    """Pick the configuration from DAMPLAB_ENV (development or production)"""
    if os.getenv('DAMPLAB_ENV', 'production') == 'development':
        return create_app(DevelopmentConfig)
    return create_app(ProductionConfig)


cli = FlaskGroup(create_app=make_app, add_default_commands=False, load_dotenv=False,
                 help='Spectral and stability lab for abstract damped wave equations')

if __name__ == '__main__':
    cli()
