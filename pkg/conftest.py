"""
Shared pytest fixtures
"""
import pytest

from dampinglab import create_app
from dampinglab.config import TestingConfig


@pytest.fixture
def app():
    return create_app(TestingConfig)


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def output_dir(tmp_path):
    return tmp_path / 'reports'
