"""
Application Configuration
"""
import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Base configuration"""
    LOG_LEVEL = os.getenv('DAMPLAB_LOG_LEVEL', 'INFO')

    # Computation defaults
    DEFAULT_BUDGET = int(os.getenv('DAMPLAB_BUDGET', '200'))
    DEFAULT_SEED = int(os.getenv('DAMPLAB_SEED', '20240607'))

    # Output
    OUTPUT_DIR = os.getenv('DAMPLAB_OUTPUT_DIR', 'output')
    JSON_SORT_KEYS = False

    DEBUG = False
    TESTING = False

    @staticmethod
    def validate():
        """Validate the numeric environment settings"""
        # (variable, type, default, smallest admissible value)
        checks = [
            ('DAMPLAB_BUDGET', int, '200', 1),
            ('DAMPLAB_SEED', int, '20240607', 0),
        ]
        problems = []

        for key, cast, default, minimum in checks:
            try:
                value = cast(os.getenv(key, default))
            except ValueError:
                problems.append(key)
                continue
            if value < minimum:
                problems.append(key)

        if problems:
            raise ValueError(f"Invalid environment variables: {', '.join(problems)}")

        return True


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    LOG_LEVEL = 'DEBUG'


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    LOG_LEVEL = 'WARNING'
    DEFAULT_BUDGET = 200
    DEFAULT_SEED = 20240607


# Validate configuration on import
Config.validate()
