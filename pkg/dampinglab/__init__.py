"""
Damping Lab Application Factory
"""
from flask import Flask
from dampinglab.config import Config
from dampinglab.errors.handlers import register_error_handlers


def create_app(config_class=Config):
    """Create and configure the laboratory application"""
    app = Flask(__name__)
    app.config.from_object(config_class)

    app.logger.setLevel(app.config['LOG_LEVEL'])

    # Stable key order in every JSON report
    app.json.sort_keys = app.config['JSON_SORT_KEYS']

    # Register command blueprints
    from dampinglab.commands.spectrum import spectrum_bp
    from dampinglab.commands.classify import classify_bp
    from dampinglab.commands.simulate import simulate_bp
    from dampinglab.commands.psi import psi_bp
    from dampinglab.commands.resolvent import resolvent_bp
    from dampinglab.commands.bt_check import bt_check_bp
    from dampinglab.commands.table import table_bp

    app.register_blueprint(spectrum_bp)
    app.register_blueprint(classify_bp)
    app.register_blueprint(simulate_bp)
    app.register_blueprint(psi_bp)
    app.register_blueprint(resolvent_bp)
    app.register_blueprint(bt_check_bp)
    app.register_blueprint(table_bp)

    # Error handlers wrap the commands, so they come last
    register_error_handlers(app)

    return app
