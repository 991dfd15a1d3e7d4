"""
Command blueprints

Each module holds one Blueprint whose CLI group is flattened into the
application's top-level command group.
"""
