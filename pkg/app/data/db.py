import sqlite3
from pathlib import Path

DB_NAME = "graph_classes.db"


def database_path(spill_dir):
    """Path of the class store inside a spill directory."""
    return Path(spill_dir) / DB_NAME


def connect_database(db_path):
    """Connect to the SQLite class store, creating its directory if needed."""
    db_path = Path(db_path)
    if str(db_path) != ":memory:":
        db_path.parent.mkdir(parents=True, exist_ok=True)
    return sqlite3.connect(str(db_path))
