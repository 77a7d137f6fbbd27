"""
GraphStore service: on-disk cache of enumerated isomorphism classes.
Classes are stored per (mode, n) as ordered graph6 lines with optional
dissociation numbers, so repeated searches skip enumeration.
"""

import logging
import sqlite3
from typing import Optional, Sequence

import pandas as pd

from app.data.db import connect_database, database_path
from app.data.graph_classes import (
    get_class_run,
    get_class_runs,
    get_classes,
    get_diss_distribution,
    insert_classes,
    update_diss_values,
)
from app.data.schema import create_all_tables
from models.enum_stream import EnumStream

logger = logging.getLogger(__name__)


class GraphStore:
    """Manages the sqlite class store.

    The connection is opened lazily and the schema created on first use.
    """

    def __init__(self, db_path: str):
        """Initialize GraphStore with a database path.

        Args:
            db_path: SQLite file path, or ":memory:"
        """
        self._db_path = str(db_path)
        self._connection: Optional[sqlite3.Connection] = None

    @classmethod
    def in_spill_dir(cls, spill_dir: str) -> "GraphStore":
        return cls(str(database_path(spill_dir)))

    def connect(self) -> sqlite3.Connection:
        """Open the connection and make sure the tables exist."""
        if self._connection is None:
            self._connection = connect_database(self._db_path)
            create_all_tables(self._connection)
        return self._connection

    def close(self) -> None:
        if self._connection is not None:
            self._connection.close()
            self._connection = None

    def has_classes(self, mode: str, n: int) -> bool:
        return get_class_run(self.connect(), mode, n) is not None

    def has_diss(self, mode: str, n: int) -> bool:
        run = get_class_run(self.connect(), mode, n)
        return run is not None and bool(run[1])

    def save_stream(self, stream: EnumStream, strategy: Optional[str] = None) -> int:
        """Store a full (unfiltered) class list; diss values are stored too when present.

        Returns:
            int: Number of classes written
        """
        conn = self.connect()
        count = insert_classes(conn, stream.get_mode(), stream.get_order(), stream.get_lines(), strategy)
        if stream.has_diss():
            update_diss_values(conn, stream.get_mode(), stream.get_order(), stream.get_diss())
        logger.info("stored %d %s classes of order %d", count, stream.get_mode(), stream.get_order())
        return count

    def save_diss(self, mode: str, n: int, values: Sequence[int]) -> None:
        update_diss_values(self.connect(), mode, n, values)

    def load_stream(self, mode: str, n: int) -> Optional[EnumStream]:
        """Stored classes of (mode, n) as an EnumStream, or None if absent."""
        run = get_class_run(self.connect(), mode, n)
        if run is None:
            return None
        df = get_classes(self.connect(), mode, n)
        lines = df["graph6"].tolist()
        diss = [int(v) for v in df["diss"].tolist()] if run[1] else None
        logger.info("loaded %d %s classes of order %d from %s", len(lines), mode, n, self._db_path)
        return EnumStream(n, mode, lines, diss)

    def list_runs(self) -> pd.DataFrame:
        """Summary table of every stored (mode, n)."""
        return get_class_runs(self.connect())

    def diss_distribution(self, mode: str, n: int) -> pd.DataFrame:
        return get_diss_distribution(self.connect(), mode, n)

    def __enter__(self):
        self.connect()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
