import pandas as pd


def insert_classes(conn, mode, n, lines, strategy=None):
    """Replace the stored classes of (mode, n) with the given graph6 lines."""
    cursor = conn.cursor()
    cursor.execute("DELETE FROM graph_classes WHERE mode = ? AND n = ?", (mode, n))
    cursor.executemany(
        "INSERT INTO graph_classes (mode, n, seq, graph6, diss) VALUES (?, ?, ?, ?, NULL)",
        ((mode, n, seq, line) for seq, line in enumerate(lines))
    )
    cursor.execute(
        "INSERT OR REPLACE INTO class_runs (mode, n, class_count, has_diss, strategy) VALUES (?, ?, ?, 0, ?)",
        (mode, n, len(lines), strategy)
    )
    conn.commit()
    return len(lines)


def update_diss_values(conn, mode, n, values):
    """Store dissociation numbers aligned with the class sequence numbers."""
    cursor = conn.cursor()
    cursor.executemany(
        "UPDATE graph_classes SET diss = ? WHERE mode = ? AND n = ? AND seq = ?",
        ((value, mode, n, seq) for seq, value in enumerate(values))
    )
    cursor.execute("UPDATE class_runs SET has_diss = 1 WHERE mode = ? AND n = ?", (mode, n))
    conn.commit()
    return cursor.rowcount


def get_class_run(conn, mode, n):
    """(class_count, has_diss) for a stored run, or None."""
    cursor = conn.cursor()
    cursor.execute("SELECT class_count, has_diss FROM class_runs WHERE mode = ? AND n = ?", (mode, n))
    return cursor.fetchone()


def get_classes(conn, mode, n):
    """Stored classes of (mode, n) ordered by sequence number, as a DataFrame."""
    return pd.read_sql_query(
        "SELECT seq, graph6, diss FROM graph_classes WHERE mode = ? AND n = ? ORDER BY seq",
        conn,
        params=(mode, n)
    )


def get_class_runs(conn):
    """Summary of every stored run as a DataFrame."""
    return pd.read_sql_query(
        "SELECT mode, n, class_count, has_diss, strategy FROM class_runs ORDER BY mode, n",
        conn
    )


def get_diss_distribution(conn, mode, n):
    """Class counts per dissociation number for one stored run."""
    return pd.read_sql_query(
        """
        SELECT diss, COUNT(*) AS class_count
        FROM graph_classes
        WHERE mode = ? AND n = ? AND diss IS NOT NULL
        GROUP BY diss
        ORDER BY diss
        """,
        conn,
        params=(mode, n)
    )
