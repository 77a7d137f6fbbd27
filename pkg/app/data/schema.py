def create_graph_classes_table(conn):
    cursor = conn.cursor()
    createScript = """
        CREATE TABLE IF NOT EXISTS graph_classes (
            mode TEXT NOT NULL,
            n INTEGER NOT NULL,
            seq INTEGER NOT NULL,
            graph6 TEXT NOT NULL,
            diss INTEGER,
            PRIMARY KEY (mode, n, seq)
        )
    """
    cursor.execute(createScript)
    conn.commit()


def create_class_runs_table(conn):
    cursor = conn.cursor()
    createScript = """
        CREATE TABLE IF NOT EXISTS class_runs (
            mode TEXT NOT NULL,
            n INTEGER NOT NULL,
            class_count INTEGER NOT NULL,
            has_diss INTEGER DEFAULT 0,
            strategy TEXT,
            PRIMARY KEY (mode, n)
        )
    """
    cursor.execute(createScript)
    conn.commit()


def create_all_tables(conn):
    create_graph_classes_table(conn)
    create_class_runs_table(conn)
