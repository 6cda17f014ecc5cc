import aiosqlite
import json
import os
from datetime import datetime
from typing import Any, Dict, List, Optional
from gcdlab import config
from gcdlab.core.logger import get_logger

logger = get_logger(__name__)

DB_PATH = config.SQLITE_DB_PATH

async def init_db():
    """Initializes the run ledger database."""
    db_dir = os.path.dirname(DB_PATH)
    if db_dir and not os.path.exists(db_dir):
        os.makedirs(db_dir, exist_ok=True)

    async with aiosqlite.connect(DB_PATH) as db:
        await db.execute("""
            CREATE TABLE IF NOT EXISTS runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                command TEXT,
                params TEXT,
                started_at DATETIME,
                exit_code INTEGER,
                summary TEXT
            )
        """)
        await db.execute("CREATE INDEX IF NOT EXISTS idx_command ON runs(command)")
        await db.commit()
        logger.debug(f"Run ledger initialized at {DB_PATH}")

async def log_run(command: str, params: Dict[str, Any], started_at: datetime, exit_code: int, summary: str) -> Optional[int]:
    """Records one CLI invocation. Returns the row id, or None if the write failed."""
    try:
        async with aiosqlite.connect(DB_PATH) as db:
            cursor = await db.execute(
                "INSERT INTO runs (command, params, started_at, exit_code, summary) VALUES (?, ?, ?, ?, ?)",
                (command, json.dumps(params, sort_keys=True, default=str), started_at.isoformat(), exit_code, summary)
            )
            await db.commit()
            return cursor.lastrowid
    except Exception as e:
        logger.error(f"Failed to log run: {e}")
        return None

async def get_runs(limit: int = 20, command: Optional[str] = None) -> List[Dict[str, Any]]:
    """Most recent runs first."""
    try:
        async with aiosqlite.connect(DB_PATH) as db:
            db.row_factory = aiosqlite.Row
            if command:
                cursor = await db.execute(
                    "SELECT * FROM runs WHERE command = ? ORDER BY id DESC LIMIT ?", (command, limit)
                )
            else:
                cursor = await db.execute("SELECT * FROM runs ORDER BY id DESC LIMIT ?", (limit,))
            rows = await cursor.fetchall()
            out = []
            for row in rows:
                record = dict(row)
                record["params"] = json.loads(record["params"]) if record["params"] else {}
                out.append(record)
            return out
    except Exception as e:
        logger.error(f"Failed to retrieve runs: {e}")
        return []

async def clear_runs(command: Optional[str] = None):
    """Deletes the ledger, or only the rows of one command."""
    try:
        async with aiosqlite.connect(DB_PATH) as db:
            if command:
                await db.execute("DELETE FROM runs WHERE command = ?", (command,))
            else:
                await db.execute("DELETE FROM runs")
            await db.commit()
            logger.info(f"Run ledger cleared{' for ' + command if command else ''}")
    except Exception as e:
        logger.error(f"Failed to clear runs: {e}")
