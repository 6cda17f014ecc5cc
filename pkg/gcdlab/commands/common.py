"""Output helpers shared by the subcommands."""
import csv
import json
import sys
from contextlib import contextmanager
from typing import Any, Iterable, Iterator, List, Optional, Sequence, TextIO, Tuple

from gcdlab.core.errors import ConfigError
from gcdlab.core.logger import get_logger

logger = get_logger(__name__)

# exit codes
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNDECIDED = 3
EXIT_INVARIANT = 4


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """stdout when path is None or "-"."""
    if path in (None, "-"):
        yield sys.stdout
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as e:
        raise ConfigError(f"output: cannot open {path}: {e}", field="output")
    with fh:
        yield fh
    logger.info(f"Wrote {path}")


def float17(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".17g")


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]],
              footer: Optional[Sequence[Tuple[str, Any]]] = None) -> None:
    """
    RFC 4180 (CRLF line ends), header row first. Footer entries become
    trailing label/value rows padded to the header width.
    """
    writer = csv.writer(stream, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    pad = [""] * max(len(header) - 2, 0)
    for label, value in footer or []:
        writer.writerow([label, value, *pad])


def write_json(stream: TextIO, payload: Any) -> None:
    stream.write(json.dumps(payload, indent=2, ensure_ascii=False))
    stream.write("\n")


def parse_primes(text: str) -> List[int]:
    """"2,3,5" -> [2, 3, 5]; an empty string is the empty list."""
    if not text.strip():
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise ConfigError(f"primes: expected comma-separated integers, got {text!r}", field="primes")
