import logging
import os
import sys
from typing import Optional

from src.types.errors import SensorfixError

from .args import parse_args
from .commands import dispatch

log = logging.getLogger(__name__)


def setup_logging():
    name = os.environ.get("SENSORFIX_LOG", "INFO").upper()
    level = getattr(logging, name, None)
    logging.basicConfig(
        level=level if isinstance(level, int) else logging.INFO,
        format="%(asctime)s | %(name)s | %(levelname)s | %(message)s",
    )


def main(argv: Optional[list[str]] = None) -> int:
    setup_logging()
    inv = parse_args(argv)
    try:
        path = dispatch(inv)
    except (SensorfixError, OSError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    log.info(f"{inv.command} done, manifest at {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
