"""In-process CLI invocation helpers (used by tests and self-checks)."""

from __future__ import annotations

import io
import json
from contextlib import redirect_stdout
from typing import List, Tuple


def run_capture(argv: List[str]) -> Tuple[int, str]:
    """Run the command line entry point, capturing stdout and the exit code."""
    from . import cli

    buf = io.StringIO()
    try:
        with redirect_stdout(buf):
            code = cli.main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code if isinstance(exc.code, int) else 2
    return code, buf.getvalue()


def parse_structured(text: str) -> dict:
    """Parse a structured-format CLI output back into its facts."""
    return json.loads(text)
