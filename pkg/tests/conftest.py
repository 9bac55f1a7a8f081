import subprocess
import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def run_cli():
    """Run the command line as a subprocess; stdout/stderr come back as bytes
    so byte-determinism assertions are possible."""

    def _run(*args: str) -> subprocess.CompletedProcess:
        return subprocess.run(
            [sys.executable, "-m", "gyrocal.cli", *args],
            capture_output=True,
            cwd=REPO_ROOT,
        )

    return _run


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN_DIR
