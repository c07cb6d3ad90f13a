import json
import os
import subprocess
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]
DATA = Path(os.environ.get("SPARSECUT_DATA_DIR", ROOT / "data"))
SCHEMA = Path(os.environ.get("SPARSECUT_SCHEMA", ROOT / "schemas" / "report.schema.json"))


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def schema():
    return json.loads(SCHEMA.read_text())


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("SPARSECUT_CLI")
    if not exe:
        pytest.skip("SPARSECUT_CLI not set")

    def run(*args, check=True):
        proc = subprocess.run([exe, *map(str, args)], capture_output=True, text=True)
        if check and proc.returncode != 0:
            raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
        return proc

    return run
