import os
import warnings

import pytest

from torus_scan import set_workers

warnings.filterwarnings("ignore", message=".*TBB.*")


@pytest.fixture(scope="session", autouse=True)
def _workers():
    set_workers(int(os.environ.get("TORUS_SCAN_THREADS", os.cpu_count() or 1)))
