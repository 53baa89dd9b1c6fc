import os
import tempfile
from pathlib import Path

import pytest

# keep caches out of the home directory unless the caller chose a location
if "NODALQUINTIC_CACHE" not in os.environ:
    os.environ["NODALQUINTIC_CACHE"] = str(Path(tempfile.gettempdir()) / "nodalquintic-test-cache")


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False,
                     help="run checks that take minutes (F_{p^4} scans for p = 17, 19)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def store():
    from nodalquintic.lfunction import TraceStore
    from nodalquintic.pointcount import CountCache
    d = Path(os.environ["NODALQUINTIC_CACHE"])
    return TraceStore(d / "traces.csv", CountCache(d / "counts.csv"))


@pytest.fixture(scope="session")
def eig():
    from nodalquintic.brandt import find_eigenvector
    return find_eigenvector("3-w")
