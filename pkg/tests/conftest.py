import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def verdict(capsys):
    """Print exactly one pass/fail line (bypassing capture), then assert."""
    def _verdict(criterion: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[criterion {criterion:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return _verdict
