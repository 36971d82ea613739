import sys
from pathlib import Path

# Allow running the smoke tests against a plain CMake build (module built with
# -DEVA_BUILD_PYTHON=ON) without installing the wheel.
repo = Path(__file__).resolve().parents[2]
for candidate in (repo / "python", repo / "build"):
    if candidate.is_dir():
        sys.path.insert(0, str(candidate))
