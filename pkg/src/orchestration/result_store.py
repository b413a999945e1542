"""
Result Store
Writes experiment tables as CSV with a trailing scenario block for reproducibility.
"""
import logging
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import pandas as pd

GENERATED_PREFIX = "# generated: "


class ResultStore:
    """Atomic CSV emission under an output directory."""

    def __init__(self, output_dir: str = "results"):
        self.output_dir = Path(output_dir)
        self.logger = logging.getLogger(__name__)

    def resolve(self, path: Optional[str], default_name: str) -> Path:
        """Explicit paths are used as given; otherwise ``default_name`` under the output directory."""
        if path:
            return Path(path)
        return self.output_dir / default_name

    @staticmethod
    def companion_path(path: Path) -> Path:
        return path.with_name(f"{path.stem}_wide{path.suffix or '.csv'}")

    def write_frame(self, frame: pd.DataFrame, path: Path, scenario: Sequence[Tuple[str, str]],
                    wide: Optional[pd.DataFrame] = None) -> List[Path]:
        """Write ``frame`` (and the wide layout when given); returns the files written."""
        written = [self._write(frame, path, scenario)]
        if wide is not None:
            written.append(self._write(wide, self.companion_path(path), scenario))
        return written

    def _write(self, frame: pd.DataFrame, path: Path, scenario: Sequence[Tuple[str, str]]) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        body = frame.to_csv(index=False, lineterminator="\n")
        trailer = "".join(f"# {key} = {value}\n" for key, value in scenario)
        stamp = f"{GENERATED_PREFIX}{datetime.now(timezone.utc).isoformat(timespec='seconds')}\n"

        fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
                handle.write(body)
                handle.write(trailer)
                handle.write(stamp)
            os.replace(tmp_name, path)
        except Exception as e:
            self.logger.error(f"Error writing {path}: {e}")
            if os.path.exists(tmp_name):
                os.remove(tmp_name)
            raise
        self.logger.info(f"Wrote {len(frame)} rows to {path}")
        return path


def read_result(path: str) -> pd.DataFrame:
    """Load a CSV written by ResultStore, ignoring the trailing comment block."""
    return pd.read_csv(path, comment="#")
