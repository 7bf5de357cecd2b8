"""Write run artifacts to disk."""

import contextlib
import logging
import os
import tempfile
from pathlib import Path

logger = logging.getLogger(__name__)


class ArtifactWriter:
    """Write CSV/JSON artifacts with atomic replace."""

    def __init__(self, overwrite: bool = True) -> None:
        self.overwrite = overwrite

    def write(self, path: Path, content: str) -> Path:
        """Write ``content`` to ``path`` through a temporary file in the same directory.

        Args:
            path: Destination file; missing parent directories are created
            content: Text to write

        Returns:
            The destination path

        Raises:
            FileExistsError: If the file exists and overwrite is disabled
            OSError: If the write fails
        """
        path = Path(path)
        if not self.overwrite and path.exists():
            raise FileExistsError(f"Artifact already exists: {path}")
        path.parent.mkdir(parents=True, exist_ok=True)

        temp_fd, temp_path = tempfile.mkstemp(dir=path.parent, prefix=".tmp_", suffix=path.suffix)
        try:
            with os.fdopen(temp_fd, "w", encoding="utf-8", newline="") as f:
                f.write(content)
                f.flush()
                os.fsync(f.fileno())
            os.replace(temp_path, path)
        except Exception as e:
            with contextlib.suppress(OSError):
                os.unlink(temp_path)
            logger.error(f"Failed to write artifact: {e}")
            raise OSError(f"Failed to write artifact to {path}: {e}") from e

        logger.info(f"Wrote artifact: {path}")
        return path
