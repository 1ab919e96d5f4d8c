"""
Certificate store.
Keeps search-backed complexes, census results and search checkpoints on disk
under CACHE_DIR so expensive searches run once and are re-verified afterwards.
"""

import json
import logging
import shutil
import threading
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from balkit.config import CACHE_DIR
from balkit.exceptions import InputError
from balkit.models import Census, ComplexFile

logger = logging.getLogger(__name__)


class CertificateStore:
    """
    File-backed cache with three areas: complexes/, census/ and checkpoints/.

    All reads and writes go through one re-entrant lock; files are written
    to a temporary name and renamed into place.
    """

    def __init__(self, root: Optional[Path] = None):
        self._root = Path(root) if root is not None else None
        self._lock = threading.RLock()

    @property
    def root(self) -> Path:
        return self._root if self._root is not None else Path(CACHE_DIR)

    def use_root(self, root: Path) -> None:
        with self._lock:
            self._root = Path(root)

    def _area(self, name: str) -> Path:
        path = self.root / name
        path.mkdir(parents=True, exist_ok=True)
        return path

    def _write(self, path: Path, payload: str) -> None:
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(payload)
        tmp.replace(path)

    # ====================================================================================
    # COMPLEX CERTIFICATES
    # ====================================================================================

    def save_complex(self, name: str, data: ComplexFile) -> Path:
        """
        Store a complex certificate under a builder name.

        Args:
            name: Builder name such as "lens16".
            data: Complex in the interchange format.

        Returns:
            Path of the written file.
        """
        with self._lock:
            path = self._area("complexes") / f"{name}.json"
            self._write(path, data.model_dump_json(indent=2))
            logger.info("stored certificate %s (%s)", name, data.digest()[:12])
            return path

    def load_complex(self, name: str) -> Optional[ComplexFile]:
        """
        Load a stored complex certificate.

        Returns:
            The ComplexFile, or None when no certificate exists.

        Raises:
            InputError: If the stored file is corrupt.
        """
        with self._lock:
            path = self.root / "complexes" / f"{name}.json"
            if not path.exists():
                return None
            try:
                return ComplexFile.model_validate_json(path.read_text())
            except ValidationError as e:
                raise InputError(f"certificate {path} is corrupt: {e.errors()[0]['msg']}")

    def list_complexes(self) -> List[str]:
        with self._lock:
            area = self.root / "complexes"
            if not area.exists():
                return []
            return sorted(p.stem for p in area.glob("*.json"))

    # ====================================================================================
    # CENSUS RESULTS
    # ====================================================================================

    def save_census(self, census: Census) -> Path:
        """Store a census keyed by its spec hash."""
        with self._lock:
            path = self._area("census") / f"{census.spec.spec_hash()}.json"
            self._write(path, census.model_dump_json(indent=2))
            return path

    def load_census(self, spec_hash: str) -> Optional[Census]:
        with self._lock:
            path = self.root / "census" / f"{spec_hash}.json"
            if not path.exists():
                return None
            try:
                return Census.model_validate_json(path.read_text())
            except ValidationError as e:
                raise InputError(f"census {path} is corrupt: {e.errors()[0]['msg']}")

    # ====================================================================================
    # SEARCH CHECKPOINTS
    # ====================================================================================

    def save_checkpoint(self, key: str, state: Dict[str, Any]) -> None:
        """
        Record the position of a running search.

        Args:
            key: Spec hash of the search.
            state: JSON-serializable search position (branch path, nodes, solutions).
        """
        with self._lock:
            path = self._area("checkpoints") / f"{key}.json"
            self._write(path, json.dumps(state, sort_keys=True))
            logger.debug("checkpoint %s at %s nodes", key, state.get("nodes"))

    def load_checkpoint(self, key: str) -> Optional[Dict[str, Any]]:
        """
        Raises:
            InputError: If the checkpoint file is truncated or not a JSON object.
        """
        with self._lock:
            path = self.root / "checkpoints" / f"{key}.json"
            if not path.exists():
                return None
            try:
                state = json.loads(path.read_text())
            except ValueError as e:
                raise InputError(f"checkpoint {path} is corrupt: {e}")
            if not isinstance(state, dict):
                raise InputError(f"checkpoint {path} is corrupt: expected an object")
            return state

    def clear_checkpoint(self, key: str) -> None:
        with self._lock:
            path = self.root / "checkpoints" / f"{key}.json"
            if path.exists():
                path.unlink()

    # ====================================================================================
    # MAINTENANCE
    # ====================================================================================

    def clear_all(self) -> None:
        """Remove every stored file. Used by tests."""
        with self._lock:
            if self.root.exists():
                shutil.rmtree(self.root)


# Global store instance
store = CertificateStore()
