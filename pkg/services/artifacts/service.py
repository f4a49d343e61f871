import csv
import json
from pathlib import Path
from typing import Any, Dict, List


class ArtifactStore:
    def __init__(self, root: Path):
        self.root = Path(root)

    def _path(self, name: str) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        return self.root / name

    def write_rows(self, name: str, columns: List[str], rows: List[Dict[str, Any]]) -> Path:
        """Write rows as CSV with a fixed column order. Extra keys are an error."""
        path = self._path(name)
        with path.open("w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=columns, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return path

    def write_json(self, name: str, data: Dict[str, Any]) -> Path:
        path = self._path(name)
        path.write_text(json.dumps(data, indent=2, sort_keys=False) + "\n")
        return path

    def read_json(self, name: str) -> Dict[str, Any]:
        return json.loads((self.root / name).read_text())

    def read_rows(self, name: str) -> List[Dict[str, str]]:
        with (self.root / name).open(newline="") as f:
            return list(csv.DictReader(f))
