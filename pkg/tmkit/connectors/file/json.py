import logging
from pathlib import Path
from typing import Optional, Union

from ...core.base import BaseConnector
from ...core.types import ModelDocument
from ...export.canonical import from_json, to_json
from ...simulation.trace import Trace


class JsonFileConnector(BaseConnector):
    """Reads and writes canonical JSON documents and traces."""

    def __init__(self, path: Union[str, Path], logger: Optional[logging.Logger] = None):
        self.path = Path(path)
        self.logger = logger or logging.getLogger(__name__)

    def load(self) -> Union[ModelDocument, Trace]:
        try:
            text = self.path.read_text(encoding="utf-8")
        except OSError as e:
            self.logger.error(f"Error reading JSON file {self.path}: {str(e)}")
            raise
        return from_json(text)

    def save(self, value: Union[ModelDocument, Trace]) -> None:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text(to_json(value), encoding="utf-8")
        except OSError as e:
            self.logger.error(f"Error saving JSON file {self.path}: {str(e)}")
            raise
        self.logger.info(f"Wrote {type(value).__name__} to {self.path}")
