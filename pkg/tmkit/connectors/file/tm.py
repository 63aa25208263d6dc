import logging
from pathlib import Path
from typing import Optional, Union

from ...core.base import BaseConnector
from ...core.types import ModelDocument
from ...parser.parser import TmParser
from ...parser.writer import round_trip


class TmFileConnector(BaseConnector):
    """Reads and writes ``.tm`` model files."""

    def __init__(
        self,
        path: Union[str, Path],
        parser: Optional[TmParser] = None,
        logger: Optional[logging.Logger] = None,
    ):
        self.path = Path(path)
        self.logger = logger or logging.getLogger(__name__)
        self.parser = parser or TmParser(logger=self.logger)

    def load(self) -> ModelDocument:
        """
        Parse the file into a validated document.

        Returns:
            ModelDocument: the parsed document

        Raises:
            OSError: the file cannot be read
            ParseFailure: the text is not a valid model
        """
        try:
            data = self.path.read_bytes()
        except OSError as e:
            self.logger.error(f"Error reading model file {self.path}: {str(e)}")
            raise
        self.logger.info(f"Loaded {len(data)} bytes from {self.path}")
        return self.parser.parse_bytes(data)

    def save(self, doc: ModelDocument) -> None:
        """Write the canonical text of ``doc``."""
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text(round_trip(doc), encoding="utf-8", newline="\n")
        except OSError as e:
            self.logger.error(f"Error saving model file {self.path}: {str(e)}")
            raise
