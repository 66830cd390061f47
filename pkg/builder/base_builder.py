"""
Base builder for the result tables.
Holds the output folder and the schema check shared by every builder.
"""

import logging
from pathlib import Path
from typing import Optional, Union

import pandas as pd

from builder.expected_columns import get_columns_list, validate_columns
from valve.errors import ValidationError

logger = logging.getLogger(__name__)


class BaseBuilder:
    """Base class for all table builders"""

    def __init__(self, output_path: Union[str, Path] = "data/runs"):
        self.output_path = Path(output_path) if isinstance(output_path, str) else output_path

    def finalize(self, table: str, df: pd.DataFrame) -> pd.DataFrame:
        """Order columns per schema and fail loudly on a schema mismatch."""
        errors = validate_columns(table, list(df.columns))
        if errors:
            raise ValidationError(f"table {table!r} does not match its schema: {'; '.join(errors)}")
        logger.debug(f"Built {table}: {len(df)} rows")
        return df[get_columns_list(table)].reset_index(drop=True)

    def path_for(self, name: str, suffix: Optional[str] = ".csv") -> Path:
        return self.output_path / f"{name}{suffix or ''}"
