"""
Report Formatter Tool

Turns command results into text reports, CSV tables and JSON. Tables go
through pandas so that text and CSV share one fixed column order.
"""

import json
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

Section = Tuple[str, List[str]]


def format_vec(v: Sequence[int]) -> str:
    return f"({v[0]},{v[1]})"


def format_vec_set(vectors: Iterable[Sequence[int]]) -> str:
    return "{" + ", ".join(format_vec(v) for v in sorted(tuple(v) for v in vectors)) + "}"


def render_report(title: str, sections: List[Section], footer: Optional[str] = None) -> str:
    """Banner, '## ' sections and an optional footer line."""
    parts = [f"{'='*60}\n{title.upper()}\n{'='*60}"]
    for heading, lines in sections:
        if not lines:
            continue
        parts.append(f"## {heading}\n" + "\n".join(f"  {line}" for line in lines))
    if footer:
        parts.append(f"{'='*60}\n{footer}\n{'='*60}")
    return "\n\n".join(parts) + "\n"


def records_frame(rows: List[Dict[str, Any]], columns: Sequence[str]) -> pd.DataFrame:
    """DataFrame with exactly `columns`, in order (empty input keeps the header)."""
    return pd.DataFrame(rows, columns=list(columns))


def format_table(frame: pd.DataFrame) -> str:
    if frame.empty:
        return "(no rows)\n" + ",".join(frame.columns) + "\n"
    return frame.to_string(index=False) + "\n"


def to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def to_json_lines(frame: pd.DataFrame) -> str:
    if frame.empty:
        return ""
    return frame.to_json(orient="records", lines=True, force_ascii=False).rstrip("\n") + "\n"


def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=False, default=str) + "\n"


def flatten(payload: Dict[str, Any]) -> pd.DataFrame:
    """One-row table of a nested report, for --format csv on non-table commands."""
    frame = pd.json_normalize(payload, sep=".")
    for column in frame.columns:
        frame[column] = frame[column].map(
            lambda value: json.dumps(value) if isinstance(value, (list, dict)) else value
        )
    return frame
