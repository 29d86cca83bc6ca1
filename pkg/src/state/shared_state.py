"""
Shared State Definitions for the Analysis Pipelines

TypedDicts passed between the nodes of the LangGraph workflows: one for
analyzing a single (word, torus, layout) instance and one for a word scan.
"""

import operator
from typing import Annotated, Any, Dict, List, Optional, TypedDict

from src.config import ScanConfig


def add_log(left: List[str], right: List[str]) -> List[str]:
    """Reducer function to accumulate stage messages."""
    return left + right


class InstanceState(TypedDict):
    """
    State of the single-instance workflow (build -> verify -> parameters -> report).

    Attributes:
        word_text: Direction word as typed by the user
        lx, ly: Torus size
        layout_spec: "row-alt" or "coset:<bits>"
        w_max: Distance screen cutoff
        strict_wrap: Reject wrap collisions instead of cancelling them
        verbose: Print stage progress to stderr
        code: CodeInstance built by the build node
        commutes: Result of the commutation check
        parameters: CodeParameters from the parameters node
        report: Final report dictionary
        log: Stage messages (accumulates via reducer)
        current_stage: Which node ran last
        error: Any error message
    """
    word_text: str
    lx: int
    ly: int
    layout_spec: str
    w_max: int
    strict_wrap: bool
    verbose: bool
    code: Optional[Any]
    commutes: Optional[bool]
    parameters: Optional[Any]
    report: Optional[Dict[str, Any]]
    log: Annotated[List[str], add_log]
    current_stage: Optional[str]
    error: Optional[str]


class ScanState(TypedDict):
    """
    State of the scan workflow (enumerate -> evaluate x N -> collect).

    Attributes:
        config: Validated ScanConfig
        verbose: Print stage progress to stderr
        words: Compressed class representatives to evaluate
        records: ScanRecords from the evaluate fan-out (concatenated)
        rejected: (word, reason) pairs from the evaluate fan-out
        results: Records in the documented sort order
        log: Stage messages (accumulates via reducer)
        current_stage: Which node ran last
        error: Any error message
    """
    config: ScanConfig
    verbose: bool
    words: List[str]
    records: Annotated[List[Any], operator.add]
    rejected: Annotated[List[Any], operator.add]
    results: Optional[List[Any]]
    log: Annotated[List[str], add_log]
    current_stage: Optional[str]
    error: Optional[str]


def create_instance_state(
    word_text: str,
    lx: int,
    ly: int,
    layout_spec: str = "row-alt",
    w_max: int = 4,
    strict_wrap: bool = False,
    verbose: bool = False,
) -> InstanceState:
    """
    Create an initial state for a single-instance run.

    Returns:
        Initialized InstanceState
    """
    return InstanceState(
        word_text=word_text,
        lx=lx,
        ly=ly,
        layout_spec=layout_spec,
        w_max=w_max,
        strict_wrap=strict_wrap,
        verbose=verbose,
        code=None,
        commutes=None,
        parameters=None,
        report=None,
        log=[],
        current_stage=None,
        error=None,
    )


def create_scan_state(config: ScanConfig, verbose: bool = False) -> ScanState:
    """
    Create the initial state for a scan.

    Args:
        config: Validated scan configuration
        verbose: Print stage progress to stderr

    Returns:
        ScanState with empty accumulators
    """
    return ScanState(
        config=config,
        verbose=verbose,
        words=[],
        records=[],
        rejected=[],
        results=None,
        log=[],
        current_stage=None,
        error=None,
    )


class EvaluateTask(TypedDict):
    """Payload of one scan fan-out task."""
    word: str
    config: ScanConfig
    verbose: bool
