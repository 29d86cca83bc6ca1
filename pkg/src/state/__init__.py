# state package
from .shared_state import EvaluateTask, InstanceState, ScanState, create_instance_state, create_scan_state

__all__ = ["EvaluateTask", "InstanceState", "ScanState", "create_instance_state", "create_scan_state"]
