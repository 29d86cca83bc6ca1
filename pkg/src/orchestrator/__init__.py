# orchestrator package
from .pipeline import run_instance_workflow, run_scan_workflow, scan

__all__ = ["run_instance_workflow", "run_scan_workflow", "scan"]
