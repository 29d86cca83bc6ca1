"""
Pipeline Orchestrator

LangGraph workflows tying the tools and workers together:

- instance workflow: build -> verify -> parameters -> report for one
  (word, torus, layout); a non-commuting layout skips straight to report.
- scan workflow: enumerate -> evaluate (one Send task per word, run with
  `max_concurrency` workers) -> collect, which sorts deterministically.
"""

import sys
from typing import Any, Dict, List, Literal, Union

from langgraph.graph import END, StateGraph

try:
    from langgraph.types import Send
except ImportError:  # langgraph < 0.2.40
    from langgraph.constants import Send

from ..config import ScanConfig
from ..errors import DirectionalCodeError
from ..state.shared_state import (
    EvaluateTask,
    InstanceState,
    ScanState,
    create_instance_state,
    create_scan_state,
)
from ..tools.gf2linalg import rank
from ..tools.layouts import parse_layout
from ..tools.parameters import code_parameters
from ..tools.pattern import word_lattice
from ..tools.torus import CheckerboardTorus, build_code, verify_commutation
from ..tools.word import format_word, parse_word
from ..workers.evaluator import ScanRecord, evaluate_word, evaluate_word_layouts
from ..workers.word_enumerator import enumerate_words


def _say(state: Dict[str, Any], message: str) -> None:
    if state.get("verbose"):
        print(message, file=sys.stderr)


# --- instance workflow ------------------------------------------------------

def build_node(state: InstanceState) -> Dict[str, Any]:
    """Parse the word and layout, then build H_X and H_Z."""
    _say(state, f"\n🧱 [Builder] Realizing {state['word_text']} on {state['lx']}x{state['ly']}...")
    try:
        word = parse_word(state["word_text"])
        torus = CheckerboardTorus(state["lx"], state["ly"])
        lattice = word_lattice(word) if state["layout_spec"].startswith("coset:") else None
        layout = parse_layout(state["layout_spec"], torus, lattice)
        code = build_code(word, torus, layout, strict_wrap=state["strict_wrap"])
    except (DirectionalCodeError, ValueError) as e:
        _say(state, f"   ✗ Error: {e}")
        return {"error": str(e), "current_stage": "build", "log": [f"build failed: {e}"]}
    _say(state, f"   ✓ H_X {code.hx.rows}x{code.n}, H_Z {code.hz.rows}x{code.n}")
    return {
        "code": code,
        "current_stage": "build",
        "log": [f"built {format_word(word)} with {code.hx.rows} X and {code.hz.rows} Z checks"],
    }


def verify_node(state: InstanceState) -> Dict[str, Any]:
    """
    Node that checks the built code.

    Records whether every X check overlaps every Z check evenly.
    """
    _say(state, "\n🔍 [Verifier] Checking H_X H_Z^T = 0...")
    commutes = verify_commutation(state["code"])
    _say(state, "   ✓ All checks commute" if commutes else "   ✗ Anticommuting checks found")
    return {
        "commutes": commutes,
        "current_stage": "verify",
        "log": ["checks commute" if commutes else "checks do not commute"],
    }


def parameters_node(state: InstanceState) -> Dict[str, Any]:
    """
    Node that computes n, k and the distance screen.

    Only reached for commuting instances.
    """
    _say(state, f"\n📐 [Parameters] Ranks and distance screen up to weight {state['w_max']}...")
    try:
        params = code_parameters(state["code"], state["w_max"])
    except DirectionalCodeError as e:
        _say(state, f"   ✗ Error: {e}")
        return {"error": str(e), "current_stage": "parameters", "log": [f"parameters failed: {e}"]}
    _say(state, f"   ✓ n={params.n} k={params.k} dX={params.d_x} dZ={params.d_z}")
    return {
        "parameters": params,
        "current_stage": "parameters",
        "log": [f"n={params.n} k={params.k} dX={params.d_x} dZ={params.d_z}"],
    }


def report_node(state: InstanceState) -> Dict[str, Any]:
    """Node that assembles the CLI report dict; rank and distance keys only when parameters ran."""
    code = state["code"]
    report: Dict[str, Any] = {
        "word": format_word(code.word),
        "lx": code.torus.lx,
        "ly": code.torus.ly,
        "layout": code.layout.descriptor,
        "n": code.n,
        "x_checks": code.hx.rows,
        "z_checks": code.hz.rows,
        "commutes": bool(state.get("commutes")),
    }
    params = state.get("parameters")
    if params is not None:
        report.update(
            {
                "rank_hx": rank(code.hx),
                "rank_hz": rank(code.hz),
                **params.as_dict(),
            }
        )
    _say(state, "   ✓ Report assembled")
    return {"report": report, "current_stage": "report", "log": ["report assembled"]}


def should_continue(state: InstanceState) -> Literal["verify", "parameters", "report", "end"]:
    """
    Determine the next step in the workflow based on current state.
    """
    if state.get("error"):
        return "end"
    stage = state.get("current_stage")
    if stage == "build":
        return "verify"
    if stage == "verify":
        return "parameters" if state.get("commutes") else "report"
    if stage == "parameters":
        return "report"
    return "end"


def create_instance_workflow():
    """
    Create the LangGraph workflow for a single code instance.

    Returns:
        Compiled workflow graph
    """
    workflow = StateGraph(InstanceState)

    workflow.add_node("build", build_node)
    workflow.add_node("verify", verify_node)
    workflow.add_node("parameters", parameters_node)
    workflow.add_node("report", report_node)

    workflow.set_entry_point("build")
    routes = {"verify": "verify", "parameters": "parameters", "report": "report", "end": END}
    for stage in ("build", "verify", "parameters"):
        workflow.add_conditional_edges(stage, should_continue, routes)
    workflow.add_edge("report", END)

    return workflow.compile()


def run_instance_workflow(
    word_text: str,
    lx: int,
    ly: int,
    layout_spec: str = "row-alt",
    w_max: int = 4,
    strict_wrap: bool = False,
    verbose: bool = False,
) -> InstanceState:
    """Run the instance workflow and return its final state."""
    app = create_instance_workflow()
    initial = create_instance_state(word_text, lx, ly, layout_spec, w_max, strict_wrap, verbose)
    _say(initial, f"\n{'='*60}\n🚀 Analyzing {word_text} on {lx}x{ly} ({layout_spec})\n{'='*60}")
    return app.invoke(initial)


# --- scan workflow ----------------------------------------------------------

def enumerate_node(state: ScanState) -> Dict[str, Any]:
    """
    Node that lists one representative word per symmetry class.

    Args:
        state: Scan state carrying the ScanConfig

    Returns:
        State update with the compressed word texts
    """
    cfg = state["config"]
    _say(state, f"\n🔢 [Enumerator] Words of length {cfg.min_len}..{cfg.max_len}...")
    words = [format_word(w) for w in enumerate_words(cfg)]
    _say(state, f"   ✓ {len(words)} class representatives")
    return {"words": words, "current_stage": "enumerate", "log": [f"{len(words)} words enumerated"]}


def dispatch_words(state: ScanState) -> Union[List[Send], str]:
    """Fan out one evaluate task per word; an empty range goes straight to collect."""
    if state.get("error"):
        return END
    if not state["words"]:
        return "collect"
    return [
        Send("evaluate", EvaluateTask(word=w, config=state["config"], verbose=state["verbose"]))
        for w in state["words"]
    ]


def evaluate_node(task: EvaluateTask) -> Dict[str, Any]:
    """Node that evaluates one word under every layout the rule yields."""
    cfg = task["config"]
    word = parse_word(task["word"])
    if cfg.layout_rule == "coset":
        outcomes = evaluate_word_layouts(word, cfg)
    else:
        outcomes = [evaluate_word(word, cfg)]
    records = [o for o in outcomes if isinstance(o, ScanRecord)]
    rejected = [o for o in outcomes if not isinstance(o, ScanRecord)]
    for r in records:
        _say(task, f"   ✓ {r.word}: n={r.n} k={r.k} dX={r.dX} dZ={r.dZ}")
    return {"records": records, "rejected": rejected}


def collect_node(state: ScanState) -> Dict[str, Any]:
    """
    Node that sorts the accumulated records.

    Records arrive in completion order; the sort key fixes the output order.
    """
    results = sorted(state["records"], key=ScanRecord.sort_key)
    _say(state, f"\n📋 [Collector] {len(results)} commuting instances, {len(state['rejected'])} rejected")
    return {
        "results": results,
        "current_stage": "collect",
        "log": [f"{len(results)} records, {len(state['rejected'])} rejected"],
    }


def create_scan_workflow():
    """
    Create the LangGraph map-reduce workflow for a word scan.

    Returns:
        Compiled workflow graph
    """
    workflow = StateGraph(ScanState)

    workflow.add_node("enumerate", enumerate_node)
    workflow.add_node("evaluate", evaluate_node)
    workflow.add_node("collect", collect_node)

    workflow.set_entry_point("enumerate")
    workflow.add_conditional_edges("enumerate", dispatch_words, ["evaluate", "collect", END])
    workflow.add_edge("evaluate", "collect")
    workflow.add_edge("collect", END)

    return workflow.compile()


def run_scan_workflow(config: ScanConfig, verbose: bool = False) -> ScanState:
    """Run the scan with `config.workers` concurrent evaluate tasks; returns the final state."""
    app = create_scan_workflow()
    initial = create_scan_state(config, verbose)
    _say(initial, f"\n{'='*60}\n🚀 Scanning the {config.lx}x{config.ly} torus ({config.layout_rule})\n{'='*60}")
    return app.invoke(initial, config={"max_concurrency": config.workers})


def scan(config: ScanConfig, verbose: bool = False) -> List[ScanRecord]:
    """All accepted records in the documented sort order."""
    final = run_scan_workflow(config, verbose)
    if final.get("error"):
        raise DirectionalCodeError(final["error"])
    return list(final.get("results") or [])
