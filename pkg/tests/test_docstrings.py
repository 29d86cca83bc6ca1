import inspect

import pytest

from src.orchestrator import pipeline
from src.state.shared_state import create_scan_state
from src.tools.certificates import certify
from src.tools.gf2linalg import left_kernel_dim, mul_mod2
from src.tools.parameters import code_parameters
from src.tools.pattern import is_realizable, support_pattern
from src.tools.qc import annihilator_dim, predicted_k
from src.tools.word import canonical_word, format_word
from src.workers.word_enumerator import enumerate_words, passes_filters


@pytest.mark.parametrize(
    "func",
    [
        pipeline.build_node,
        pipeline.verify_node,
        pipeline.parameters_node,
        pipeline.report_node,
        pipeline.enumerate_node,
        pipeline.evaluate_node,
        pipeline.collect_node,
        create_scan_state,
        certify,
        left_kernel_dim,
        mul_mod2,
        code_parameters,
        is_realizable,
        support_pattern,
        annihilator_dim,
        predicted_k,
        canonical_word,
        format_word,
        enumerate_words,
        passes_filters,
    ],
    ids=lambda f: f.__name__,
)
def test_public_functions_are_documented(func):
    assert inspect.getdoc(func)


@pytest.mark.parametrize("func", [code_parameters, create_scan_state, mul_mod2, format_word], ids=lambda f: f.__name__)
def test_documented_arguments_exist(func):
    doc = inspect.getdoc(func)
    assert "Args:" in doc and "Returns:" in doc
    params = inspect.signature(func).parameters
    section = doc.split("Args:")[1].split("Returns:")[0]
    for line in section.splitlines():
        name = line.strip().split(":")[0]
        if line.startswith("    ") and not line.startswith("        ") and name:
            assert name in params, name
