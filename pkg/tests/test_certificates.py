import pytest

from src.errors import CertificateNotApplicableError
from src.tools.certificates import (
    certify,
    dependency_certificate,
    find_motifs,
    motif_commutes,
    motif_operator,
)
from src.tools.gf2linalg import RowSpace
from src.tools.torus import CheckerboardTorus, data_index
from src.tools.word import parse_word


@pytest.mark.parametrize("m", [1, 2, 3])
def test_dependency_certificate(case_word, m):
    cert = dependency_certificate(case_word, CheckerboardTorus(12 * m, 6 * m))
    assert len(cert.x_relations) == 2
    assert len(cert.z_relations) == 2
    assert all(r.sums_to_zero for r in cert.x_relations + cert.z_relations)
    assert cert.verified


def test_dependency_relations_are_independent(case_code_12x6):
    cert = dependency_certificate(case_code_12x6.word, case_code_12x6.torus)
    for relations in (cert.x_relations, cert.z_relations):
        masks = [sum(1 << r for r in rel.rows) for rel in relations]
        assert RowSpace(masks).rank == 2


def test_dependency_certificate_not_applicable(case_word):
    with pytest.raises(CertificateNotApplicableError):
        dependency_certificate(case_word, CheckerboardTorus(16, 8))
    with pytest.raises(CertificateNotApplicableError):
        dependency_certificate(parse_word("NE2N"), CheckerboardTorus(12, 6))


def test_motif_operator_shape():
    t = CheckerboardTorus(24, 12)
    support = motif_operator(t, (0, 0), m=2)
    assert support == {(0, 0), (4, 2), (12, 6), (16, 8)}
    with pytest.raises(CertificateNotApplicableError):
        motif_operator(t, (1, 0), m=2)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_origin_motif_is_an_x_logical(case_word, m):
    report = certify(case_word, m)
    origin = [w for w in report.motifs if w.site == (0, 0) and w.pauli == "X"]
    assert len(origin) == 1
    assert origin[0].weight == 2 * m
    assert origin[0].nontrivial


def test_motif_commutes_with_z_checks(case_code_12x6):
    support = motif_operator(case_code_12x6.torus, (0, 0), m=1)
    assert motif_commutes(case_code_12x6, support, "X")
    single = frozenset({(0, 0)})
    assert not motif_commutes(case_code_12x6, single, "X")


def test_found_motifs_are_in_the_kernel(case_code_12x6):
    t = case_code_12x6.torus
    for witness in find_motifs(case_code_12x6, 1):
        support = motif_operator(t, witness.site, m=1)
        x = sum(1 << data_index(t, s) for s in support)
        checks = case_code_12x6.hz if witness.pauli == "X" else case_code_12x6.hx
        assert all(bin(row & x).count("1") % 2 == 0 for row in checks.row_ints())


def test_certify_conclusions(case_word):
    m1 = certify(case_word, 1)
    assert m1.k_certified and m1.d_certified
    assert m1.conclusion == "k >= 4 and d <= 2 certified"
    m2 = certify(case_word, 2)
    assert m2.conclusion == "k >= 4 and d <= 4 certified"
    payload = m2.as_dict()
    assert payload["torus"] == [24, 12]
    assert len(payload["relations"]) == 4


def test_certify_other_word():
    with pytest.raises(CertificateNotApplicableError):
        certify(parse_word("NE2N"), 1)
    with pytest.raises(ValueError):
        certify(parse_word("NE2NE2N"), 0)
