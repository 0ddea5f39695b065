from bielliptic.pipeline import default_precision, derive, structural_claims
from bielliptic.relation import ModelPolynomial


def test_every_level_passes(reports):
    failed = {N: r.checks for N, r in reports.items() if not r.passed}
    assert not failed


def test_report_fields(reports):
    r = reports[34]
    assert r.match and r.certified and r.complement_a == 17
    d = r.to_dict()
    assert d["P"] == {"P1": [-48, -32, 20, 24, 1], "P2": [16, 16, 8]}
    assert d["status"] == "PASS" and d["certification_bound"] == 16
    assert d["residual_vanishes_below"] > 16


def test_substituted_level_skips_degree_claims(reports):
    r = reports[72]
    assert r.scale == 2 and r.checks["deg_P1"] is None and r.checks["deg_P2"] is None
    assert structural_claims(r.u_pole, r.P) == (False, False)


def test_errata_surface_in_reports(reports, data):
    for N, r in reports.items():
        assert r.errata == data[N].errata_notes
    assert reports[44].errata and not reports[34].errata


def test_default_precision_is_enough_without_retry(data):
    for d in data.values():
        r = derive(d, default_precision(d), complement=False)
        assert r.certified, d.level


def test_explicit_low_precision_is_reported_not_retried(data):
    r = derive(data[34], 20)
    assert r.precision == 20 and not r.certified and not r.passed


def test_structural_claims_helper():
    assert structural_claims(4, ModelPolynomial((1, 0, 0, 0, 1), (1, 1, 1))) == (True, True)
    assert structural_claims(4, ModelPolynomial((1, 0, 0, 0, 1), ())) == (True, True)
    assert structural_claims(5, ModelPolynomial((1, 0, 0, 0, 1), (1, 1, 1, 1))) == (False, False)
