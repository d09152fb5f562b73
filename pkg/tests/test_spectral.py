import pytest

import rectaspec as rs
from rectaspec.core import StructureError
from rectaspec.spectral import float_spectrum_matches, strongest_certificate
from rectaspec.switching import switch


def all_positive_c4():
    return rs.UnderlyingGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).all_positive()


class TestTwoSym:
    def test_signed_square(self):
        cert = rs.certify_two_sym(rs.signed_cube(2))
        assert cert and cert.lambda_sq == 2 and cert.m == 2

    def test_all_positive_c4_refused_with_witness(self):
        ref = rs.certify_two_sym(all_positive_c4())
        assert not ref
        assert ref.witness is not None
        i, j, value = ref.witness
        assert i != j and value == 2  # off-diagonal 2 in A^2

    def test_clebsch_signing(self):
        cert = rs.certify_two_sym(rs.catalog("R5.4"))
        assert cert and cert.lambda_sq == 5 and cert.m == 8

    def test_non_regular_refused(self):
        p3 = rs.UnderlyingGraph.from_edges(3, [(0, 1), (1, 2)]).all_positive()
        ref = rs.certify_two_sym(p3)
        assert not ref and "regular" in ref.reason

    def test_switching_invariance(self):
        g = rs.catalog("R5.4")
        for s in [{0}, {1, 5, 7}, set(range(8))]:
            cert = rs.certify_two_sym(switch(g, s))
            assert cert and cert.lambda_sq == 5 and cert.m == 8


class TestThreeSym:
    def test_all_positive_k22(self):
        cert = rs.certify_three_sym(all_positive_c4())
        assert cert and cert.lambda_sq == 4 and cert.m == 1 and cert.d == 2

    def test_cube_minus_vertex(self):
        h = rs.delete_vertices(rs.signed_cube(3), {2})
        cert = rs.certify_three_sym(h)
        assert cert and cert.lambda_sq == 3 and cert.m == 3 and cert.d == 1

    def test_two_eigenvalue_graph_refused(self):
        ref = rs.certify_three_sym(rs.signed_cube(3))
        assert not ref and "two eigenvalues" in ref.reason


class TestFourSym:
    def test_signed_tetrahedron(self):
        cert = rs.certify_four_sym(rs.catalog("T"))
        assert cert and cert.lambda_sq == 5 and cert.mu_sq == 1 and cert.m == 1

    def test_cube_minus_adjacent_pair(self):
        g = rs.signed_cube(4)
        u, v = next((u, v) for u, v, _ in g.edges())
        cert = rs.certify_four_sym(rs.delete_vertices(g, {u, v}))
        assert cert and cert.lambda_sq == 4 and cert.mu_sq == 1

    def test_cube_minus_nonadjacent_pair(self):
        g = rs.signed_cube(4)
        pair = next((u, v) for u in range(16) for v in range(u + 1, 16)
                    if not g.adj[u, v])
        h = rs.delete_vertices(g, set(pair))
        assert not rs.certify_four_sym(h)
        cert = rs.certify_three_sym(h)
        assert cert and cert.d == 2


def test_certificates_match_float_spectra():
    cases = [
        (rs.signed_cube(3), rs.certify_two_sym),
        (all_positive_c4(), rs.certify_three_sym),
        (rs.catalog("T"), rs.certify_four_sym),
        (rs.delete_vertices(rs.signed_cube(4), {0}), rs.certify_three_sym),
    ]
    for g, fn in cases:
        cert = fn(g)
        assert cert and float_spectrum_matches(g, cert)


def test_two_sym_implies_charpoly_power():
    g = rs.catalog("R4.1")
    cert = rs.certify_two_sym(g, with_charpoly=True)
    # (x^2 - 4)^7
    expected = [1]
    from rectaspec.exactlinalg import poly_mul

    for _ in range(7):
        expected = poly_mul(expected, [1, 0, -4])
    assert list(cert.charpoly) == expected


def test_char_poly_values():
    assert rs.char_poly(rs.signed_cube(1)) == [1, 0, -1]
    assert rs.char_poly(rs.signed_cube(2)) == [1, 0, -4, 0, 4]  # (x^2-2)^2
    assert rs.char_poly(rs.catalog("T")) == [1, 0, -6, 0, 5]  # (x^2-1)(x^2-5)


def test_strongest_certificate_order():
    assert strongest_certificate(rs.signed_cube(3)).kind == "TwoSym"
    assert strongest_certificate(all_positive_c4()).kind == "ThreeSym"
    assert strongest_certificate(rs.catalog("T")).kind == "FourSym"
    k3 = rs.UnderlyingGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)]).all_positive()
    assert strongest_certificate(k3) is None


class TestFilter:
    def test_bipartite_36_6_fails_sum_of_two_squares(self):
        verdict = rs.filter_sr2se(36, 6, bipartite=True)
        assert not verdict.passed and "sum-of-two-squares" in verdict.failures

    def test_16_5_passes_at_the_bound(self):
        from math import comb

        assert rs.filter_sr2se(16, 5).passed
        assert 16 == comb(6, 2) + 1

    def test_bound_failure(self):
        verdict = rs.filter_sr2se(10, 5)
        assert not verdict.passed and "bound" in verdict.failures

    def test_passes_every_catalog_parameter_pair(self):
        from rectaspec.constructions import _CATALOG_CERTS

        for key, (n, r, bip) in _CATALOG_CERTS.items():
            verdict = rs.filter_sr2se(n, r, bipartite=bip)
            assert verdict.passed, (key, verdict)


def test_sum_of_two_squares():
    assert not rs.sum_of_two_squares(6)
    assert rs.sum_of_two_squares(5)
    assert rs.sum_of_two_squares(0)
    assert [k for k in range(13) if rs.sum_of_two_squares(k)] == \
        [0, 1, 2, 4, 5, 8, 9, 10, 13][:8]  # brute reference below 13
    with pytest.raises(ValueError):
        rs.sum_of_two_squares(-1)


class TestTraceIdentities:
    def test_cube(self):
        assert rs.trace_identities(rs.hypercube(3)) == (0, 168, 168)

    def test_k4_has_triangles(self):
        t3, _, _ = rs.trace_identities(rs.catalog("K4"))
        assert t3 == 24  # closed 3-walks through the triangles

    def test_k22(self):
        assert rs.trace_identities(rs.catalog("K22")) == (0, 32, 32)

    def test_non_regular_faults(self):
        p3 = rs.UnderlyingGraph.from_edges(3, [(0, 1), (1, 2)])
        with pytest.raises(StructureError):
            rs.trace_identities(p3)
