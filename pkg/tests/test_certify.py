import networkx as nx
import pytest

from neumaier.certify import NeumaierCertificate, NeumaierParams, certify_neumaier, verify_certificate
from neumaier.construction import f_pi_construct, make_context
from neumaier.errors import CertificationError
from neumaier.graph import Graph, cartesian_product, complete_graph, cycle_graph


@pytest.fixture(scope="module")
def glued(ico):
    ctx = make_context([ico, ico], [(1, 2, 3, 4, 5, 6)])
    return f_pi_construct(ctx)


def test_glued_icosahedra_certificate(glued):
    cert = certify_neumaier(glued.graph, spread=glued.spread)
    assert cert.params.astuple() == (24, 8, 2, 1, 4)
    assert cert.strict
    (u1, w1, c1), (u2, w2, c2) = cert.witnesses
    assert c1 != c2
    assert verify_certificate(glued.graph, cert)


def test_search_finds_a_regular_clique(glued):
    cert = certify_neumaier(glued.graph)
    assert (cert.params.m, cert.params.s) == (1, 4)
    assert verify_certificate(glued.graph, cert)


def test_json_roundtrip(glued):
    cert = certify_neumaier(glued.graph, spread=glued.spread)
    again = NeumaierCertificate.from_json(cert.to_json())
    assert again == cert
    assert verify_certificate(glued.graph, again)


def test_strongly_regular_neumaier_graph():
    # K3 x K3 (the 3x3 rook's graph) is SRG(9,4,1,2); its rows are 1-regular 3-cliques
    g = cartesian_product(complete_graph(3), complete_graph(3))
    cert = certify_neumaier(g, clique=[0, 1, 2])
    assert cert.params.astuple() == (9, 4, 1, 1, 3)
    assert not cert.strict and cert.witnesses is None
    assert verify_certificate(g, cert)


@pytest.mark.parametrize("g,condition", [
    (complete_graph(5), "non-complete"),
    (Graph(nx.to_numpy_array(nx.path_graph(4)).astype(bool)), "edge-regular"),
    (cycle_graph(7), "regular clique"),
])
def test_failures_name_the_condition(g, condition):
    with pytest.raises(CertificationError) as exc:
        certify_neumaier(g)
    assert exc.value.condition == condition


def test_bad_clique_and_spread(glued):
    g = glued.graph
    with pytest.raises(CertificationError, match="regular clique"):
        certify_neumaier(g, clique=[0, 13])
    bad_spread = [list(c) for c in glued.spread]
    bad_spread[0], bad_spread[1] = bad_spread[0][:3] + bad_spread[1][:1], bad_spread[1][1:] + bad_spread[0][3:]
    with pytest.raises(CertificationError):
        certify_neumaier(g, spread=bad_spread)


def test_tampered_certificates_fail(glued):
    cert = certify_neumaier(glued.graph, spread=glued.spread)
    data = cert.to_json()
    data["params"]["lambda"] = 3
    with pytest.raises(CertificationError):
        verify_certificate(glued.graph, NeumaierCertificate.from_json(data))
    data = cert.to_json()
    data["witnesses"][1][2] = data["witnesses"][0][2]
    with pytest.raises(CertificationError):
        verify_certificate(glued.graph, NeumaierCertificate.from_json(data))
    data = cert.to_json()
    data["strict"] = False
    with pytest.raises(CertificationError):
        verify_certificate(glued.graph, NeumaierCertificate.from_json(data))


def test_params_validation():
    assert str(NeumaierParams(24, 8, 2, 1, 4)) == "(24,8,2;1,4)"
    with pytest.raises(ValueError):
        NeumaierParams(24, 8, 2, 0, 4)
    with pytest.raises(ValueError):
        NeumaierParams(24, 8, 2, 1, 1)
