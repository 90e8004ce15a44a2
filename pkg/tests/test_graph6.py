import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from neumaier import graph6
from neumaier.graph import Graph, complete_graph


def random_adj(n, bits):
    adj = np.zeros((n, n), dtype=bool)
    r, c = np.triu_indices(n, 1)
    adj[r, c] = bits[: len(r)]
    return adj | adj.T


@st.composite
def adjacency(draw, max_n=40):
    n = draw(st.integers(0, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return random_adj(n, np.array(bits, dtype=bool))


def test_triangle_is_Bw():
    assert complete_graph(3).to_graph6() == "Bw"
    assert Graph.from_graph6("Bw") == complete_graph(3)


def test_header_is_accepted():
    assert Graph.from_graph6(">>graph6<<Bw") == complete_graph(3)


@given(adjacency())
def test_roundtrip(adj):
    text = graph6.encode(adj)
    assert np.array_equal(graph6.decode(text), adj)
    assert graph6.encode(graph6.decode(text)) == text


@given(adjacency(max_n=30))
def test_matches_networkx_encoder(adj):
    ours = graph6.encode(adj)
    theirs = nx.to_graph6_bytes(nx.from_numpy_array(adj.astype(int)), header=False).decode().strip()
    assert ours == theirs
    back = nx.from_graph6_bytes(ours.encode())
    assert np.array_equal(nx.to_numpy_array(back, nodelist=range(adj.shape[0])).astype(bool), adj)


def test_four_byte_size_form():
    rng = np.random.default_rng(3)
    adj = random_adj(70, rng.random(70 * 69 // 2) < 0.3)
    text = graph6.encode(adj)
    assert text[0] == "~"
    assert np.array_equal(graph6.decode(text), adj)


@pytest.mark.parametrize("n", [0, 1, 62, 63, 258047, 258048, 10**9])
def test_size_prefix_roundtrip(n):
    enc = graph6._encode_n(n)
    assert graph6._decode_n(enc + b"?") == (n, len(enc))
    assert len(enc) == (1 if n < 63 else 4 if n < 258048 else 8)


@pytest.mark.parametrize("bad", ["", "B", "Bww", "B\x7f", "B "])
def test_malformed_rejected(bad):
    with pytest.raises(ValueError):
        graph6.decode(bad.replace(" ", "\x20") if bad != "B " else "B\x1f")
