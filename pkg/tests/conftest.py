"""Shared graph corpora and the acceptance summary printed at the end of a run."""

from itertools import combinations
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from hodge_spectra import Graph, parse_edgelist

DATA = Path(__file__).parent / "data"

# filled by test_acceptance; one line per criterion
ACCEPTANCE_LINES: dict[int, str] = {}


def from_nx(G) -> Graph:
    G = nx.convert_node_labels_to_integers(G)
    return Graph(G.number_of_nodes(), tuple(sorted(tuple(sorted(e)) for e in G.edges())))


def random_graphs(count: int, n_max: int, seed: int, n_min: int = 3, p=(0.15, 0.6)) -> list[Graph]:
    """G(n, p) samples with n and p drawn uniformly; edgeless draws are rejected."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(n_min, n_max + 1))
        prob = float(rng.uniform(*p))
        edges = tuple(e for e in combinations(range(n), 2) if rng.random() < prob)
        if edges:
            out.append(Graph(n, edges))
    return out


def random_graphs_with_m(count: int, m: int, seed: int, n_range=(5, 9)) -> list[Graph]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        pairs = list(combinations(range(n), 2))
        if len(pairs) < m:
            continue
        idx = sorted(rng.choice(len(pairs), size=m, replace=False))
        out.append(Graph(n, tuple(pairs[i] for i in idx)))
    return out


def atlas_graphs(max_n: int, connected: bool = True) -> list[Graph]:
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() > max_n or G.number_of_edges() == 0:
            continue
        if connected and not nx.is_connected(G):
            continue
        out.append(from_nx(G))
    return out


@pytest.fixture(scope="session")
def worked_example():
    return parse_edgelist((DATA / "worked_example.txt").read_text())


@pytest.fixture(scope="session")
def connected_small():
    """Every connected graph on 2..6 vertices (142 graphs)."""
    return atlas_graphs(6)


@pytest.fixture(scope="session")
def random_corpus():
    return random_graphs(200, 12, seed=42)


@pytest.fixture(scope="session")
def corpus(connected_small, random_corpus):
    return connected_small + random_corpus


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
