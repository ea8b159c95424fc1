"""Python front end for the dual graph simulator core."""

import csv
import io
import json

from . import _dualgraph
from ._dualgraph import ConfigError, derive_seed, block_shuffle_length, trial_seed, view_graph_chi

__all__ = [
    "ConfigError",
    "build_network",
    "derive_seed",
    "block_shuffle_length",
    "run_experiment",
    "trial_seed",
    "verify",
    "view_graph_chi",
]


def run_experiment(config, jobs=1):
    """Run a config dict; returns (records, summary rows, exit code)."""
    jsonl, summary, code = _dualgraph.run_experiment(json.dumps(config), jobs)
    records = [json.loads(line) for line in jsonl.splitlines()]
    rows = list(csv.DictReader(io.StringIO(summary)))
    return records, rows, code


def build_network(network, algorithm=None, seed=1):
    """Build a network from a builder spec dict; returns graph JSON as a dict."""
    return json.loads(_dualgraph.build_network(json.dumps(network), json.dumps(algorithm or {}), seed))


def verify(graph, members, structure="mis"):
    return _dualgraph.verify(json.dumps(graph), list(members), structure)
