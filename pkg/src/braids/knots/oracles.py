"""
Independent invariant computations straight from PD codes.

These never look at the braid word: the Kauffman bracket is summed over
all 2^c smoothings and the Alexander polynomial comes from the crossing
(Alexander) matrix. Both are exponential or cubic and exist to pin the
braid-based invariants on small diagrams.
"""

import logging
from itertools import product
from typing import Dict, List

import networkx as nx
import sympy

from src.braids.exceptions import BraidError
from src.braids.knots.laurent import LaurentPoly
from src.braids.models.schemas import Diagram


logger = logging.getLogger("braids.knots.oracles")

DEFAULT_STATE_SUM_MAX_CROSSINGS = 12

_T = sympy.Symbol("t")


def _smoothing_loops(d: Diagram, state) -> int:
    """Loops of one smoothing: A joins (a, b)(c, d), B joins (a, d)(b, c)."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(label for crossing in d.pd for label in crossing)
    for (a, b, c, e), choice in zip(d.pd, state):
        if choice:
            graph.add_edges_from([(a, b), (c, e)])
        else:
            graph.add_edges_from([(a, e), (b, c)])
    return nx.number_connected_components(graph) + d.free_loops


def state_sum_jones(d: Diagram, max_crossings: int = DEFAULT_STATE_SUM_MAX_CROSSINGS) -> LaurentPoly:
    """Jones polynomial by summing the Kauffman bracket over every state."""
    crossings = d.crossing_count
    if crossings > max_crossings:
        raise BraidError(
            "TOO_MANY_CROSSINGS",
            f"State sum is limited to {max_crossings} crossings, diagram has {crossings}",
        )
    bracket: Dict[int, int] = {}
    delta = {2: -1, -2: -1}
    for state in product((True, False), repeat=crossings):
        a_count = sum(state)
        term = {2 * a_count - crossings: 1}
        for _ in range(_smoothing_loops(d, state) - 1):
            shifted: Dict[int, int] = {}
            for exponent, coefficient in term.items():
                for step, factor in delta.items():
                    shifted[exponent + step] = shifted.get(exponent + step, 0) + coefficient * factor
            term = shifted
        for exponent, coefficient in term.items():
            bracket[exponent] = bracket.get(exponent, 0) + coefficient

    writhe = d.writhe
    sign = -1 if writhe % 2 else 1
    logger.debug(f"State sum over {2 ** crossings} states finished")
    return LaurentPoly.build(((-(e - 3 * writhe), sign * c) for e, c in bracket.items()), scale=4)


def _over_arcs(d: Diagram) -> Dict[int, int]:
    """PD edge label → index of the over-arc it belongs to."""
    graph = nx.Graph()
    for _, b, _, e in d.pd:
        graph.add_edge(b, e)
    for a, _, c, _ in d.pd:
        graph.add_nodes_from((a, c))
    arcs: Dict[int, int] = {}
    for index, members in enumerate(sorted(nx.connected_components(graph), key=min)):
        for label in members:
            arcs[label] = index
    return arcs


def crossing_matrix_alexander(d: Diagram) -> LaurentPoly:
    """Alexander polynomial from a (c−1)-minor of the crossing matrix of a knot diagram."""
    if not d.is_knot:
        raise BraidError("NOT_A_KNOT", f"Alexander polynomial needs a knot, got {d.component_count} components")
    crossings = d.crossing_count
    if crossings <= 1:
        return LaurentPoly.constant(1)
    arcs = _over_arcs(d)
    size = len(set(arcs.values()))
    matrix = sympy.zeros(crossings, size)
    for row, ((a, b, c, _), sign) in enumerate(zip(d.pd, d.signs)):
        over, incoming, outgoing = arcs[b], arcs[a], arcs[c]
        if sign > 0:
            entries = ((over, 1 - _T), (incoming, _T), (outgoing, -1))
        else:
            entries = ((over, _T - 1), (incoming, 1), (outgoing, -_T))
        for column, value in entries:
            matrix[row, column] += value
    minor = matrix[: crossings - 1, : size - 1]
    determinant = sympy.expand(minor.det(method="berkowitz"))
    polynomial = LaurentPoly.from_sympy(determinant, _T).symmetrized()
    value = polynomial.evaluate(1)
    if abs(value) != 1:
        raise BraidError("INCONSISTENT_DATA", f"Crossing-matrix minor has Δ(1) = {value}")
    return polynomial * int(value)


def oracle_report(d: Diagram) -> List[str]:
    """Text lines for the pinning suite."""
    return [
        f"crossings={d.crossing_count}",
        f"jones={state_sum_jones(d).text}",
        f"alexander={crossing_matrix_alexander(d).text}",
    ]
