# plotting utility functions
#
# This file defines functions that draw the models of the package as DOT
# graphs: PTL-nets (places as circles labelled with their tokens, transitions
# as boxes, localities as fill colours, arc weights above 1 as edge labels),
# basic membrane systems (membranes as nested clusters) and step transition
# systems (states as ellipses, arcs labelled with their steps).
#
# Requirements:
# * Python 3
# * pydot [https://github.com/pydot/pydot]
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from typing import Dict, Optional, Sequence

import pydot

from MSutils.membrane_system import BasicMembraneSystem
from MSutils.ptl_net import PtlNet
from MSutils.transition_system import StepTransitionSystem

Fontsize = 12 # default font size for labels
Palette = ("#f2f2f2", "#d9e7f5", "#fbe3c8", "#dcefd6", "#efd9ef", "#fdf4c4", "#d6eeee")


def _fill(location: Optional[int], palette: Sequence[str]) -> str:
    if location is None:
        return "white"
    return palette[(location - 1) % len(palette)]


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def _step_label(step) -> str:
    return ",".join(str(s) if k == 1 else f"{k}{s}" for s, k in step.items_sorted())


def dot_from_net(net: PtlNet, palette: Sequence[str] = Palette, fontsize: int = Fontsize) -> pydot.Dot:
    '''
    function to draw a PTL-net

    Places are circles labelled with their name and initial token count,
    transitions are boxes. Both are filled with the colour of their membrane.
    '''
    graph = pydot.Dot(graph_name="net", graph_type="digraph", rankdir="LR", fontsize=str(fontsize))
    ids: Dict[str, str] = {}
    for k, p in enumerate(net.places):
        ids[p] = f"p{k}"
        tokens = net.initial_marking[p]
        label = f"{p}\\n{tokens}" if tokens else str(p)
        graph.add_node(pydot.Node(
            ids[p], label=_quote(label), shape="circle", style="filled",
            fillcolor=_fill(net.location.get(p), palette), fontsize=str(fontsize),
        ))
    for k, t in enumerate(net.transitions):
        ids[t] = f"t{k}"
        graph.add_node(pydot.Node(
            ids[t], label=_quote(str(t)), shape="box", style="filled",
            fillcolor=_fill(net.location.get(t), palette), fontsize=str(fontsize),
        ))
    for source, target, weight in net.arcs():
        attrs = {"label": _quote(str(weight))} if weight > 1 else {}
        graph.add_edge(pydot.Edge(ids[source], ids[target], **attrs))
    return graph


def dot_from_bms(bms: BasicMembraneSystem, palette: Sequence[str] = Palette, fontsize: int = Fontsize) -> pydot.Dot:
    '''
    function to draw a basic membrane system as nested membranes

    Each membrane is a cluster holding one node with its initial contents and
    rules; child membranes are drawn inside their parent's cluster.
    '''
    graph = pydot.Dot(graph_name="bms", graph_type="digraph", compound="true", fontsize=str(fontsize))
    mu = bms.structure

    def cluster(i: int) -> pydot.Cluster:
        sub = pydot.Cluster(
            f"m{i}", label=_quote(f"membrane {i}"), style="filled",
            fillcolor=_fill(i, palette), fontsize=str(fontsize),
        )
        lines = [",".join(str(a) for a in bms.initial[i].elements()) or "(empty)"]
        lines += [str(rule) for rule in bms.rules(i)]
        sub.add_node(pydot.Node(
            f"w{i}", label=_quote("\\l".join(lines) + "\\l"), shape="plaintext", fontsize=str(fontsize),
        ))
        for child in mu.children(i):
            sub.add_subgraph(cluster(child))
        return sub

    graph.add_subgraph(cluster(mu.root))
    return graph


def dot_from_ts(ts: StepTransitionSystem, fontsize: int = Fontsize) -> pydot.Dot:
    '''
    function to draw a step transition system

    The initial state gets a bold border; empty-step self-loops are omitted.
    '''
    graph = pydot.Dot(graph_name="ts", graph_type="digraph", fontsize=str(fontsize))
    ids = {q: f"s{k}" for k, q in enumerate(ts.states)}
    for q in ts.states:
        attrs = {"penwidth": "2"} if q == ts.initial else {}
        graph.add_node(pydot.Node(ids[q], label=_quote(q), shape="ellipse", fontsize=str(fontsize), **attrs))
    for arc in ts.arcs:
        graph.add_edge(pydot.Edge(ids[arc.source], ids[arc.target], label=_quote(_step_label(arc.step))))
    return graph


def to_dot(model, **kwargs) -> str:
    '''
    function to render any model of the package as DOT text
    '''
    if isinstance(model, PtlNet):
        graph = dot_from_net(model, **kwargs)
    elif isinstance(model, BasicMembraneSystem):
        graph = dot_from_bms(model, **kwargs)
    elif isinstance(model, StepTransitionSystem):
        kwargs.pop("palette", None)
        graph = dot_from_ts(model, **kwargs)
    else:
        raise TypeError(f"cannot draw a {type(model).__name__}")
    return graph.to_string()


def write_dot(model, path: str, **kwargs) -> None:
    with open(path, "w") as f:
        f.write(to_dot(model, **kwargs))
