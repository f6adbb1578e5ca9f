"""Collective algorithms written in XC, shipped as a source prelude.

A user program is compiled together with the prelude: the prelude is a chain
of ``def`` bindings whose final body is the user's expression.
"""
from __future__ import annotations

from importlib import resources

from ..lang import SourceProgram, load_program

LOCAL_CLOCK = "def shared_clock() { current_time() }"
GOSSIP_CLOCK = "def shared_clock() { gossip_clock() }"

STDLIB_NAMES = (
    "counter", "nbr", "gradient", "multi_gradient", "ep", "somewhere_slcs",
    "gossip_clock", "shared_clock", "replica_map", "replicate", "somewhere_replicated",
    "broadcast", "spanning_tree", "tree_parent", "tree_ids", "tree_parents",
    "tree_below", "msg_from", "msg_to",
)


def prelude_source(gossip_clock: bool = False) -> str:
    text = resources.files(__package__).joinpath("prelude.xc").read_text(encoding="utf-8")
    return text.replace("// @SHARED_CLOCK@", GOSSIP_CLOCK if gossip_clock else LOCAL_CLOCK)


def with_prelude(main: str, gossip_clock: bool = False) -> str:
    """Source text of ``main`` evaluated in the scope of the prelude."""
    return prelude_source(gossip_clock) + "\n" + main + "\n"


def prelude_lines(gossip_clock: bool = False) -> int:
    return prelude_source(gossip_clock).count("\n") + 1


def load_with_prelude(main: str, gossip_clock: bool = False) -> SourceProgram:
    """Parse, check and annotate ``main`` in the scope of the prelude.

    Diagnostics keep the line numbers of the combined text; use
    ``prelude_lines`` to map them back to the user's source.
    """
    return load_program(with_prelude(main, gossip_clock))
