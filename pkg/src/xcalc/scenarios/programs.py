"""XC sources of the case-study programs (evaluated in the stdlib scope)."""
from __future__ import annotations

import math

from ..lang import SourceProgram
from ..stdlib import load_with_prelude


def xc_number(x: float) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "(-inf)"
    return repr(x) if x >= 0 else f"({x!r})"


# Process keys are messages: pair(pair(from, to), pair(payload, created)).
# A device offers a message to its neighbours only in its first round in the
# process, and only the first time it meets that message: the outer exchange
# remembers the keys already seen, so late offers cannot restart the wave.
SPHERE = """\
exchange(set(), (n) =>
  val seen = self(n);
  val res = spawn((m) =>
    val known = exchange(false, (n) => pair(n, true));
    val round = counter();
    val fresh = round == 1 and not contains(seen, m);
    val status = if (msg_to(m) == uid()) { false } else {
      if (fresh) { updateSelf(mux(known, false, true), true) } else { false }
    };
    pair(current_time(), status),
    sense("gen"));
  pair(res, union(seen, keys(self(res)))))
"""

# Forward to the parent while the target is not below this device, and to
# the child whose subtree holds the target otherwise.  The hop is offered for
# two rounds (the device keeps itself in the process after the first) so that
# the next device sees it even if its round comes late.
TREE = """\
val info = spanning_tree(uid() == {root});
spawn((m) =>
  val round = counter();
  val status = if (msg_to(m) == uid()) {{ false }} else {{
    if (round <= 2) {{
      val below_me = contains(self(tree_below(info)), msg_to(m));
      val nv_up = tree_ids(info) == tree_parent(info) and not below_me;
      val nv_down = tree_parents(info) == uid() and contains(tree_below(info), msg_to(m));
      val route = nv_up or nv_down;
      mux(round == 1, updateSelf(route, true), route)
    }} else {{ false }}
  }};
  pair(current_time(), status),
  sense("gen"))
"""

MONITORING = """\
val critic = sense("critic");
pair(critic,
  pair(ep(critic),
    pair(somewhere_slcs(critic, {diameter}),
      somewhere_replicated(critic, {replicas}, {diameter}, {infospeed}))))
"""

MONITORING_SERIES = ("critic", "ever_critic", "somewhere_slcs", "somewhere_replicated")


def sphere_source() -> str:
    return SPHERE


def tree_source(root: int) -> str:
    return TREE.format(root=int(root))


def monitoring_source(replicas: int, diameter: float, infospeed: float) -> str:
    return MONITORING.format(replicas=int(replicas), diameter=xc_number(float(diameter)),
                             infospeed=xc_number(float(infospeed)))


def _load(main: str, gossip_clock: bool = False) -> SourceProgram:
    prog = load_with_prelude(main, gossip_clock)
    if not prog.ok:
        raise ValueError("; ".join(d.message for d in prog.diagnostics))
    return prog


def sphere_propagation_program():
    return _load(sphere_source()).parsed


def tree_propagation_program(root: int):
    return _load(tree_source(root)).parsed


def monitoring_program(replicas: int, diameter: float, infospeed: float, gossip_clock: bool = False):
    return _load(monitoring_source(replicas, diameter, infospeed), gossip_clock).parsed
