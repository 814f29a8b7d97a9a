"""Discrete-event transfer simulator with fault detection and recovery.

Each path moves one packet at a time: the next packet enters the pipe only
after the previous one reached the sink, so a fault-free path finishes its
share in exactly packets * tau * hops seconds. Every node that handles a
packet pays one transmit and one receive charge (the source receives from the
sensing stage, the sink transmits the handoff), which makes the communication
energy of a path equal to the closed-form traffic term.

Fault handling mirrors a two-sided detection protocol. The receiver of a hop
arms a timer for m*tau past the expected arrival; a sender that fails m
delivery attempts pings a neighbor to check its own radio. Whichever check
concludes first drives recovery, the other is logged as a non-driving
detection. Recovery swaps the unreachable node for the nearest redundant
spare and resumes from the last holder of the packet.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from enum import Enum

from .model import EnergyParams, LinkParams, PathProfile, per_hop_delay
from .distribution import Distribution
from .routing import RoutingTable, replace_failed_node
from .topology import TopologyGraph, UnrecoverableFailureError

__all__ = [
    "EventKind",
    "SimEvent",
    "EnergyLedger",
    "FaultEvent",
    "FaultScript",
    "FaultRecord",
    "FaultCase",
    "FaultClassification",
    "SimConfig",
    "TransferReport",
    "TransferActiveError",
    "classify_fault",
    "recover_and_resume",
    "account_idle_and_sensing",
    "run_transfer",
]


class EventKind(Enum):
    PACKET_SEND = "PacketSend"
    PACKET_ARRIVE = "PacketArrive"
    ACK_TIMEOUT = "AckTimeout"
    BEACON_SEND = "BeaconSend"
    BEACON_RESULT = "BeaconResult"
    TIMER_EXPIRE = "TimerExpire"
    FAULT_TRIGGER = "FaultTrigger"


@dataclass(frozen=True)
class SimEvent:
    time: float
    seq: int
    kind: EventKind
    node_from: int | None = None
    node_to: int | None = None
    packet_id: int | None = None
    path_id: int | None = None
    instance: int = 0
    attempt: int = 0
    payload: object = None

    def trace_line(self) -> str:
        def f(v):
            return "-" if v is None else str(v)
        return (f"{self.time:.10g} {self.kind.value} {f(self.node_from)} "
                f"{f(self.node_to)} {f(self.packet_id)} {f(self.path_id)}")


class TransferActiveError(RuntimeError):
    """A transfer is already running on this topology."""


class _Kahan:
    """Compensated accumulator; keeps long charge sums near fsum accuracy."""

    __slots__ = ("value", "_c")

    def __init__(self):
        self.value = 0.0
        self._c = 0.0

    def add(self, x: float):
        y = x - self._c
        t = self.value + y
        self._c = (t - self.value) - y
        self.value = t


@dataclass
class NodeLedger:
    initial: float
    tx: _Kahan = field(default_factory=_Kahan)
    rx: _Kahan = field(default_factory=_Kahan)
    idle: _Kahan = field(default_factory=_Kahan)
    sensing: _Kahan = field(default_factory=_Kahan)
    busy: float = 0.0

    @property
    def consumed(self) -> float:
        return self.tx.value + self.rx.value + self.idle.value + self.sensing.value

    @property
    def residual(self) -> float:
        return self.initial - self.consumed


class EnergyLedger:
    """Per-node energy bookkeeping plus per-path communication totals."""

    def __init__(self):
        self.nodes: dict[int, NodeLedger] = {}
        self.path_comm: dict[int, _Kahan] = {}

    def ensure(self, node_id: int, initial: float = 0.0) -> NodeLedger:
        if node_id not in self.nodes:
            self.nodes[node_id] = NodeLedger(initial=initial)
        return self.nodes[node_id]

    def _path(self, path_id: int) -> _Kahan:
        if path_id not in self.path_comm:
            self.path_comm[path_id] = _Kahan()
        return self.path_comm[path_id]

    def charge_tx(self, node_id: int, joules: float, busy: float = 0.0,
                  path_id: int | None = None):
        led = self.ensure(node_id)
        led.tx.add(joules)
        led.busy += busy
        if path_id is not None:
            self._path(path_id).add(joules)

    def charge_rx(self, node_id: int, joules: float, busy: float = 0.0,
                  path_id: int | None = None):
        led = self.ensure(node_id)
        led.rx.add(joules)
        led.busy += busy
        if path_id is not None:
            self._path(path_id).add(joules)

    def charge_idle(self, node_id: int, joules: float):
        self.ensure(node_id).idle.add(joules)

    def charge_sensing(self, node_id: int, joules: float):
        self.ensure(node_id).sensing.add(joules)

    def residual(self, node_id: int) -> float:
        return self.nodes[node_id].residual

    def comm_for_path(self, path_id: int) -> float:
        acc = self.path_comm.get(path_id)
        return acc.value if acc else 0.0

    def total(self, component: str) -> float:
        return math.fsum(getattr(led, component).value for led in self.nodes.values())

    @property
    def total_consumed(self) -> float:
        return math.fsum(led.consumed for led in self.nodes.values())


@dataclass(frozen=True)
class FaultEvent:
    time: float
    kind: str  # node_fail | link_fail
    target: int | tuple[int, int]

    def __post_init__(self):
        if self.time < 0:
            raise ValueError(f"fault time must be >= 0, got {self.time}")
        if self.kind not in ("node_fail", "link_fail"):
            raise ValueError(f"unknown fault kind {self.kind!r}")
        if self.kind == "link_fail" and not (isinstance(self.target, tuple) and len(self.target) == 2):
            raise ValueError("link_fail target must be a (u, v) pair")
        if self.kind == "node_fail" and not isinstance(self.target, int):
            raise ValueError("node_fail target must be a node id")


@dataclass
class FaultScript:
    events: list[FaultEvent] = field(default_factory=list)

    def sorted_events(self) -> list[FaultEvent]:
        return sorted(self.events, key=lambda e: e.time)


class FaultCase(Enum):
    NODE_SILENT = 1   # upstream node gone quiet; receiver timer detects
    HOP_UNREACHABLE = 2  # sender healthy, next hop unreachable; beacon detects


@dataclass(frozen=True)
class FaultClassification:
    case: FaultCase
    beacon_neighbor: int | None


def _beacon_neighbor(g: TopologyGraph, sender: int, avoid: int) -> int | None:
    for nid in g.neighbors(sender):
        if nid != avoid:
            return nid
    return None


def classify_fault(g: TopologyGraph, sender: int, receiver: int) -> FaultClassification:
    """Decide which side of a broken hop is at fault.

    A dead sender is case 1 outright. Otherwise the sender verifies its own
    radio against the lowest-id alive neighbor; a successful round trip
    shifts the blame to the receiver side (case 2). With no neighbor to ask,
    classification falls back to case 1.
    """
    if sender not in g or not g.nodes[sender].alive:
        return FaultClassification(FaultCase.NODE_SILENT, None)
    c = _beacon_neighbor(g, sender, avoid=receiver)
    if c is None:
        return FaultClassification(FaultCase.NODE_SILENT, None)
    return FaultClassification(FaultCase.HOP_UNREACHABLE, c)


def recover_and_resume(g: TopologyGraph, table: RoutingTable, failed_id: int,
                       initiator: int) -> int:
    """Swap ``failed_id`` for the spare nearest the detecting node.

    Returns the replacement id; raises UnrecoverableFailureError when the
    redundant pool is exhausted. Timing and energy charges for the live
    protocol are handled by the engine; this is the route-surgery core.
    """
    return replace_failed_node(g, failed_id, table, near=initiator)


@dataclass(frozen=True)
class FaultRecord:
    time: float
    path_id: int
    case: FaultCase
    failed_node: int
    initiator: int
    replacement: int | None
    drove_recovery: bool
    note: str = ""


@dataclass(frozen=True)
class SimConfig:
    max_attempts: int = 5
    seed: int = 0
    control_bits: float = 100.0
    idle_power: float = 0.0
    trace: bool = False


_RUNNING, _FAILED, _DONE = "running", "failed", "done"


class _PathRun:
    def __init__(self, path_id: int, nodes: list[int], profile: PathProfile,
                 total: int, base_pkt: int):
        self.path_id = path_id
        self.nodes = nodes
        self.profile = profile
        self.total = total
        self.base_pkt = base_pkt
        self.sent = 0
        self.delivered = 0
        self.dropped = 0
        self.retrans = 0
        self.state = _RUNNING if total > 0 else _DONE
        self.pkt: int | None = None
        self.hop = 0          # current hop index: nodes[hop] -> nodes[hop+1]
        self.attempt = 0
        self.instance = 0     # bumped on every fresh hop start
        self.hop_done = False
        self.beacon_pending = False
        self.last_recovery_instance: int | None = None
        self.delivery_time = 0.0
        self.resolved_time = 0.0

    @property
    def hops(self) -> int:
        return len(self.nodes) - 1


@dataclass
class TransferReport:
    distribution: Distribution
    m: int
    seed: int
    completion_time: float = 0.0
    path_delays: dict[int, float] = field(default_factory=dict)
    delivered: dict[int, int] = field(default_factory=dict)
    dropped: dict[int, int] = field(default_factory=dict)
    retransmissions: dict[int, int] = field(default_factory=dict)
    failed_paths: list[int] = field(default_factory=list)
    fault_records: list[FaultRecord] = field(default_factory=list)
    ledger: EnergyLedger = field(default_factory=EnergyLedger)
    trace_lines: list[str] = field(default_factory=list)
    fabric_nodes: tuple[int, ...] = ()

    @property
    def total_delivered(self) -> int:
        return sum(self.delivered.values())

    @property
    def total_dropped(self) -> int:
        return sum(self.dropped.values())

    def comm_energy(self) -> float:
        return math.fsum(self.ledger.comm_for_path(p) for p in self.path_delays)

    def to_text(self) -> str:
        out = [f"transfer packets={self.distribution.total} m={self.m} seed={self.seed}"]
        for pid in sorted(self.path_delays):
            d = self.path_delays[pid]
            delay = "failed" if math.isinf(d) else f"{d:.10g}"
            out.append(
                f"path {pid} packets={self.distribution.packets_for(pid)} "
                f"delivered={self.delivered[pid]} dropped={self.dropped[pid]} "
                f"retrans={self.retransmissions[pid]} delay={delay}")
        for fr in self.fault_records:
            rep = "-" if fr.replacement is None else str(fr.replacement)
            out.append(
                f"fault t={fr.time:.10g} path={fr.path_id} case={fr.case.value} "
                f"failed={fr.failed_node} by={fr.initiator} replacement={rep} "
                f"drove={int(fr.drove_recovery)}{' ' + fr.note if fr.note else ''}")
        out.append(f"completion {self.completion_time:.10g}")
        out.append(
            f"energy tx={self.ledger.total('tx'):.10g} rx={self.ledger.total('rx'):.10g} "
            f"idle={self.ledger.total('idle'):.10g} sensing={self.ledger.total('sensing'):.10g}")
        return "\n".join(out) + "\n"


def account_idle_and_sensing(ledger: EnergyLedger, duration: float,
                             g: TopologyGraph, active_nodes: set[int],
                             ep: EnergyParams, idle_power: float) -> EnergyLedger:
    """Post-run charges for the non-traffic components of a round.

    Every alive node senses for the whole window (K_r * duration). Nodes with
    their radio up (the route fabric) additionally idle for the window minus
    their time on air.
    """
    if duration < 0:
        raise ValueError(f"duration must be >= 0, got {duration}")
    for node in g.nodes.values():
        if not node.alive:
            continue
        led = ledger.ensure(node.id, initial=node.residual_energy)
        ledger.charge_sensing(node.id, ep.K_r * duration)
        if node.id in active_nodes:
            ledger.charge_idle(node.id, idle_power * max(0.0, duration - led.busy))
        node.residual_energy = led.initial - led.consumed
    return ledger


class _Engine:
    def __init__(self, g: TopologyGraph, table: RoutingTable, dist: Distribution,
                 ep: EnergyParams, link: LinkParams, faults: FaultScript | None,
                 config: SimConfig, destination: int | None):
        table.check_fresh(g)
        self.g = g
        self.table = table
        self.dist = dist
        self.ep = ep
        self.link = link
        self.config = config
        self.tau_ctrl = per_hop_delay(config.control_bits, link)
        dest = destination if destination is not None else table.single_destination()
        routes = {r.path_id: r for r in table.routes_for(dest)}
        self.paths: dict[int, _PathRun] = {}
        base = 0
        for pid, packets in dist.allocations:
            if pid not in routes:
                raise ValueError(f"distribution references unknown path {pid}")
            r = routes[pid]
            if r.profile is None:
                raise ValueError(f"route {pid} has no estimated parameters")
            self.paths[pid] = _PathRun(pid, list(r.nodes), r.profile, packets, base)
            base += packets
        self.heap: list[tuple[float, int, SimEvent]] = []
        self.seq = 0
        self.ledger = EnergyLedger()
        for node in g.nodes.values():
            if node.alive:
                self.ledger.ensure(node.id, initial=node.residual_energy)
        self.records: list[FaultRecord] = []
        self.trace: list[str] = []
        self.fabric: set[int] = set()
        for pr in self.paths.values():
            self.fabric.update(pr.nodes)
        self.last_time = 0.0
        if faults:
            for fe in faults.sorted_events():
                self._push(fe.time, EventKind.FAULT_TRIGGER, payload=fe)

    # -- plumbing ---------------------------------------------------------

    def _push(self, time: float, kind: EventKind, **kw) -> SimEvent:
        ev = SimEvent(time=time, seq=self.seq, kind=kind, **kw)
        self.seq += 1
        heapq.heappush(self.heap, (time, ev.seq, ev))
        return ev

    def _alive(self, node_id: int) -> bool:
        n = self.g.nodes.get(node_id)
        return n is not None and n.alive

    def _check_death(self, node_id: int):
        # deplete-to-zero kills the node on the spot
        if self._alive(node_id) and self.ledger.residual(node_id) <= 0.0:
            self.g.fail_node(node_id)

    def _data_tx(self, node_id: int, pr: _PathRun, busy: float):
        d = pr.profile.hop_distance
        j = self.ep.amplified_tx_power(d) * self.ep.T_1b * self.ep.S
        self.ledger.charge_tx(node_id, j, busy=busy, path_id=pr.path_id)
        self._check_death(node_id)

    def _data_rx(self, node_id: int, pr: _PathRun, busy: float):
        j = self.ep.e_r * self.ep.T_2b * self.ep.S
        self.ledger.charge_rx(node_id, j, busy=busy, path_id=pr.path_id)
        self._check_death(node_id)

    def _ctrl_tx(self, node_id: int, pr: _PathRun):
        d = pr.profile.hop_distance
        j = self.ep.amplified_tx_power(d) * self.ep.T_1b * self.config.control_bits
        self.ledger.charge_tx(node_id, j, busy=self.tau_ctrl)
        self._check_death(node_id)

    def _ctrl_rx(self, node_id: int):
        j = self.ep.e_r * self.ep.T_2b * self.config.control_bits
        self.ledger.charge_rx(node_id, j, busy=self.tau_ctrl)
        self._check_death(node_id)

    # -- pipeline ---------------------------------------------------------

    def _inject(self, t: float, pr: _PathRun):
        pr.pkt = pr.base_pkt + pr.sent
        pr.sent += 1
        pr.hop = 0
        # acquisition: the source receives the payload from its sensing stage
        if self._alive(pr.nodes[0]):
            self._data_rx(pr.nodes[0], pr, busy=0.0)
        self._start_hop(t, pr)

    def _start_hop(self, t: float, pr: _PathRun):
        pr.instance += 1
        pr.attempt = 1
        pr.hop_done = False
        pr.beacon_pending = False
        a, b = pr.nodes[pr.hop], pr.nodes[pr.hop + 1]
        tau = pr.profile.tau
        self._push(t, EventKind.PACKET_SEND, node_from=a, node_to=b,
                   packet_id=pr.pkt, path_id=pr.path_id, instance=pr.instance,
                   attempt=1)
        # receiver arms its watchdog relative to the expected arrival
        expected = t + tau
        self._push(expected + self.config.max_attempts * tau, EventKind.TIMER_EXPIRE,
                   node_from=b, packet_id=pr.pkt, path_id=pr.path_id,
                   instance=pr.instance)

    def _retry(self, t: float, pr: _PathRun):
        pr.attempt += 1
        pr.retrans += 1
        a, b = pr.nodes[pr.hop], pr.nodes[pr.hop + 1]
        self._push(t, EventKind.PACKET_SEND, node_from=a, node_to=b,
                   packet_id=pr.pkt, path_id=pr.path_id, instance=pr.instance,
                   attempt=pr.attempt)

    def _deliver(self, t: float, pr: _PathRun):
        pr.delivered += 1
        pr.delivery_time = t
        pr.resolved_time = t
        pr.pkt = None
        if pr.sent < pr.total:
            self._inject(t, pr)
        elif pr.delivered + pr.dropped == pr.total:
            pr.state = _DONE

    def _fail_path(self, t: float, pr: _PathRun, case: FaultCase, failed: int,
                   initiator: int, note: str):
        pr.state = _FAILED
        remaining = pr.total - pr.delivered
        pr.dropped += remaining
        pr.pkt = None
        pr.resolved_time = t
        self.records.append(FaultRecord(
            time=t, path_id=pr.path_id, case=case, failed_node=failed,
            initiator=initiator, replacement=None, drove_recovery=True,
            note=note or "unrecoverable"))

    def _begin_recovery(self, t: float, pr: _PathRun, case: FaultCase,
                        failed: int, initiator: int):
        pr.last_recovery_instance = pr.instance
        if failed in (pr.nodes[0], pr.nodes[-1]):
            self._fail_path(t, pr, case, failed, initiator,
                            "source/sink cannot be replaced")
            return
        try:
            spare = recover_and_resume(self.g, self.table, failed, initiator)
        except UnrecoverableFailureError:
            self._fail_path(t, pr, case, failed, initiator, "")
            return
        slot = pr.nodes.index(failed)
        pr.nodes[slot] = spare
        self.fabric.add(spare)
        # the detecting node briefs the spare over one control exchange
        self._ctrl_tx(initiator, pr)
        if self._alive(spare):
            self._ctrl_rx(spare)
        self.records.append(FaultRecord(
            time=t, path_id=pr.path_id, case=case, failed_node=failed,
            initiator=initiator, replacement=spare, drove_recovery=True))
        pr.state = _RUNNING
        # resume from the last holder of the packet once the spare is briefed
        if case is FaultCase.NODE_SILENT:
            pr.hop = slot - 1
        self._start_hop(t + self.tau_ctrl, pr)

    # -- handlers ---------------------------------------------------------

    def _on_send(self, ev: SimEvent, pr: _PathRun):
        if pr.state != _RUNNING or ev.instance != pr.instance or pr.hop_done:
            return
        a = ev.node_from
        if not self._alive(a):
            return  # silent sender; the receiver timer will notice
        tau = pr.profile.tau
        self._push(ev.time + tau, EventKind.PACKET_ARRIVE, node_from=a,
                   node_to=ev.node_to, packet_id=ev.packet_id,
                   path_id=pr.path_id, instance=ev.instance, attempt=ev.attempt)
        self._push(ev.time + tau, EventKind.ACK_TIMEOUT, node_from=a,
                   node_to=ev.node_to, packet_id=ev.packet_id,
                   path_id=pr.path_id, instance=ev.instance, attempt=ev.attempt)

    def _on_arrive(self, ev: SimEvent, pr: _PathRun):
        if pr.state != _RUNNING or ev.instance != pr.instance or pr.hop_done:
            return
        a, b = ev.node_from, ev.node_to
        if not self._alive(a):
            return  # died mid-flight
        tau = pr.profile.tau
        self._data_tx(a, pr, busy=tau)
        if self.g.has_edge(a, b):
            pr.hop_done = True
            self._data_rx(b, pr, busy=tau)
            if b == pr.nodes[-1]:
                self._data_tx(b, pr, busy=0.0)  # handoff out of the network
                self._deliver(ev.time, pr)
            else:
                pr.hop += 1
                self._start_hop(ev.time, pr)

    def _on_ack_timeout(self, ev: SimEvent, pr: _PathRun):
        if pr.state != _RUNNING or ev.instance != pr.instance or pr.hop_done:
            return
        if pr.beacon_pending:
            return
        a, b = ev.node_from, ev.node_to
        if not self._alive(a):
            return
        if ev.attempt < self.config.max_attempts:
            self._retry(ev.time, pr)
            return
        c = _beacon_neighbor(self.g, a, avoid=b)
        if c is None:
            # nowhere to verify the radio: treat the upstream side as faulty
            self._begin_recovery(ev.time, pr, FaultCase.NODE_SILENT,
                                 failed=a, initiator=a)
            return
        pr.beacon_pending = True
        self._push(ev.time, EventKind.BEACON_SEND, node_from=a, node_to=c,
                   packet_id=ev.packet_id, path_id=pr.path_id,
                   instance=ev.instance)

    def _on_beacon_send(self, ev: SimEvent, pr: _PathRun):
        a, c = ev.node_from, ev.node_to
        if not self._alive(a):
            return
        self._ctrl_tx(a, pr)
        if self._alive(c):
            self._ctrl_rx(c)
        self._push(ev.time + 2 * self.tau_ctrl, EventKind.BEACON_RESULT,
                   node_from=c, node_to=a, packet_id=ev.packet_id,
                   path_id=pr.path_id, instance=ev.instance)

    def _on_beacon_result(self, ev: SimEvent, pr: _PathRun):
        c, a = ev.node_from, ev.node_to
        if not self._alive(c):
            return
        self._ctrl_tx(c, pr)
        if not self._alive(a):
            return  # requester gone; its receiver-side timer path takes over
        self._ctrl_rx(a)
        b = pr.nodes[pr.hop + 1] if pr.hop + 1 < len(pr.nodes) else a
        if pr.state == _RUNNING and ev.instance == pr.instance and not pr.hop_done:
            self._begin_recovery(ev.time, pr, FaultCase.HOP_UNREACHABLE,
                                 failed=b, initiator=a)
        elif ev.instance == pr.last_recovery_instance:
            self.records.append(FaultRecord(
                time=ev.time, path_id=pr.path_id, case=FaultCase.HOP_UNREACHABLE,
                failed_node=b, initiator=a, replacement=None,
                drove_recovery=False, note="lost race"))

    def _on_timer(self, ev: SimEvent, pr: _PathRun):
        b = ev.node_from
        if pr.state == _RUNNING and ev.instance == pr.instance and not pr.hop_done:
            if not self._alive(b):
                return
            a = pr.nodes[pr.hop]
            self._begin_recovery(ev.time, pr, FaultCase.NODE_SILENT,
                                 failed=a, initiator=b)
        elif ev.instance == pr.last_recovery_instance and self._alive(b):
            self.records.append(FaultRecord(
                time=ev.time, path_id=pr.path_id, case=FaultCase.NODE_SILENT,
                failed_node=pr.nodes[pr.hop] if pr.hop < len(pr.nodes) else b,
                initiator=b, replacement=None,
                drove_recovery=False, note="lost race"))

    def _on_fault_trigger(self, ev: SimEvent):
        fe: FaultEvent = ev.payload
        if fe.kind == "node_fail":
            self.g.fail_node(fe.target)
        else:
            self.g.disable_link(*fe.target)

    # -- main loop --------------------------------------------------------

    def run(self) -> TransferReport:
        for pid in sorted(self.paths):
            pr = self.paths[pid]
            if pr.total > 0:
                self._inject(0.0, pr)
        last_key = (-1.0, -1)
        while self.heap:
            time, seq, ev = heapq.heappop(self.heap)
            assert (time, seq) > last_key, "event order went backwards"
            last_key = (time, seq)
            self.last_time = time
            if self.config.trace:
                self.trace.append(ev.trace_line())
            pr = self.paths.get(ev.path_id) if ev.path_id is not None else None
            if ev.kind is EventKind.FAULT_TRIGGER:
                self._on_fault_trigger(ev)
            elif pr is None:
                continue
            elif ev.kind is EventKind.PACKET_SEND:
                self._on_send(ev, pr)
            elif ev.kind is EventKind.PACKET_ARRIVE:
                self._on_arrive(ev, pr)
            elif ev.kind is EventKind.ACK_TIMEOUT:
                self._on_ack_timeout(ev, pr)
            elif ev.kind is EventKind.BEACON_SEND:
                self._on_beacon_send(ev, pr)
            elif ev.kind is EventKind.BEACON_RESULT:
                self._on_beacon_result(ev, pr)
            elif ev.kind is EventKind.TIMER_EXPIRE:
                self._on_timer(ev, pr)
        report = TransferReport(distribution=self.dist, m=self.config.max_attempts,
                                seed=self.config.seed, ledger=self.ledger)
        for pid in sorted(self.paths):
            pr = self.paths[pid]
            if pr.state == _RUNNING:
                raise RuntimeError(f"path {pid} stalled without detection")
            assert pr.delivered + pr.dropped == pr.total, "packet conservation broken"
            report.delivered[pid] = pr.delivered
            report.dropped[pid] = pr.dropped
            report.retransmissions[pid] = pr.retrans
            if pr.state == _FAILED:
                report.failed_paths.append(pid)
                report.path_delays[pid] = math.inf
            else:
                report.path_delays[pid] = pr.delivery_time
        report.completion_time = max(
            (pr.resolved_time for pr in self.paths.values()), default=0.0)
        report.fault_records = self.records
        report.trace_lines = self.trace
        report.fabric_nodes = tuple(sorted(self.fabric))
        for nid, led in self.ledger.nodes.items():
            node = self.g.nodes.get(nid)
            if node is not None:
                node.residual_energy = led.residual
        return report


def run_transfer(g: TopologyGraph, table: RoutingTable, dist: Distribution,
                 ep: EnergyParams, link: LinkParams,
                 faults: FaultScript | None = None,
                 config: SimConfig | None = None,
                 destination: int | None = None) -> TransferReport:
    """Simulate one transfer of ``dist`` over the table's routes.

    Only one transfer may run on a topology at a time; reentrant calls are
    rejected.
    """
    if getattr(g, "_transfer_active", False):
        raise TransferActiveError("a transfer is already running on this topology")
    g._transfer_active = True
    try:
        engine = _Engine(g, table, dist, ep, link, faults,
                         config or SimConfig(), destination)
        return engine.run()
    finally:
        g._transfer_active = False
