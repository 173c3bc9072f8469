"""Toric diagrams, presets, and the bosonic and fermionic gluing pipelines."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .amplitude import ONE, ZERO, Amplitude, TruncationConfig, qdeg2
from .fock import VAC, ChargedPartition, FockState, bogoliubov_state, tuple_energy2
from .glue import GluingSpec, _reorder_sign, fermionic_glue, glue_pair, gluing_vector, normalize
from .partition import Partition, conjugate, enumerate_partitions, kappa, partitions_of
from .scalar import Scalar
from .vertex import adkmv_matrix, framed_vertex


class DiagramError(ValueError):
    """Raised for invalid toric diagrams; ``problems`` lists every violation found."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


Slot = tuple  # (vertex id, leg in 1..3)


@dataclass(frozen=True)
class InnerEdge:
    start: Slot
    end: Slot
    f: int
    kahler: str


@dataclass(frozen=True)
class OuterLeg:
    at: Slot
    framing: int
    label: str


@dataclass
class ToricDiagram:
    """Trivalent graph: inner edges run from ``start`` (side a) to ``end`` (side b)."""

    vertices: list
    edges: list
    outer: list
    identify: list = field(default_factory=list)

    # --- (de)serialization --------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "ToricDiagram":
        problems = []
        try:
            verts = [str(v["id"]) for v in data.get("vertices", [])]
            edges = [InnerEdge((str(e["from"][0]), int(e["from"][1])), (str(e["to"][0]), int(e["to"][1])),
                               int(e.get("f", 0)), str(e.get("kahler", f"Q{k + 1}")))
                     for k, e in enumerate(data.get("edges", []))]
            outer = [OuterLeg((str(o["at"][0]), int(o["at"][1])), int(o.get("framing", 0)),
                              str(o.get("label", f"x{k + 1}")))
                     for k, o in enumerate(data.get("outer", []))]
            ident = [[str(s) for s in cl] for cl in data.get("identify", [])]
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            problems.append(f"malformed diagram data: {exc!r}")
            raise DiagramError(problems) from exc
        d = cls(verts, edges, outer, ident)
        d.validate()
        return d

    @classmethod
    def load(cls, path) -> "ToricDiagram":
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DiagramError([f"invalid JSON: {exc}"]) from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v} for v in self.vertices],
            "edges": [{"from": list(e.start), "to": list(e.end), "f": e.f, "kahler": e.kahler}
                      for e in self.edges],
            "outer": [{"at": list(o.at), "framing": o.framing, "label": o.label} for o in self.outer],
            "identify": [list(c) for c in self.identify],
        }

    # --- validation -----------------------------------------------------

    def problems(self) -> list:
        out = []
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            out.append("duplicate vertex ids")
        if not self.vertices:
            out.append("no vertices")
        used: dict = {}
        slots = [(e.start, f"edge {k}") for k, e in enumerate(self.edges)]
        slots += [(e.end, f"edge {k}") for k, e in enumerate(self.edges)]
        slots += [(o.at, f"outer leg {o.label}") for o in self.outer]
        for slot, who in slots:
            v, leg = slot
            if v not in vs:
                out.append(f"{who} refers to unknown vertex {v!r}")
            if leg not in (1, 2, 3):
                out.append(f"{who} uses leg {leg}; legs are 1, 2, 3")
            if slot in used:
                out.append(f"slot {v}:{leg} used by both {used[slot]} and {who}")
            used[slot] = who
        for v in self.vertices:
            for leg in (1, 2, 3):
                if (v, leg) not in used:
                    out.append(f"slot {v}:{leg} is unused")
        symbols = {e.kahler for e in self.edges}
        seen = set()
        for cl in self.identify:
            for s in cl:
                if s not in symbols:
                    out.append(f"identification mentions unknown Kahler symbol {s!r}")
                if s in seen:
                    out.append(f"Kahler symbol {s!r} appears in two classes")
                seen.add(s)
        labels = [o.label for o in self.outer]
        if len(set(labels)) != len(labels):
            out.append("duplicate outer labels")
        if self.vertices and not out:
            reach = {self.vertices[0]}
            grow = True
            while grow:
                grow = False
                for e in self.edges:
                    a, b = e.start[0], e.end[0]
                    if (a in reach) != (b in reach):
                        reach |= {a, b}
                        grow = True
            if reach != vs:
                out.append("diagram is disconnected: " + ", ".join(sorted(vs - reach)) + " unreachable")
        return out

    def validate(self):
        p = self.problems()
        if p:
            raise DiagramError(p)

    # --- structure -----------------------------------------------------

    def kahler_map(self) -> dict:
        """Every Kahler symbol mapped to the first symbol of its identification class."""
        out = {e.kahler: e.kahler for e in self.edges}
        for cl in self.identify:
            for s in cl:
                out[s] = cl[0]
        return out

    def vertex_framing(self, v) -> tuple:
        fr = [0, 0, 0]
        for o in self.outer:
            if o.at[0] == v:
                fr[o.at[1] - 1] = o.framing
        return tuple(fr)

    def plan(self):
        """(root, tree steps [(edge, new vertex)], loop edges), in a fixed breadth-first order."""
        root = self.vertices[0]
        seen = {root}
        steps, used = [], set()
        progress = True
        while progress:
            progress = False
            for k, e in enumerate(self.edges):
                if k in used:
                    continue
                a, b = e.start[0], e.end[0]
                if (a in seen) != (b in seen):
                    new = b if a in seen else a
                    steps.append((e, new))
                    seen.add(new)
                    used.add(k)
                    progress = True
        loops = [e for k, e in enumerate(self.edges) if k not in used]
        return root, steps, loops

    @property
    def n_loops(self) -> int:
        return len(self.plan()[2])


# --- presets -------------------------------------------------------------

def _two_vertex(f: int) -> dict:
    return {
        "vertices": [{"id": "v1"}, {"id": "v2"}],
        "edges": [{"from": ["v1", 3], "to": ["v2", 1], "f": f, "kahler": "Q"}],
        "outer": [{"at": ["v1", 1], "framing": 0, "label": "x1"},
                  {"at": ["v1", 2], "framing": 0, "label": "x2"},
                  {"at": ["v2", 2], "framing": 0, "label": "x3"},
                  {"at": ["v2", 3], "framing": 0, "label": "x4"}],
        "identify": [],
    }


def xp_framing(p: int) -> int:
    """Edge framing used for the two-vertex family X_p."""
    return p + 1


def preset(name: str, p: int | None = None) -> ToricDiagram:
    """Shipped diagrams: "conifold" (X_-1), "xp" (needs p) and "local-p2"."""
    if name == "conifold":
        return ToricDiagram.from_dict(_two_vertex(xp_framing(-1)))
    if name == "xp":
        if p is None:
            raise ValueError("preset 'xp' needs the integer p")
        return ToricDiagram.from_dict(_two_vertex(xp_framing(int(p))))
    if name == "local-p2":
        # three vertices around the triangle; v1 -- v2 -- v3 is the tree, v1 -- v3 closes the loop
        return ToricDiagram.from_dict({
            "vertices": [{"id": "v1"}, {"id": "v2"}, {"id": "v3"}],
            "edges": [{"from": ["v2", 2], "to": ["v1", 3], "f": LOCAL_P2_FRAMING, "kahler": "Q1"},
                      {"from": ["v3", 2], "to": ["v2", 3], "f": LOCAL_P2_FRAMING, "kahler": "Q2"},
                      {"from": ["v1", 2], "to": ["v3", 3], "f": LOCAL_P2_FRAMING, "kahler": "Q3"}],
            "outer": [{"at": ["v1", 1], "framing": 0, "label": "x1"},
                      {"at": ["v2", 1], "framing": 0, "label": "x2"},
                      {"at": ["v3", 1], "framing": 0, "label": "x3"}],
            "identify": [["Q1", "Q2", "Q3"]],
        })
    raise ValueError(f"unknown preset {name!r}; choose conifold, xp or local-p2")


LOCAL_P2_FRAMING = -2
PRESETS = ("conifold", "xp", "local-p2")


# --- bosonic tables --------------------------------------------------------

class Table:
    """Coefficient table: slot list and {partition tuple (slot order): Amplitude}."""

    __slots__ = ("slots", "entries")

    def __init__(self, slots, entries=None):
        self.slots = list(slots)
        self.entries = {} if entries is None else entries

    def get(self, key) -> Amplitude:
        return self.entries.get(tuple(Partition(k) for k in key), ZERO)

    def add(self, key, amp: Amplitude):
        if amp.is_zero():
            return
        w = self.entries.get(key)
        s = amp if w is None else w + amp
        if s.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = s

    def index(self, slot) -> int:
        try:
            return self.slots.index(slot)
        except ValueError:
            raise DiagramError([f"slot {slot[0]}:{slot[1]} is not open in this table"]) from None

    def closed(self) -> Amplitude:
        return self.entries.get(tuple(Partition() for _ in self.slots), ZERO)

    def normalized(self, cfg: TruncationConfig) -> "Table":
        inv = self.closed().inverse_series(cfg)
        return Table(self.slots, {k: v.mul(inv, cfg) for k, v in self.entries.items()
                                  if not v.mul(inv, cfg).is_zero()})

    def items(self):
        return sorted(self.entries.items(), key=lambda kv: _key_sort(kv[0]))

    def __eq__(self, o):
        return isinstance(o, Table) and self.slots == o.slots and self.entries == o.entries


def _key_sort(key):
    return (sum(sum(p) for p in key), tuple((sum(p), tuple(-x for x in p)) for p in key))


def edge_weight(mu: Partition, f: int, symbol: str) -> Amplitude:
    """(-1)^((f+1)|mu|) q^(-f kappa(mu)/2) Q^|mu| for mu on the start side of the edge."""
    d = sum(mu)
    c = Scalar.q_power(Fraction(-f * kappa(mu), 2))
    if ((f + 1) * d) % 2:
        c = -c
    return Amplitude.monomial(c, {symbol: 2 * d})


def _weight(start_mu: Partition, f: int, symbol: str, form: str) -> Amplitude:
    if form == "weight":
        return edge_weight(start_mu, f, symbol)
    if form == "framed":
        d = sum(start_mu)
        return Amplitude.monomial(-1 if d % 2 else 1, {symbol: 2 * d})
    raise ValueError("form must be 'weight' or 'framed'")


def _bounded_tuples(outer_n: int, inner_n: int, outer_bound: int, inner_bound: int):
    """Partition tuples: first outer_n slots with total size <= outer_bound, the rest with total <= inner_bound."""
    def rec(n, bound):
        if n == 0:
            yield ()
            return
        for d in range(bound + 1):
            for mu in partitions_of(d):
                for rest in rec(n - 1, bound - d):
                    yield (mu,) + rest
    for o in rec(outer_n, outer_bound):
        for i in rec(inner_n, inner_bound):
            yield o, i


def vertex_table(diagram: ToricDiagram, v, cfg: TruncationConfig, glued_framing: dict | None = None) -> Table:
    """Framed vertex amplitudes at v; ``glued_framing`` adds framings on inner legs (leg -> f)."""
    outer_legs = [o.at[1] for o in diagram.outer if o.at[0] == v]
    inner_legs = [leg for leg in (1, 2, 3) if leg not in outer_legs]
    fr = list(diagram.vertex_framing(v))
    for leg, f in (glued_framing or {}).items():
        fr[leg - 1] = f
    qmax = int(cfg.q_degree)
    slots = [(v, leg) for leg in (1, 2, 3)]
    t = Table(slots)
    for o, i in _bounded_tuples(len(outer_legs), len(inner_legs), cfg.energy, qmax):
        mus = [Partition()] * 3
        for leg, mu in zip(outer_legs, o):
            mus[leg - 1] = mu
        for leg, mu in zip(inner_legs, i):
            mus[leg - 1] = mu
        t.add(tuple(mus), Amplitude.const(framed_vertex(*mus, tuple(fr))))
    return t


def _pending_weights(diagram: ToricDiagram) -> dict:
    """Slot -> weight: 0 outer, 2 tree-edge end, 1 loop end (both loop ends stay open together)."""
    _, _, loops = diagram.plan()
    w = {o.at: 0 for o in diagram.outer}
    for e in diagram.edges:
        w[e.start] = w[e.end] = 2
    for e in loops:
        w[e.start] = w[e.end] = 1
    return w


def _prune_table(t: Table, weights: dict, cfg: TruncationConfig) -> Table:
    """Drop entries that cannot stay inside the window once every open inner slot is glued.

    An inner slot holding mu still costs Q^|mu| (shared by the two ends of a loop).
    """
    oi = [k for k, s in enumerate(t.slots) if weights[s] == 0]
    wi = [(k, weights[s]) for k, s in enumerate(t.slots) if weights[s]]
    out = Table(t.slots)
    for key, amp in t.entries.items():
        if sum(sum(key[k]) for k in oi) > cfg.energy:
            continue
        pend = sum(w * sum(key[k]) for k, w in wi)  # in quarter units of Q
        keep = Amplitude({m: c for m, c in amp.terms.items() if 2 * qdeg2(m) + pend <= 2 * cfg.q_half})
        if not keep.is_zero():
            out.entries[key] = keep
    return out


def bosonic_glue_step(T: Table, slot, V: Table, vslot, f: int, symbol: str, cfg: TruncationConfig,
                      start_in_T: bool = True, form: str = "weight") -> Table:
    """Attach the table V along T's ``slot`` and V's ``vslot``.

    The glued partition is mu on the start side and mu^t on the end side.
    form "weight" multiplies by edge_weight with both vertices unframed along
    the edge; form "framed" multiplies by (-1)^|mu| Q^|mu| only and expects the
    table holding the end side to carry framing f on that leg.
    """
    if form not in ("weight", "framed"):
        raise ValueError("form must be 'weight' or 'framed'")
    k1, k2 = T.index(slot), V.index(vslot)
    g1: dict = {}
    for key, amp in T.entries.items():
        g1.setdefault(key[k1], []).append((key[:k1] + key[k1 + 1:], amp))
    g2: dict = {}
    for key, amp in V.entries.items():
        g2.setdefault(key[k2], []).append((key[:k2] + key[k2 + 1:], amp))
    out = Table(T.slots[:k1] + T.slots[k1 + 1:] + V.slots[:k2] + V.slots[k2 + 1:])
    for mu, l1 in g1.items():
        nu = conjugate(mu)
        l2 = g2.get(nu)
        if not l2 or 2 * sum(mu) > cfg.q_half:
            continue
        w = _weight(mu if start_in_T else nu, f, symbol, form)
        for r1, a1 in l1:
            x = a1.mul(w, cfg)
            if x.is_zero():
                continue
            for r2, a2 in l2:
                out.add(r1 + r2, x.mul(a2, cfg))
    return out


def bosonic_self_glue(T: Table, start_slot, end_slot, f: int, symbol: str, cfg: TruncationConfig,
                      form: str = "weight") -> Table:
    """Diagonal sum over (mu, mu^t) in the two slots with edge_weight(mu) (see bosonic_glue_step for form)."""
    ka, kb = T.index(start_slot), T.index(end_slot)
    keep = [k for k in range(len(T.slots)) if k not in (ka, kb)]
    out = Table([T.slots[k] for k in keep])
    for key, amp in T.entries.items():
        mu = key[ka]
        if key[kb] != conjugate(mu) or 2 * sum(mu) > cfg.q_half:
            continue
        out.add(tuple(key[k] for k in keep), amp.mul(_weight(mu, f, symbol, form), cfg))
    return out


def partition_function(diagram: ToricDiagram, cfg: TruncationConfig, normalized: bool = True,
                       form: str = "weight") -> Table:
    """Boundary table of the diagram, keyed by outer-leg partitions in diagram.outer order."""
    diagram.validate()
    kmap = diagram.kahler_map()
    root, steps, loops = diagram.plan()
    weights = _pending_weights(diagram)

    def vt(v):
        extra = {e.end[1]: e.f for e in diagram.edges if e.end[0] == v} if form == "framed" else None
        return vertex_table(diagram, v, cfg, extra)

    T = _prune_table(vt(root), weights, cfg)
    for e, new in steps:
        start_in_T = e.end[0] == new
        old_slot, new_slot = (e.start, e.end) if start_in_T else (e.end, e.start)
        T = bosonic_glue_step(T, old_slot, vt(new), new_slot, e.f, kmap[e.kahler], cfg, start_in_T, form)
        T = _prune_table(T, weights, cfg)
    for e in loops:
        T = bosonic_self_glue(T, e.start, e.end, e.f, kmap[e.kahler], cfg, form)
    order = [T.index(o.at) for o in diagram.outer]
    T = Table([T.slots[k] for k in order], {tuple(key[k] for k in order): a for key, a in T.entries.items()})
    return T.normalized(cfg) if normalized else T


# --- fermionic pipeline -----------------------------------------------------

@dataclass
class FermionicResult:
    """Output of the fermionic pipeline, components in diagram.outer order.

    raw: the glued state before normalization (Theta sectors included).
    state: raw divided by its closed part (a Bogoliubov transform).
    table: Theta^0 part of raw divided by the Theta^0 part of the closed part,
        restricted to charge-0 boundary tuples.
    """

    raw: FockState
    closed: Amplitude
    state: FockState
    table: Table
    loops: list


def _vertex_state(diagram: ToricDiagram, v, cfg: TruncationConfig) -> FockState:
    outer_legs = {o.at[1] for o in diagram.outer if o.at[0] == v}
    outer_c = tuple(l - 1 for l in (1, 2, 3) if l in outer_legs)
    inner_c = tuple(l - 1 for l in (1, 2, 3) if l not in outer_legs)
    inner_budget = cfg.q_half  # twice-energy per vertex: each edge pays Q^e for energy e
    total = cfg.energy + int(cfg.q_degree)
    A = adkmv_matrix(diagram.vertex_framing(v), energy=max(total, 1))
    caps = [(outer_c, 2 * cfg.energy), (inner_c, inner_budget)]
    return bogoliubov_state(A, TruncationConfig(total, cfg.q_half, cfg.theta_window), caps)


def _prune_state(S: FockState, slots, weights: dict, cfg: TruncationConfig) -> FockState:
    """Fermionic analogue of _prune_table: an inner component of energy e still costs Q^e."""
    oi = [k for k, s in enumerate(slots) if weights[s] == 0]
    wi = [(k, weights[s]) for k, s in enumerate(slots) if weights[s]]
    out = FockState(S.n_components)
    for b, amp in S.terms.items():
        if sum(b[k].energy2() for k in oi) > 2 * cfg.energy:
            continue
        pend = sum(w * b[k].energy2() for k, w in wi) // 2  # energy2 is twice the energy
        keep = Amplitude({m: c for m, c in amp.terms.items() if 2 * qdeg2(m) + 2 * pend <= 2 * cfg.q_half})
        if not keep.is_zero():
            out.terms[b] = keep
    return out


def reorder_components(S: FockState, order) -> FockState:
    """Permute tensor factors so that new component k is old component order[k]."""
    out = FockState(len(order))
    for b, a in S.terms.items():
        nb = tuple(b[k] for k in order)
        out.add_term(nb, a if _reorder_sign(b, order) > 0 else -a)
    return out


def fermionic_partition_function(diagram: ToricDiagram, cfg: TruncationConfig,
                                 phase: str = "pairing") -> FermionicResult:
    """Glue ADKMV Bogoliubov transforms along the diagram.

    A bosonic edge framing f is realised by the gluing vector P^(-f) with the
    start side as a.  Tree edges carry no Theta variable; loop edge k carries Theta_k ("T<k>").
    """
    diagram.validate()
    kmap = diagram.kahler_map()
    root, steps, loops = diagram.plan()
    weights = _pending_weights(diagram)
    # both open ends of a loop may carry energy up to the Q-degree
    big = TruncationConfig(cfg.energy + 2 * int(cfg.q_degree), cfg.q_half, cfg.theta_window)
    slots = [(root, leg) for leg in (1, 2, 3)]
    S = _prune_state(_vertex_state(diagram, root, cfg), slots, weights, cfg)
    for e, new in steps:
        V = _vertex_state(diagram, new, cfg)
        vslots = [(new, leg) for leg in (1, 2, 3)]
        spec = GluingSpec.special(-e.f, phase)
        P = gluing_vector(spec, cfg, kmap[e.kahler])
        if e.end[0] == new:
            ka, kb = slots.index(e.start), vslots.index(e.end)
            S = glue_pair(S, ka, V, kb, spec, big, P=P)
            slots = slots[:ka] + slots[ka + 1:] + vslots[:kb] + vslots[kb + 1:]
        else:
            ka, kb = vslots.index(e.start), slots.index(e.end)
            S = glue_pair(V, ka, S, kb, spec, big, P=P)
            slots = vslots[:ka] + vslots[ka + 1:] + slots[:kb] + slots[kb + 1:]
        S = _prune_state(S, slots, weights, cfg)
        S = normalize(S, cfg)
    loop_names = []
    for k, e in enumerate(loops, start=1):
        name = f"T{k}"
        loop_names.append(name)
        spec = GluingSpec.special(-e.f, phase)
        ka, kb = slots.index(e.start), slots.index(e.end)
        S = fermionic_glue(S, ka, kb, spec, big, kmap[e.kahler], name)
        slots = [s for j, s in enumerate(slots) if j not in (ka, kb)]
        S = _prune_state(S, slots, weights, cfg)
    order = [slots.index(o.at) for o in diagram.outer]
    raw = reorder_components(S, order).within(TruncationConfig(cfg.energy, cfg.q_half, cfg.q_half))
    closed = raw.coefficient((VAC,) * raw.n_components)
    state = normalize(raw, cfg, closed) if loops else raw
    c0 = closed.theta_constant()
    inv0 = c0.inverse_series(cfg)
    table = Table([o.at for o in diagram.outer])
    for b, a in raw.terms.items():
        if any(c.charge for c in b):
            continue
        v = a.theta_constant().mul(inv0, cfg)
        if not v.is_zero():
            table.entries[tuple(c.shape for c in b)] = v
    return FermionicResult(raw, closed, state, table, loop_names)


def compare_tables(bos: Table, fer: Table, size_bound: int) -> list:
    """Boundary tuples (size <= size_bound) where the two tables differ, with both values."""
    keys = {k for k in list(bos.entries) + list(fer.entries) if sum(sum(p) for p in k) <= size_bound}
    out = []
    for k in sorted(keys, key=_key_sort):
        x, y = bos.entries.get(k, ZERO), fer.entries.get(k, ZERO)
        if x != y:
            out.append((k, x, y))
    return out
