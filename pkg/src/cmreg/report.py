"""Command dispatch for parsed scripts and text/JSON rendering of the results."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .cech import CechSpec, cohomological_dimension, end_of_cohomology, reg_wrt, CERTIFIED
from .dsl import Command, SessionScript
from .frobenius import f_depth_probe
from .groebner import ModulePresentation, ideal_gb, vec_to_polys
from .poly import MINUS_INF, AlgebraError, Polynomial
from .resolution import INFINITY, grade, minimal_free_resolution
from .verify import FAILS, corpus, run_suite, verify

__all__ = ["Flags", "CommandResult", "Report", "execute", "render"]


@dataclass
class Flags:
    floor: int | None = None
    smax: int = 4
    threads: int = 1


@dataclass
class CommandResult:
    echo: str
    payload: dict
    text: str
    statuses: tuple = ()
    error: str | None = None
    seconds: float = 0.0


@dataclass
class Report:
    results: list = field(default_factory=list)

    @property
    def failed(self):
        return any(r.payload.get("verdicts", {}).get(FAILS) for r in self.results)

    @property
    def error(self):
        return next((r.error for r in self.results if r.error), None)

    def exit_code(self):
        if self.error:
            return 3
        return 1 if self.failed else 0


def _enc(x):
    if x is MINUS_INF:
        return "minus_infinity"
    if x is INFINITY:
        return "infinity"
    return x


def _txt(x):
    if x is MINUS_INF:
        return "-inf"
    if x is INFINITY:
        return "inf"
    return str(x)


def _spec(script: SessionScript, ref) -> CechSpec:
    ring = script.ring
    gens, labels = [], []
    for f in ref.polys:
        if not f:
            continue
        e = next(iter(f.terms))
        if e not in gens:
            gens.append(e)
            labels.append("a0")
    if ref.plus_rplus:
        for i in range(ring.t):
            e = ring.var(ring.m + i)
            if e not in gens:
                gens.append(e)
                labels.append("R+")
    return CechSpec(ring, tuple(gens), tuple(labels))


def _gb(script, cmd):
    ring = script.ring
    if cmd.target in script.ideals:
        G = ideal_gb(ring, script.ideals[cmd.target])
        elems = [vec_to_polys(ring, v, 1)[0].render() for v in G.elements]
    else:
        G = script.modules[cmd.target].gb
        rank = G.module.rank
        elems = ["[" + ", ".join(p.render() for p in vec_to_polys(ring, v, rank)) + "]"
                 for v in G.elements]
    text = "\n".join([f"Groebner basis ({ring.order}, {len(elems)} elements)"] + elems)
    return {"order": ring.order, "elements": elems}, text, ()


def _resolve(script, cmd):
    M = script.modules[cmd.target]
    ch = minimal_free_resolution(M, cmd.number)
    lines = [f"minimal free resolution, length {ch.length}"]
    steps = []
    for i, Fm in enumerate(ch.modules):
        shifts = [list(s) if isinstance(s, tuple) else s for s in Fm.shifts]
        entry = {"i": i, "rank": Fm.rank, "shifts": shifts}
        if i:
            entry["matrix"] = [[p.render() for p in col] for col in ch.matrix(i)]
        steps.append(entry)
        lines.append(f"F_{i}: rank {Fm.rank}, shifts {Fm.coarse_shifts()}")
    return {"length": ch.length, "modules": steps}, "\n".join(lines), ()


def _betti(script, cmd):
    B = minimal_free_resolution(script.modules[cmd.target]).betti
    return B.to_json(), B.render(), ()


def _reg(script, cmd, flags):
    M = script.modules[cmd.target]
    rep = reg_wrt(M, _spec(script, cmd.ideal), cmd.number or 0, flags.floor)
    text = rep.render()
    return rep.to_json(), text, tuple(e.status for e in rep.entries)


def _end(script, cmd, flags):
    M = script.modules[cmd.target]
    C = _spec(script, cmd.ideal)
    e, st = end_of_cohomology(M, C, cmd.number, flags.floor)
    text = f"H^{cmd.number}: end = {_txt(e)} ({'certified' if st == CERTIFIED else 'window-bounded'})"
    return {"i": cmd.number, "ideal": C.render(), "end": _enc(e), "status": st}, text, (st,)


def _cd(script, cmd, flags):
    M = script.modules[cmd.target]
    C = _spec(script, cmd.ideal)
    rep = cohomological_dimension(M, C)
    routes = {k: _enc(v) for k, v in sorted(rep.routes.items())}
    status = CERTIFIED if rep.equal else "BOUNDED"
    if rep.equal:
        text = f"cd wrt {C.render()} = {_txt(rep.lower)}"
    else:
        text = f"cd wrt {C.render()} in [{_txt(rep.lower)}, {_txt(rep.upper)}]"
    text += " (" + ", ".join(f"{k}: {_txt(v)}" for k, v in sorted(rep.routes.items())) + ")"
    return ({"ideal": C.render(), "lower": _enc(rep.lower), "upper": _enc(rep.upper),
             "routes": routes, "status": status}, text, (status,))


def _grade(script, cmd, flags):
    ring = script.ring
    gens = list(cmd.ideal.polys)
    if cmd.ideal.plus_rplus:
        gens += [Polynomial.monomial(ring, ring.var(ring.m + i)) for i in range(ring.t)]
    g = grade(gens, script.modules[cmd.target])
    name = cmd.ideal.render()
    return {"ideal": name, "grade": _enc(g)}, f"grade {name} on {cmd.target} = {_txt(g)}", ()


def _fdepth(script, cmd, flags):
    ring = script.ring
    gens = script.ideals[cmd.target]
    base = ring.base_ring()
    polys = []
    for f in gens:
        if not f:
            continue
        e = next(iter(f.terms))
        polys.append(Polynomial.monomial(base, e[:ring.m]))
    Q = ModulePresentation.cyclic(base, polys)
    rep = f_depth_probe(Q, flags.smax)
    lines = [f"F-depth of R0/{cmd.target} = {_txt(rep.fdepth) if rep.fdepth is not None else 'undecided'}"
             f" (depth {_txt(rep.depth)}, {rep.status.lower()})"]
    for i, (st, s) in sorted(rep.per_i.items()):
        lines.append(f"H^{i}: {st}" + (f"({s})" if s is not None else ""))
    return rep.to_json(), "\n".join(lines), (rep.status,)


def _verify(script, cmd, flags):
    seed = cmd.options.get("seed", 0)
    size = cmd.options.get("size", 20)
    insts = corpus(seed, size)
    if cmd.target == "all":
        results = run_suite(insts, flags.threads)
    else:
        results = [verify(cmd.target, i) for i in insts if cmd.target in i.statements]
    counts = {}
    for r in results:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    lines = [r.render() for r in results]
    lines.append("summary: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    payload = {"seed": seed, "size": size, "verdicts": dict(sorted(counts.items())),
               "checks": [r.to_json() for r in results]}
    return payload, "\n".join(lines), tuple(sorted(counts))


_DISPATCH = {"gb": _gb, "resolve": _resolve, "betti": _betti, "reg": _reg, "end": _end,
             "cd": _cd, "grade": _grade, "fdepth": _fdepth, "verify": _verify}


def _run(script, cmd: Command, flags):
    fn = _DISPATCH[cmd.kind]
    if cmd.kind in ("gb", "resolve", "betti"):
        return fn(script, cmd)
    return fn(script, cmd, flags)


def execute(script: SessionScript, flags: Flags | None = None) -> Report:
    """Run every command in order; stops at the first engine error."""
    flags = flags or Flags()
    report = Report()
    for cmd in script.commands:
        echo = cmd.render()
        t0 = time.perf_counter()
        try:
            payload, text, statuses = _run(script, cmd, flags)
        except (AlgebraError, ValueError, ZeroDivisionError) as exc:
            msg = f"{cmd.line}:{cmd.col}: {cmd.kind}: {exc}"
            report.results.append(CommandResult(echo, {}, "", (), msg, time.perf_counter() - t0))
            break
        report.results.append(CommandResult(echo, payload, text, statuses, None,
                                            time.perf_counter() - t0))
    return report


def render(report: Report, mode: str = "text", timing: bool = False) -> str:
    """Text or JSON; JSON never carries timing so equal inputs give equal bytes."""
    if mode == "json":
        doc = {"commands": [], "exit_code": report.exit_code()}
        for r in report.results:
            entry = {"command": r.echo, "result": r.payload, "statuses": list(r.statuses)}
            if r.error:
                entry["error"] = r.error
            doc["commands"].append(entry)
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    out = []
    for r in report.results:
        out.append(f"> {r.echo}")
        if r.error:
            out.append(f"error: {r.error}")
        else:
            out.append(r.text)
        if timing:
            out.append(f"({r.seconds:.3f} s)")
    return "\n".join(out) + "\n"
