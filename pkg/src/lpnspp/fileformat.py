"""Line-oriented instance files.

::

    [places]
    p0 init=1
    ps l=1
    [transitions]
    t label=a
    [arcs]
    p0 -> t
    t -> ps : 1
    [events]
    a protectable gamma=1 cost=5 semantics=parikh
    [budget]
    W = 5

``#`` starts a comment. Sections may come in any order but only once.
Defaults: ``init=0``, ``l=0``, arc weight 1, ``semantics=parikh``, a
transition without ``label=`` is labeled by its own name and a label not
listed under ``[events]`` is unprotectable.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .model import ProtectableEvent, Semantics, SppInstance
from .net import LabeledPetriNet, Marking, NetError

IDENT = r"[A-Za-z0-9_.-]+"
_IDENT = re.compile(rf"{IDENT}\Z")
_NAT = re.compile(r"\d+\Z")
_RATIONAL = re.compile(r"(\d+/\d+|\d+(\.\d*)?|\.\d+)\Z")
_ARC = re.compile(rf"({IDENT})\s*->\s*({IDENT})\s*(?::\s*(\S+))?\Z")
SECTIONS = ("places", "transitions", "arcs", "events", "budget")


class ParseError(ValueError):
    def __init__(self, errors: list[tuple[int, str]]):
        self.errors = errors
        super().__init__("\n".join(f"line {n}: {msg}" for n, msg in errors))


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL.match(text):
        raise ValueError(f"not a decimal or rational: {text!r}")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fields(words, allowed, lineno, errors):
    out = {}
    for w in words:
        key, eq, val = w.partition("=")
        if not eq or key not in allowed:
            errors.append((lineno, f"unexpected field {w!r}"))
        elif key in out:
            errors.append((lineno, f"field {key!r} given twice"))
        else:
            out[key] = val
    return out


def _nat(val, what, lineno, errors):
    if not _NAT.match(val):
        errors.append((lineno, f"{what} must be a natural number, got {val!r}"))
        return 0
    return int(val)


def _split_sections(text: str, errors):
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[\s*(\w+)\s*\]", line)
        if m:
            name = m.group(1)
            if name not in SECTIONS:
                errors.append((lineno, f"unknown section [{name}]"))
                current = None
            elif name in sections:
                errors.append((lineno, f"duplicate section [{name}]"))
                current = None
            else:
                current = sections.setdefault(name, [])
            continue
        if current is None:
            errors.append((lineno, "record outside a known section"))
            continue
        current.append((lineno, line))
    return sections


def parse_instance(text: str) -> SppInstance:
    errors: list[tuple[int, str]] = []
    sections = _split_sections(text, errors)

    places, initial, requirement = [], {}, {}
    for n, line in sections.get("places", []):
        name, *rest = line.split()
        if not _IDENT.match(name):
            errors.append((n, f"bad place identifier {name!r}"))
            continue
        if name in initial:
            errors.append((n, f"duplicate place {name}"))
            continue
        f = _fields(rest, ("init", "l"), n, errors)
        places.append(name)
        initial[name] = _nat(f.get("init", "0"), "init", n, errors)
        requirement[name] = _nat(f.get("l", "0"), "l", n, errors)
        if initial[name] > 0 and requirement[name] > 0:
            errors.append((n, f"initially marked secret place {name}: "
                              "initially marked places need l=0"))

    transitions, labels = [], {}
    for n, line in sections.get("transitions", []):
        name, *rest = line.split()
        if not _IDENT.match(name):
            errors.append((n, f"bad transition identifier {name!r}"))
            continue
        if name in labels:
            errors.append((n, f"duplicate transition {name}"))
            continue
        if name in initial:
            errors.append((n, f"{name} is already a place"))
            continue
        f = _fields(rest, ("label",), n, errors)
        label = f.get("label", name)
        if not _IDENT.match(label):
            errors.append((n, f"bad event identifier {label!r}"))
        transitions.append(name)
        labels[name] = label

    flow: dict[tuple[str, str], int] = {}
    for n, line in sections.get("arcs", []):
        m = _ARC.match(line)
        if not m:
            errors.append((n, f"malformed arc {line!r}"))
            continue
        src, dst, w = m.groups()
        weight = _nat(w, "arc weight", n, errors) if w is not None else 1
        ok = (src in initial and dst in labels) or (src in labels and dst in initial)
        if not ok:
            for end in (src, dst):
                if end not in initial and end not in labels:
                    errors.append((n, f"arc references unknown place or transition {end!r}"))
            if src in initial and dst in initial or src in labels and dst in labels:
                errors.append((n, f"arc {src} -> {dst} must join a place and a transition"))
            continue
        if (src, dst) in flow:
            errors.append((n, f"duplicate arc {src} -> {dst}"))
            continue
        flow[(src, dst)] = weight

    alphabet, prot = [], {}
    for n, line in sections.get("events", []):
        name, *rest = line.split()
        if not _IDENT.match(name):
            errors.append((n, f"bad event identifier {name!r}"))
            continue
        if name in alphabet:
            errors.append((n, f"duplicate event {name}"))
            continue
        alphabet.append(name)
        kind, *rest = rest or [""]
        if kind == "unprotectable":
            if rest:
                errors.append((n, "unprotectable events take no fields"))
        elif kind == "protectable":
            f = _fields(rest, ("gamma", "cost", "semantics"), n, errors)
            for key in ("gamma", "cost"):
                if key not in f:
                    errors.append((n, f"protectable event {name} needs {key}="))
            gamma = _nat(f.get("gamma", "0"), "gamma", n, errors)
            try:
                cost = parse_rational(f.get("cost", "0"))
            except ValueError as err:
                errors.append((n, str(err)))
                cost = Fraction(0)
            try:
                sem = Semantics(f.get("semantics", "parikh"))
            except ValueError:
                errors.append((n, "semantics must be parikh or indicator"))
                sem = Semantics.PARIKH
            prot[name] = ProtectableEvent(name, gamma, cost, sem)
        else:
            errors.append((n, "expected 'protectable' or 'unprotectable'"))
    for t in transitions:
        if labels[t] not in alphabet:
            alphabet.append(labels[t])

    budget = None
    for n, line in sections.get("budget", []):
        m = re.fullmatch(r"W\s*=\s*(\S+)", line)
        if not m:
            errors.append((n, f"malformed budget {line!r}"))
        elif budget is not None:
            errors.append((n, "budget given twice"))
        else:
            try:
                budget = parse_rational(m.group(1))
            except ValueError as err:
                errors.append((n, str(err)))

    if not errors:
        if not places:
            errors.append((0, "no places declared"))
        if not transitions:
            errors.append((0, "no transitions declared"))
    if errors:
        raise ParseError(errors)
    try:
        net = LabeledPetriNet(tuple(places), tuple(transitions), flow, labels, tuple(alphabet))
    except NetError as err:
        raise ParseError([(0, str(err))]) from None
    return SppInstance(net, tuple(initial[p] for p in places), requirement, prot, budget)


def parse_net(text: str) -> tuple[LabeledPetriNet, Marking]:
    """Read just the net and initial marking; requirements and events are ignored."""
    inst = parse_instance(text)
    return inst.net, inst.initial


def serialize_instance(inst: SppInstance, origin: Mapping[str, str] | None = None) -> str:
    """Text form of ``inst``; ``origin`` adds ``# origin`` comments per transition."""
    net = inst.net
    lines = ["[places]"]
    for p, k in zip(net.places, inst.initial):
        fields = [p]
        if k:
            fields.append(f"init={k}")
        if inst.requirement[p]:
            fields.append(f"l={inst.requirement[p]}")
        lines.append(" ".join(fields))
    lines += ["", "[transitions]"]
    for t in net.transitions:
        line = f"{t} label={net.labeling[t]}"
        if origin and t in origin and origin[t] != t:
            line += f"  # origin {origin[t]}"
        lines.append(line)
    lines += ["", "[arcs]"]
    for t, i in net.transition_index.items():
        for p, w in zip(net.places, net.pre[i]):
            if w:
                lines.append(f"{p} -> {t}" + (f" : {w}" if w != 1 else ""))
        for p, w in zip(net.places, net.post[i]):
            if w:
                lines.append(f"{t} -> {p}" + (f" : {w}" if w != 1 else ""))
    lines += ["", "[events]"]
    for a in net.alphabet:
        if a in inst.protectable:
            ev = inst.protectable[a]
            lines.append(f"{a} protectable gamma={ev.gamma} "
                         f"cost={format_rational(ev.cost)} semantics={ev.semantics}")
        else:
            lines.append(f"{a} unprotectable")
    if inst.budget is not None:
        lines += ["", "[budget]", f"W = {format_rational(inst.budget)}"]
    return "\n".join(lines) + "\n"


def load_instance(path) -> SppInstance:
    with open(path) as fh:
        return parse_instance(fh.read())


def save_instance(inst: SppInstance, path, origin=None):
    with open(path, "w") as fh:
        fh.write(serialize_instance(inst, origin))
