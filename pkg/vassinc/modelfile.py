"""
Text formats for models and monoids.

A model file is line oriented; `#` starts a comment:

    vass NAME
    dim D
    alphabet a b c
    states s t                       optional; when present every state must be declared
    eps on                           allows eps labels
    init STATE (n1,...,nD)
    trans SRC LABEL (z1,...,zD) DST  LABEL is a letter or eps
    accept upward STATE (n1,...,nD)
    accept downward STATE (x1,...,xD)   x may be w
    accept updown STATE up[i1,...]=(n...) down=(x...)   up coordinates are 1-based
    accept singleton STATE (n1,...,nD)
    hole STATE (x1,...,xD)

States and letters are single tokens. A token <a,b> is read as the tuple (a, b); a letter a@2 is the decorated
letter (a, 2). A monoid file is

    monoid SIZE IDENTITY
    SIZE rows of SIZE element indices (the multiplication table)
    hom LETTER INDEX

print_model and print_monoid write files that parse back to the same objects.
"""

import logging
import re

from vassinc.errors import ModelError, ParseError, VassError
from vassinc.ideals import (
    OMEGA,
    Configuration,
    DownAtom,
    DownSet,
    UpAtom,
    UpSet,
    format_vector,
    member,
    state_key,
    state_label,
)
from vassinc.model import EPS, Downward, Singleton, Transition, UpDown, UpDownAtom, Upward, Vass, label_text
from vassinc.monoid import DecoratedLetter, FiniteMonoid, Hom

logger = logging.getLogger(__name__)

TOKEN = re.compile(r"[^\s(\[]*(?:\[[^\]]*\])?=?(?:\([^)]*\))?")
UPDOWN = re.compile(r"^up\[([^\]]*)\]=(\([^)]*\))$")
DECORATED = re.compile(r"^(.+)@(\d+)$")


class _Token(str):
    """A token remembering its line and column."""

    def __new__(cls, text, line, column):
        token = super().__new__(cls, text)
        token.line = line
        token.column = column
        return token


def _tokenize(text):
    statements = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [
            _Token(match.group(0), number, match.start() + 1) for match in TOKEN.finditer(line) if match.group(0)
        ]
        if tokens:
            statements.append(tokens)
    return statements


class _Reader:
    def __init__(self, path):
        self.path = path

    def error(self, message, token=None):
        if token is None:
            return ParseError(message, 1, 1, self.path)
        return ParseError(message, token.line, token.column, self.path)

    def integer(self, token, natural=True):
        text = token.strip()
        if not re.fullmatch(r"-?\d+", text):
            raise self.error(f"expected an integer, got '{token}'", token)
        value = int(text)
        if natural and value < 0:
            raise self.error(f"expected a natural number, got '{token}'", token)
        return value

    def vector(self, token, dim, omega=False, natural=True, what="vector"):
        if not (token.startswith("(") and token.endswith(")")):
            raise self.error(f"expected a {what} like (1,2), got '{token}'", token)
        if dim is None:
            raise self.error(f"{what} before the dim line", token)
        inner = token[1:-1].strip()
        parts = [p.strip() for p in inner.split(",")] if inner else []
        if len(parts) != dim:
            raise self.error(f"{what} has {len(parts)} entries, dimension is {dim}", token)
        values = []
        for part in parts:
            if part == "w":
                if not omega:
                    raise self.error(f"w is not allowed in a {what}", token)
                values.append(OMEGA)
            else:
                values.append(self.integer(_Token(part, token.line, token.column), natural))
        return tuple(values)


def parse_name(text):
    """Read a state token: <a,b> is a tuple, anything else a string."""
    if text.startswith("<") and text.endswith(">"):
        parts, depth, current = [], 0, ""
        for ch in text[1:-1]:
            if ch == "," and depth == 0:
                parts.append(current)
                current = ""
                continue
            depth += ch == "<"
            depth -= ch == ">"
            current += ch
        if text[1:-1]:
            parts.append(current)
        return tuple(parse_name(part) for part in parts)
    return str(text)


def parse_label(text):
    if text == "eps":
        return EPS
    decorated = DECORATED.match(text)
    if decorated:
        return DecoratedLetter(parse_label(decorated.group(1)), int(decorated.group(2)))
    return parse_name(text)


def _expect(reader, statement, count):
    if len(statement) != count:
        raise reader.error(f"'{statement[0]}' takes {count - 1} arguments, got {len(statement) - 1}", statement[0])


def parse_model(text, path=None):
    """
    :param text: model file contents
    :param path: used in error messages only
    :return: Vass
    :raises ParseError:
    """
    reader = _Reader(path)
    statements = _tokenize(text)
    dim = None
    declared = None
    eps_on = False
    for statement in statements:
        keyword = statement[0]
        if keyword == "dim":
            _expect(reader, statement, 2)
            dim = reader.integer(statement[1])
        elif keyword == "states":
            declared = {parse_name(token) for token in statement[1:]}
        elif keyword == "eps":
            if statement[1:] != ["on"]:
                raise reader.error("expected 'eps on'", keyword)
            eps_on = True
    if dim is None:
        raise reader.error("missing dim line")

    name = "vass"
    alphabet = None
    initial = None
    transitions = []
    acceptance_kind = None
    acceptance = []
    holes = []
    referenced = []
    seen_dim = False

    for statement in statements:
        keyword = statement[0]
        if keyword == "dim":
            seen_dim = True
            continue
        if keyword in ("states", "eps"):
            continue
        if keyword == "vass":
            name = " ".join(statement[1:]) or name
            continue
        if keyword == "alphabet":
            alphabet = set()
            for token in statement[1:]:
                letter = parse_label(token)
                if letter is EPS:
                    raise reader.error("eps cannot be part of the alphabet", token)
                alphabet.add(letter)
            continue
        current_dim = dim if seen_dim else None
        if keyword == "init":
            _expect(reader, statement, 3)
            if initial is not None:
                raise reader.error("second init line", keyword)
            state = parse_name(statement[1])
            referenced.append((state, statement[1]))
            initial = (Configuration(state, reader.vector(statement[2], current_dim, what="initial vector")), keyword)
        elif keyword == "trans":
            _expect(reader, statement, 5)
            label = parse_label(statement[2])
            if label is EPS and not eps_on:
                raise reader.error("eps transition without 'eps on'", statement[2])
            if label is not EPS and alphabet is not None and label not in alphabet:
                raise reader.error(f"letter '{statement[2]}' is not in the alphabet", statement[2])
            effect = reader.vector(statement[3], current_dim, natural=False, what="effect")
            source, target = parse_name(statement[1]), parse_name(statement[4])
            referenced.extend([(source, statement[1]), (target, statement[4])])
            transitions.append(Transition(source, label, effect, target))
        elif keyword == "accept":
            if len(statement) < 2:
                raise reader.error("accept needs a kind", keyword)
            kind = str(statement[1])
            if acceptance_kind is not None and kind != acceptance_kind:
                raise reader.error(f"cannot mix '{acceptance_kind}' and '{kind}' acceptance", statement[1])
            acceptance_kind = kind
            if kind == "updown":
                _expect(reader, statement, 5)
                acceptance.append((_updown_atom(reader, statement, current_dim), statement[2]))
            elif kind in ("upward", "downward", "singleton"):
                _expect(reader, statement, 4)
                vector = reader.vector(statement[3], current_dim, omega=kind == "downward", what=f"{kind} vector")
                acceptance.append(((parse_name(statement[2]), vector), statement[2]))
            else:
                raise reader.error(f"unknown acceptance kind '{kind}'", statement[1])
        elif keyword == "hole":
            _expect(reader, statement, 3)
            holes.append(
                (DownAtom(parse_name(statement[1]), reader.vector(statement[2], current_dim, omega=True, what="hole")),
                 statement[1])
            )
        else:
            raise reader.error(f"unknown keyword '{keyword}'", keyword)

    if initial is None:
        raise reader.error("missing init line")
    if declared is None:
        states = {state for state, _ in referenced}
    else:
        states = declared
        for state, token in referenced:
            if state not in states:
                raise reader.error(f"unknown state '{token}'", token)
    for item, token in acceptance + holes:
        state = item.state if hasattr(item, "state") else item[0]
        if state not in states:
            raise reader.error(f"unknown state '{token}'", token)
    if alphabet is None:
        alphabet = {t.label for t in transitions if t.label is not EPS}
    states = frozenset(states)
    hole_set = DownSet([atom for atom, _ in holes], dim, states)
    configuration, init_token = initial
    if member(hole_set, configuration):
        raise reader.error(f"initial configuration {configuration} lies inside a hole", init_token)
    try:
        v = Vass(
            alphabet=alphabet,
            dim=dim,
            states=states,
            transitions=tuple(transitions),
            initial=configuration,
            acceptance=_acceptance(acceptance_kind, [item for item, _ in acceptance], dim, states, reader),
            holes=hole_set,
            eps_allowed=eps_on,
            name=name,
        )
    except ParseError:
        raise
    except VassError as e:
        raise reader.error(str(e)) from e
    logger.debug(f"parsed {v}")
    return v


def _updown_atom(reader, statement, dim):
    state = parse_name(statement[2])
    up = UPDOWN.match(statement[3])
    if not up:
        raise reader.error("expected up[i,...]=(n,...)", statement[3])
    if dim is None:
        raise reader.error("updown atom before the dim line", statement[3])
    coords = [c.strip() for c in up.group(1).split(",") if c.strip()]
    up_coords = tuple(reader.integer(_Token(c, statement[3].line, statement[3].column)) - 1 for c in coords)
    if any(j < 0 or j >= dim for j in up_coords):
        raise reader.error(f"up coordinates must lie in [1,{dim}]", statement[3])
    up_token = _Token(up.group(2), statement[3].line, statement[3].column)
    up_values = reader.vector(up_token, len(up_coords), what="up part")
    down_token = statement[4]
    if not down_token.startswith("down="):
        raise reader.error("expected down=(x,...)", down_token)
    down = reader.vector(
        _Token(down_token[len("down="):], down_token.line, down_token.column),
        dim - len(up_coords),
        omega=True,
        what="down part",
    )
    try:
        return UpDownAtom(state, up_coords, up_values, down)
    except ModelError as e:
        raise reader.error(str(e), statement[3]) from e


def _acceptance(kind, items, dim, states, reader):
    if kind is None or kind == "upward":
        return Upward(UpSet([UpAtom(state, vector) for state, vector in items], dim, states))
    if kind == "downward":
        return Downward(DownSet([DownAtom(state, vector) for state, vector in items], dim, states))
    if kind == "updown":
        return UpDown(tuple(items), dim)
    if len(items) != 1:
        raise reader.error(f"singleton acceptance needs exactly one target, got {len(items)}")
    state, vector = items[0]
    return Singleton(Configuration(state, vector))


def parse(path):
    """Read and parse a model file."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_model(handle.read(), path=str(path))


def _label(letter):
    return label_text(letter)


def _updown_text(atom):
    roles = atom.roles()
    up = ",".join(str(j + 1) for j, (role, _) in enumerate(roles) if role == "up")
    return f"up[{up}]={format_vector(atom.up)} down={format_vector(atom.down)}"


def print_model(v):
    """The model in the file format; parse_model(print_model(v)) == v for string or tuple states."""
    lines = [f"vass {v.name}", f"dim {v.dim}"]
    lines.append(" ".join(["alphabet"] + [_label(a) for a in v.letters]))
    lines.append(" ".join(["states"] + [state_label(q) for q in sorted(v.states, key=state_key)]))
    if v.eps_allowed:
        lines.append("eps on")
    lines.append(f"init {state_label(v.initial.state)} {format_vector(v.initial.counters)}")
    for t in v.transitions:
        lines.append(
            f"trans {state_label(t.source)} {_label(t.label)} {format_vector(t.effect)} {state_label(t.target)}"
        )
    acceptance = v.acceptance
    if isinstance(acceptance, Upward):
        lines.extend(f"accept upward {state_label(a.state)} {format_vector(a.basis)}" for a in acceptance.atoms)
    elif isinstance(acceptance, Downward):
        lines.extend(f"accept downward {state_label(a.state)} {format_vector(a.bound)}" for a in acceptance.atoms)
    elif isinstance(acceptance, UpDown):
        lines.extend(f"accept updown {state_label(a.state)} {_updown_text(a)}" for a in acceptance.atoms)
    else:
        target = acceptance.target
        lines.append(f"accept singleton {state_label(target.state)} {format_vector(target.counters)}")
    lines.extend(f"hole {state_label(a.state)} {format_vector(a.bound)}" for a in v.holes.atoms)
    return "\n".join(lines) + "\n"


def write_model(v, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(print_model(v))


def parse_monoid_text(text, path=None):
    """
    :return: Hom, whose monoid is checked for associativity and identity laws
    :raises ParseError:
    """
    reader = _Reader(path)
    statements = _tokenize(text)
    if not statements or statements[0][0] != "monoid":
        raise reader.error("a monoid file starts with 'monoid SIZE IDENTITY'", statements[0][0] if statements else None)
    header = statements[0]
    _expect(reader, header, 3)
    size = reader.integer(header[1])
    identity = reader.integer(header[2])
    if size < 1:
        raise reader.error("a monoid has at least one element", header[1])
    rows = statements[1 : size + 1]
    if len(rows) < size:
        raise reader.error(f"expected {size} table rows, got {len(rows)}", header[0])
    table = []
    for row in rows:
        if len(row) != size:
            raise reader.error(f"table row has {len(row)} entries, expected {size}", row[0])
        table.append(tuple(reader.integer(token) for token in row))
    images = {}
    for statement in statements[size + 1 :]:
        if statement[0] != "hom":
            raise reader.error(f"expected 'hom LETTER INDEX', got '{statement[0]}'", statement[0])
        _expect(reader, statement, 3)
        letter = parse_label(statement[1])
        if letter is EPS:
            raise reader.error("h(eps) is always the identity", statement[1])
        if letter in images:
            raise reader.error(f"second image for '{statement[1]}'", statement[1])
        images[letter] = reader.integer(statement[2])
    try:
        return Hom(FiniteMonoid(tuple(table), identity), images)
    except ModelError as e:
        raise reader.error(str(e)) from e


def parse_monoid(path):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_monoid_text(handle.read(), path=str(path))


def print_monoid(hom):
    monoid = hom.monoid
    lines = [f"monoid {monoid.size} {monoid.identity}"]
    lines.extend(" ".join(map(str, row)) for row in monoid.table)
    for letter in sorted(hom.images, key=label_text):
        lines.append(f"hom {_label(letter)} {hom.images[letter]}")
    return "\n".join(lines) + "\n"
