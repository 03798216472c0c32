"""Line-oriented text format for structure-constant documents.

A document looks like::

    # whole-line comments start with '#'
    field 4
    space H 4 1 g x gx
    tensor mul : H H -> H
    0 | 0 0 | 1
    1 | 0 1 | 1
    end
    role mul mul

``field n`` fixes the coefficient field Q(zeta_n).  ``space`` gives a name,
a dimension and optionally the basis labels.  A tensor block lists its
nonzero entries as ``out indices | in indices | scalar`` with 0-based basis
positions; omitted entries are zero.  The unit object is written ``1`` in a
type and has no index columns.  ``role`` binds a structural role (``mul``,
``comul``, ``r``, ...) to a tensor name.  ``note`` lines are kept verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalar import FieldCtx, ScalarParseError, format_scalar, parse_scalar
from .tensor import UNIT, MultilinearMap, Space, TypeMismatch


class ParseError(ValueError):
    def __init__(self, msg, line=None, source=None):
        where = ""
        if source or line:
            where = f"{source or '<input>'}:{line}: " if line else f"{source}: "
        super().__init__(where + msg)
        self.line = line
        self.source = source


# (number of domain legs, number of codomain legs); 0 means the unit object
ROLE_ARITY = {
    "mul": (2, 1),
    "unit": (0, 1),
    "comul": (1, 2),
    "counit": (1, 0),
    "antipode": (1, 1),
    "r": (2, 0),
    "r_inv": (2, 0),
    "a_mul": (2, 1),
    "a_unit": (0, 1),
    "a_act": (2, 1),
    "a_coaction": (1, 2),
    "K": (1, 1),
    "bullet": (2, 1),
    "coad": (1, 2),
    "hit": (2, 1),
    "braided_antipode": (1, 1),
    "smash_mul": (2, 1),
    "smash_unit": (0, 1),
    "smash_act": (2, 1),
    "smash_K": (1, 1),
    "b_mul": (2, 1),
    "b_unit": (0, 1),
    "sigma": (2, 2),
    "twisted_mul": (2, 1),
    "twisted_unit": (0, 1),
}


def _arity(legs):
    return 0 if legs == (UNIT,) else len(legs)


@dataclass
class SpecDocument:
    ctx: FieldCtx
    spaces: dict = field(default_factory=dict)
    tensors: dict = field(default_factory=dict)
    roles: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    source: str | None = None
    lines: dict = field(default_factory=dict, compare=False)  # tensor/role name -> line number

    def add_space(self, sp: Space):
        old = self.spaces.get(sp.name)
        if old is not None and old.basis_labels != sp.basis_labels:
            raise ValueError(f"space {sp.name} declared twice with different bases")
        self.spaces[sp.name] = sp
        return sp

    def add_tensor(self, name, m: MultilinearMap, role=None):
        for s in m.domain + m.codomain:
            if s != UNIT:
                self.add_space(s)
        self.tensors[name] = m
        if role:
            self.roles[role] = name
        return m

    def has(self, *roles):
        return all(r in self.roles for r in roles)

    def role(self, name) -> MultilinearMap:
        if name not in self.roles:
            raise ParseError(f"missing role {name!r}", source=self.source)
        return self.tensors[self.roles[name]]

    def validate(self):
        for role, tname in self.roles.items():
            line = self.lines.get(("role", role))
            if tname not in self.tensors:
                raise ParseError(f"role {role} refers to unknown tensor {tname!r}", line, self.source)
            if role in ROLE_ARITY:
                m = self.tensors[tname]
                want = ROLE_ARITY[role]
                have = (_arity(m.domain), _arity(m.codomain))
                if want != have:
                    raise ParseError(
                        f"role {role} needs {want[0]} input and {want[1]} output legs, tensor {tname} has {have}",
                        line,
                        self.source,
                    )
        return self

    def __eq__(self, other):
        if not isinstance(other, SpecDocument):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and list(self.spaces.items()) == list(other.spaces.items())
            and [s.basis_labels for s in self.spaces.values()] == [s.basis_labels for s in other.spaces.values()]
            and list(self.tensors) == list(other.tensors)
            and all(
                m.domain == other.tensors[k].domain
                and m.codomain == other.tensors[k].codomain
                and m == other.tensors[k]
                for k, m in self.tensors.items()
            )
            and self.roles == other.roles
            and self.notes == other.notes
        )


def _legs(tokens, doc, lineno):
    if tokens == ["1"]:
        return (UNIT,)
    out = []
    for t in tokens:
        if t not in doc.spaces:
            raise ParseError(f"undeclared space {t!r}", lineno, doc.source)
        out.append(doc.spaces[t])
    if not out:
        raise ParseError("empty leg list (write 1 for the unit object)", lineno, doc.source)
    return tuple(out)


def _indices(text, legs, lineno, source):
    toks = text.split()
    real = [s for s in legs if s != UNIT]
    if len(toks) != len(real):
        raise ParseError(f"expected {len(real)} indices, got {len(toks)}", lineno, source)
    idx = []
    for t, s in zip(toks, real):
        try:
            i = int(t)
        except ValueError:
            raise ParseError(f"bad index {t!r}", lineno, source) from None
        if not 0 <= i < s.dim:
            raise ParseError(f"index {i} out of range for space {s.name}", lineno, source)
        idx.append(i)
    return tuple(idx) if real else (0,)


def parse_document(text: str, source=None) -> SpecDocument:
    doc = None
    block = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if block is not None:
            name, dom, cod, entries, start = block
            if line == "end":
                m = MultilinearMap.zero(dom, cod, doc.ctx)
                for key, v in entries.items():
                    m.entries[key] = v
                doc.tensors[name] = m
                doc.lines[("tensor", name)] = start
                block = None
                continue
            parts = line.split("|")
            if len(parts) != 3:
                raise ParseError("entry must read 'out | in | scalar'", lineno, source)
            out = _indices(parts[0], cod, lineno, source)
            inn = _indices(parts[1], dom, lineno, source)
            try:
                v = parse_scalar(parts[2], doc.ctx)
            except ScalarParseError as exc:
                raise ParseError(str(exc), lineno, source) from None
            if out + inn in entries:
                raise ParseError(f"duplicate entry {out} | {inn}", lineno, source)
            entries[out + inn] = v
            continue
        head, *rest = line.split()
        if head == "field":
            if doc is not None:
                raise ParseError("field declared twice", lineno, source)
            try:
                doc = SpecDocument(FieldCtx(int(rest[0])), source=source)
            except (IndexError, ValueError):
                raise ParseError("field needs a positive integer", lineno, source) from None
            continue
        if doc is None:
            raise ParseError("document must start with 'field n'", lineno, source)
        if head == "space":
            try:
                name, dim = rest[0], int(rest[1])
                labels = rest[2:] or None
                doc.add_space(Space(name, dim, labels))
            except (IndexError, ValueError) as exc:
                raise ParseError(f"bad space declaration: {exc}", lineno, source) from None
        elif head == "tensor":
            body = line[len("tensor"):].strip()
            if ":" not in body or "->" not in body:
                raise ParseError("tensor header must read 'tensor name : dom -> cod'", lineno, source)
            name, typ = (s.strip() for s in body.split(":", 1))
            if name in doc.tensors:
                raise ParseError(f"tensor {name} defined twice", lineno, source)
            d, c = (s.split() for s in typ.split("->", 1))
            block = (name, _legs(d, doc, lineno), _legs(c, doc, lineno), {}, lineno)
        elif head == "role":
            if len(rest) != 2:
                raise ParseError("role line must read 'role <role> <tensor>'", lineno, source)
            doc.roles[rest[0]] = rest[1]
            doc.lines[("role", rest[0])] = lineno
        elif head == "note":
            doc.notes.append(line[len("note"):].strip())
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, source)
    if block is not None:
        raise ParseError(f"tensor {block[0]} is missing 'end'", block[4], source)
    if doc is None:
        raise ParseError("empty document", None, source)
    return doc.validate()


def load_document(path) -> SpecDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), source=str(path))


def _legs_text(legs):
    return "1" if legs == (UNIT,) else " ".join(s.name for s in legs)


def serialize_document(doc: SpecDocument) -> str:
    lines = [f"field {doc.ctx.n}"]
    lines += [f"note {n}" for n in doc.notes]
    for sp in doc.spaces.values():
        lines.append(f"space {sp.name} {sp.dim} " + " ".join(sp.basis_labels))
    for name, m in doc.tensors.items():
        lines.append(f"tensor {name} : {_legs_text(m.domain)} -> {_legs_text(m.codomain)}")
        for out, inn, v in m.nonzero():
            o = " ".join(map(str, out)) if m.codomain != (UNIT,) else ""
            i = " ".join(map(str, inn)) if m.domain != (UNIT,) else ""
            lines.append(f"{o} | {i} | {format_scalar(v)}".strip())
        lines.append("end")
    for role, tname in doc.roles.items():
        lines.append(f"role {role} {tname}")
    return "\n".join(lines) + "\n"


def save_document(doc: SpecDocument, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_document(doc))


def check_spaces(doc: SpecDocument, role, expected):
    """Raise TypeMismatch naming the document location if a role's legs differ from ``expected``."""
    m = doc.role(role)
    dom, cod = expected
    if m.domain != tuple(dom) or m.codomain != tuple(cod):
        line = doc.lines.get(("tensor", doc.roles[role]))
        where = f"{doc.source or '<input>'}:{line}: " if line else ""
        raise TypeMismatch(f"{where}role {role} has type {m!r}")
    return m
