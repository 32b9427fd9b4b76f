"""Parser and renderer for the schema description language.

The format is line based::

    # comment to end of line
    universe A, B, C          # optional explicit universe
    scheme S(A, B, C)         # a named relation scheme
    fd A, B -> C              # a dependency; lists split on commas/spaces
    fd A ->                   # empty right side is allowed (vacuous)

Identifiers match ``[A-Za-z_][A-Za-z0-9_]*``; ``->`` may be written as a
Unicode arrow.  The names ``__C`` and ``__D`` are reserved for generated
schemas and rejected here.  Attributes used in dependencies must be
declared by some scheme or the universe line; when the file declares
neither, the universe is inferred from the dependencies themselves.

Parsing never raises on bad input: it returns a :class:`ParseResult`
whose diagnostics carry positions and stable codes, with ``document``
set only when there were no errors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .design import DatabaseSchema, RelationScheme
from .fds import FD, Attribute, AttributeSet, FDSet
from .reductions import RESERVED_C, RESERVED_D

__all__ = [
    "Diagnostic",
    "ParseResult",
    "SchemaDocument",
    "parse_schema",
    "parse_fd_text",
    "RESERVED_NAMES",
]

RESERVED_NAMES = frozenset({RESERVED_C.name, RESERVED_D.name})

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_SCHEME_LINE = re.compile(r"scheme\s+([^(\s]+)\s*\((.*)\)\s*\Z")
_ARROW = re.compile(r"->|→")
_LIST_SPLIT = re.compile(r"[\s,]+")


@dataclass(frozen=True)
class Diagnostic:
    """One parser message with a stable code and a source position."""

    severity: str  # "error" or "warning"
    line: int
    column: int
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}[{self.code}] {self.message}"


@dataclass(frozen=True)
class SchemaDocument:
    """A parsed schema file: named schemes, the universal dependency set,
    and the universe they live in.

    Each scheme's local dependencies are the declared ones whose
    attributes all fit inside it.  Source lines are kept for tooling but
    do not participate in equality.
    """

    schemes: tuple
    fds: FDSet
    universe: AttributeSet
    explicit_universe: bool = False
    scheme_lines: tuple = field(default=(), compare=False)
    fd_lines: tuple = field(default=(), compare=False)
    universe_line: Optional[int] = field(default=None, compare=False)

    def scheme_named(self, name: str) -> Optional[RelationScheme]:
        for scheme in self.schemes:
            if scheme.name == name:
                return scheme
        return None

    def universal_scheme(self) -> RelationScheme:
        return RelationScheme(self.universe, self.fds)

    def database_schema(self) -> DatabaseSchema:
        """The declared schemes, or the whole universe as a single scheme
        when the file declares none."""
        if self.schemes:
            return DatabaseSchema(self.schemes)
        return DatabaseSchema((self.universal_scheme(),))

    def render(self) -> str:
        lines = []
        if self.explicit_universe:
            lines.append("universe " + ", ".join(self.universe.names))
        for scheme in self.schemes:
            lines.append(f"scheme {scheme.name}({', '.join(scheme.attrs.names)})")
        for fd in self.fds:
            rhs = ", ".join(fd.rhs.names)
            lines.append(f"fd {', '.join(fd.lhs.names)} -> {rhs}".rstrip())
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ParseResult:
    document: Optional[SchemaDocument]
    diagnostics: tuple

    @property
    def ok(self) -> bool:
        return self.document is not None

    @property
    def errors(self) -> tuple:
        return tuple(d for d in self.diagnostics if d.severity == "error")

    @property
    def warnings(self) -> tuple:
        return tuple(d for d in self.diagnostics if d.severity == "warning")


def _split_names(text: str) -> list:
    text = text.strip()
    return _LIST_SPLIT.split(text) if text else []


def _column_of(raw: str, token: str) -> int:
    at = raw.find(token)
    return at + 1 if at >= 0 else 1


class _Parser:
    def __init__(self):
        self.diagnostics: list = []
        self.scheme_decls: list = []  # (name, [Attribute], line)
        self.fd_decls: list = []  # (FD, line)
        self.universe_decl: Optional[tuple] = None  # ([Attribute], line)
        self.seen_fds: set = set()

    def error(self, line: int, column: int, code: str, message: str) -> None:
        self.diagnostics.append(Diagnostic("error", line, column, code, message))

    def warn(self, line: int, column: int, code: str, message: str) -> None:
        self.diagnostics.append(Diagnostic("warning", line, column, code, message))

    def attr_list(self, text: str, raw: str, lineno: int) -> Optional[list]:
        out = []
        for name in _split_names(text):
            col = _column_of(raw, name)
            if not _IDENT.match(name):
                self.error(lineno, col, "E110", f"invalid identifier: {name!r}")
                return None
            if name in RESERVED_NAMES:
                self.error(lineno, col, "E111", f"reserved attribute name: {name}")
                return None
            out.append(Attribute(name))
        return out

    def parse_line(self, raw: str, lineno: int) -> None:
        line = raw.split("#", 1)[0].strip()
        if not line:
            return
        head = line.split(None, 1)[0]
        if head == "scheme":
            self.parse_scheme(line, raw, lineno)
        elif head == "fd":
            self.parse_fd(line, raw, lineno)
        elif head == "universe":
            self.parse_universe(line, raw, lineno)
        else:
            self.error(
                lineno,
                _column_of(raw, head),
                "E101",
                f"unknown directive {head!r}; expected scheme, fd, or universe",
            )

    def parse_scheme(self, line: str, raw: str, lineno: int) -> None:
        match = _SCHEME_LINE.match(line)
        if not match:
            self.error(lineno, 1, "E100", "expected: scheme Name(attr, ...)")
            return
        name, attr_text = match.group(1), match.group(2)
        if not _IDENT.match(name):
            self.error(lineno, _column_of(raw, name), "E110", f"invalid scheme name: {name!r}")
            return
        attrs = self.attr_list(attr_text, raw, lineno)
        if attrs is None:
            return
        if not attrs:
            self.error(lineno, 1, "E100", "a scheme needs at least one attribute")
            return
        if any(name == existing for existing, _, _ in self.scheme_decls):
            self.error(lineno, _column_of(raw, name), "E120", f"duplicate scheme name: {name}")
            return
        self.scheme_decls.append((name, attrs, lineno))

    def parse_fd(self, line: str, raw: str, lineno: int) -> None:
        body = line[2:].strip()
        arrow = _ARROW.search(body)
        if not arrow:
            self.error(lineno, 1, "E100", "expected: fd attrs -> attrs")
            return
        lhs_text = body[: arrow.start()]
        rhs_text = body[arrow.end() :]
        lhs = self.attr_list(lhs_text, raw, lineno)
        if lhs is None:
            return
        if not lhs:
            self.error(lineno, 1, "E100", "a dependency needs a non-empty left side")
            return
        rhs = self.attr_list(rhs_text, raw, lineno)
        if rhs is None:
            return
        if not rhs:
            self.warn(lineno, 1, "W200", "vacuous dependency: empty right side")
        fd = FD(lhs, rhs)
        if fd in self.seen_fds:
            self.warn(lineno, 1, "W201", f"duplicate dependency dropped: {fd}")
            return
        self.seen_fds.add(fd)
        self.fd_decls.append((fd, lineno))

    def parse_universe(self, line: str, raw: str, lineno: int) -> None:
        if self.universe_decl is not None:
            self.error(lineno, 1, "E121", "duplicate universe declaration")
            return
        attrs = self.attr_list(line[len("universe") :], raw, lineno)
        if attrs is None:
            return
        if not attrs:
            self.error(lineno, 1, "E100", "a universe declaration needs attributes")
            return
        self.universe_decl = (attrs, lineno)


def parse_schema(text: str) -> ParseResult:
    """Parse a schema document, collecting every diagnostic.

    The returned result carries a document only when no error was found;
    warnings never block.
    """
    parser = _Parser()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parser.parse_line(raw, lineno)

    declared = set()
    for _, attrs, _ in parser.scheme_decls:
        declared.update(attrs)
    if parser.universe_decl is not None:
        declared.update(parser.universe_decl[0])
    has_declarations = bool(parser.scheme_decls) or parser.universe_decl is not None
    if has_declarations:
        for fd, lineno in parser.fd_decls:
            for a in fd.attributes:
                if a not in declared:
                    parser.error(
                        lineno,
                        1,
                        "E130",
                        f"attribute {a} is not declared by any scheme or the universe",
                    )
    diagnostics = tuple(sorted(parser.diagnostics, key=lambda d: (d.line, d.column)))
    if any(d.severity == "error" for d in diagnostics):
        return ParseResult(None, diagnostics)

    mentioned = set()
    for fd, _ in parser.fd_decls:
        mentioned.update(fd.attributes)
    universe = AttributeSet(declared | mentioned)
    sigma = FDSet([fd for fd, _ in parser.fd_decls], universe=universe)
    schemes = []
    for name, attrs, _ in parser.scheme_decls:
        attr_set = AttributeSet(attrs)
        local = FDSet(
            [fd for fd in sigma if fd.attributes <= attr_set], universe=attr_set
        )
        schemes.append(RelationScheme(attr_set, local, name=name))
    document = SchemaDocument(
        schemes=tuple(schemes),
        fds=sigma,
        universe=universe,
        explicit_universe=parser.universe_decl is not None,
        scheme_lines=tuple(line for _, _, line in parser.scheme_decls),
        fd_lines=tuple(line for _, line in parser.fd_decls),
        universe_line=parser.universe_decl[1] if parser.universe_decl else None,
    )
    return ParseResult(document, diagnostics)


def parse_fd_text(text: str, universe: Optional[AttributeSet] = None) -> FD:
    """Parse a single ``A, B -> C`` string, as accepted on the command line.

    Raises ``ValueError`` on malformed input; attribute membership is
    checked against ``universe`` when one is given.
    """
    arrow = _ARROW.search(text)
    if not arrow:
        raise ValueError(f"expected 'attrs -> attrs', got {text!r}")
    lhs_names = _split_names(text[: arrow.start()])
    rhs_names = _split_names(text[arrow.end() :])
    if not lhs_names:
        raise ValueError("a dependency needs a non-empty left side")
    for name in lhs_names + rhs_names:
        if not _IDENT.match(name):
            raise ValueError(f"invalid identifier: {name!r}")
        if name in RESERVED_NAMES:
            raise ValueError(f"reserved attribute name: {name}")
    fd = FD(lhs_names, rhs_names)
    if universe is not None:
        stray = fd.attributes - universe
        if stray:
            raise ValueError(f"attributes outside the universe: {stray}")
    return fd
