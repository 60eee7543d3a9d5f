"""A forgiving BibTeX reader for archive-style ``.bib`` files.

Handles ``@string`` macros (month names are predefined), ``#``
concatenation, brace- and quote-delimited values with nested braces, and
both ``{...}`` and ``(...)`` entry delimiters. ``@comment`` and
``@preamble`` are skipped. A malformed entry is dropped with a warning and
parsing resumes at the next ``@``.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field

MONTH_MACROS = {
    "jan": "January", "feb": "February", "mar": "March", "apr": "April",
    "may": "May", "jun": "June", "jul": "July", "aug": "August",
    "sep": "September", "oct": "October", "nov": "November", "dec": "December",
}

_ENTRY_START = re.compile(r"@[ \t]*([A-Za-z][\w:-]*)[ \t\r\n]*([{(])")
_NAME = re.compile(r"[^\s\"#%'(),={}]+")
_NUMBER = re.compile(r"\d+")


@dataclass
class RawEntry:
    entry_type: str
    citation_key: str
    fields: dict[str, str] = field(default_factory=dict)
    line: int = 0


@dataclass(frozen=True)
class ParseWarning:
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


class _Malformed(Exception):
    def __init__(self, pos: int, message: str):
        super().__init__(message)
        self.pos = pos
        self.message = message


class _Parser:
    def __init__(self, text: str, macros: dict[str, str]):
        self.text = text
        self.macros = macros
        self.newlines = [m.start() for m in re.finditer("\n", text)]
        self.pos = 0

    def line_of(self, pos: int) -> int:
        return bisect.bisect_left(self.newlines, pos) + 1

    def skip_ws(self) -> None:
        n = len(self.text)
        while self.pos < n and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of file"
            raise _Malformed(self.pos, f"expected {ch!r}, found {found}")
        self.pos += 1

    def name(self) -> str:
        self.skip_ws()
        m = _NAME.match(self.text, self.pos)
        if not m:
            found = repr(self.peek()) if self.peek() else "end of file"
            raise _Malformed(self.pos, f"expected a name, found {found}")
        self.pos = m.end()
        return m.group()

    def braced(self) -> str:
        # at "{"; returns inner text with nested braces kept
        start = self.pos + 1
        depth = 0
        i = self.pos
        text = self.text
        while i < len(text):
            ch = text[i]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    self.pos = i + 1
                    return text[start:i]
            i += 1
        raise _Malformed(self.pos, "unbalanced braces")

    def quoted(self) -> str:
        start = self.pos + 1
        depth = 0
        i = start
        text = self.text
        while i < len(text):
            ch = text[i]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth < 0:
                    raise _Malformed(i, "unbalanced braces in quoted value")
            elif ch == '"' and depth == 0 and text[i - 1] != "\\":
                self.pos = i + 1
                return text[start:i]
            i += 1
        raise _Malformed(self.pos, "unterminated quoted value")

    def value(self) -> str:
        parts = []
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch == "{":
                parts.append(self.braced())
            elif ch == '"':
                parts.append(self.quoted())
            elif ch.isdigit():
                m = _NUMBER.match(self.text, self.pos)
                parts.append(m.group())
                self.pos = m.end()
            elif ch:
                ref = self.name()
                # undefined macros are kept verbatim
                parts.append(self.macros.get(ref.lower(), ref))
            else:
                raise _Malformed(self.pos, "unexpected end of file in value")
            self.skip_ws()
            if self.peek() != "#":
                return "".join(parts)
            self.pos += 1

    def skip_group(self, opener: str) -> None:
        closer = "}" if opener == "{" else ")"
        depth = 0
        i = self.pos
        text = self.text
        while i < len(text):
            ch = text[i]
            if ch in "{(":
                depth += 1
            elif ch in "})":
                depth -= 1
                if depth == 0:
                    if ch != closer:
                        raise _Malformed(i, f"mismatched {ch!r}")
                    self.pos = i + 1
                    return
            i += 1
        raise _Malformed(self.pos, "unbalanced braces")

    def string_def(self, closer: str) -> None:
        name = self.name().lower()
        self.expect("=")
        self.macros[name] = self.value()
        self.expect(closer)

    def entry(self, entry_type: str, closer: str, start: int, warnings: list) -> RawEntry:
        self.skip_ws()
        m = re.compile(r"[^\s,{}()\"=#]*").match(self.text, self.pos)
        key = m.group()
        self.pos = m.end()
        if not key:
            raise _Malformed(self.pos, "missing citation key")
        entry = RawEntry(entry_type, key, {}, self.line_of(start))
        self.skip_ws()
        if self.peek() == closer:
            self.pos += 1
            return entry
        self.expect(",")
        while True:
            self.skip_ws()
            if self.peek() == closer:
                self.pos += 1
                return entry
            fname = self.name().lower()
            self.expect("=")
            value = self.value()
            if fname in entry.fields:
                warnings.append(ParseWarning(
                    self.line_of(self.pos),
                    f"duplicate field {fname!r} in entry {key!r}; last value kept"))
                del entry.fields[fname]
            entry.fields[fname] = value
            self.skip_ws()
            ch = self.peek()
            if ch == ",":
                self.pos += 1
            elif ch == closer:
                self.pos += 1
                return entry
            else:
                found = repr(ch) if ch else "end of file"
                raise _Malformed(self.pos, f"expected ',' or {closer!r}, found {found}")

    def run(self) -> tuple[list[RawEntry], list[ParseWarning]]:
        entries: list[RawEntry] = []
        warnings: list[ParseWarning] = []
        text = self.text
        search_from = 0
        while True:
            at = text.find("@", search_from)
            if at < 0:
                break
            m = _ENTRY_START.match(text, at)
            if not m:
                search_from = at + 1
                continue
            kind = m.group(1).lower()
            opener = m.group(2)
            closer = "}" if opener == "{" else ")"
            self.pos = m.end()
            try:
                if kind == "comment" or kind == "preamble":
                    self.pos = m.end() - 1
                    self.skip_group(opener)
                elif kind == "string":
                    self.string_def(closer)
                else:
                    entries.append(self.entry(kind, closer, at, warnings))
                search_from = self.pos
            except _Malformed as exc:
                warnings.append(ParseWarning(
                    self.line_of(at),
                    f"skipped @{m.group(1)} entry: {exc.message} (at line {self.line_of(exc.pos)})"))
                search_from = at + 1
        return entries, warnings


def parse_bibtex(source: str | bytes, macro_env: dict[str, str] | None = None
                 ) -> tuple[list[RawEntry], list[ParseWarning]]:
    """Parse BibTeX source into raw entries and warnings.

    ``macro_env`` is updated in place with every ``@string`` definition so
    callers can carry macros across files; month abbreviations are seeded
    when absent. Macro names are case-insensitive; lookups use the lowercase name.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="replace")
    if macro_env is None:
        macro_env = {}
    for k in [k for k in macro_env if k != k.lower()]:
        macro_env.setdefault(k.lower(), macro_env[k])
    for k, v in MONTH_MACROS.items():
        macro_env.setdefault(k, v)
    return _Parser(source, macro_env).run()


def split_keywords(raw: str) -> list[str]:
    """Split a keywords field on ``;`` (or ``,`` when no ``;`` is present)."""
    if not raw:
        return []
    sep = ";" if ";" in raw else ","
    out = []
    for part in raw.split(sep):
        part = " ".join(part.split())
        if part.endswith("."):
            part = part[:-1].rstrip()
        if part:
            out.append(part)
    return out
