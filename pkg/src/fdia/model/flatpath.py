"""Typed paths addressing scalar leaves inside a flattened document.

A path is a sequence of segments: object keys (str) and array indices
(int). The printed form joins key segments with ``.`` and renders index
segments as ``[i]`` appended to the preceding segment; dots, brackets
and backslashes inside keys are escaped, and an empty key prints as the
marker ``\\e``, so that decode(encode(p)) == p for every path. The typed
form, not the printed text, is what distinguishes an index segment from
a key that happens to look like a number.
"""

from __future__ import annotations

from dataclasses import dataclass

from fdia.errors import FdiaError


class PathSyntaxError(FdiaError):
    """Raised when printed path text cannot be decoded."""


@dataclass(frozen=True)
class FlatPath:
    segments: tuple[str | int, ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("a path needs at least one segment")
        for seg in self.segments:
            if isinstance(seg, bool) or not isinstance(seg, (str, int)):
                raise TypeError(f"bad path segment: {seg!r}")
            if isinstance(seg, int) and seg < 0:
                raise ValueError(f"negative array index: {seg}")

    def __str__(self) -> str:
        return encode_path(self)

    def child_key(self, key: str) -> "FlatPath":
        return FlatPath(self.segments + (key,))

    def child_index(self, index: int) -> "FlatPath":
        return FlatPath(self.segments + (index,))

    def is_suffix_of(self, other: "FlatPath") -> bool:
        n = len(self.segments)
        return len(other.segments) >= n and other.segments[-n:] == self.segments


def key_path(*keys: str) -> FlatPath:
    """Convenience constructor for a path of plain key segments."""
    return FlatPath(tuple(keys))


_NEEDS_ESCAPE = {".", "[", "]", "\\"}


def _encode_key(key: str) -> str:
    if key == "":
        return "\\e"
    if not any(ch in _NEEDS_ESCAPE for ch in key):
        return key
    return "".join("\\" + ch if ch in _NEEDS_ESCAPE else ch for ch in key)


def encode_path(path: FlatPath) -> str:
    out: list[str] = []
    for i, seg in enumerate(path.segments):
        if isinstance(seg, int):
            out.append(f"[{seg}]")
        else:
            if i > 0:
                out.append(".")
            out.append(_encode_key(seg))
    return "".join(out)


def decode_path(text: str) -> FlatPath:
    """Invert encode_path. Raises PathSyntaxError on malformed text."""
    if not text:
        raise PathSyntaxError("empty path text")
    segments: list[str | int] = []
    n = len(text)

    def scan_key(start: int) -> tuple[str, int]:
        chars: list[str] = []
        empty_marker = False
        j = start
        while j < n and text[j] not in ".[":
            ch = text[j]
            if ch == "]":
                raise PathSyntaxError(f"unescaped ']' in path {text!r}")
            if ch == "\\":
                if j + 1 >= n:
                    raise PathSyntaxError(f"dangling escape in path {text!r}")
                nxt = text[j + 1]
                if nxt in _NEEDS_ESCAPE:
                    chars.append(nxt)
                elif nxt == "e":
                    if empty_marker or chars:
                        raise PathSyntaxError(
                            f"misplaced empty-key marker in path {text!r}"
                        )
                    empty_marker = True
                else:
                    raise PathSyntaxError(f"invalid escape '\\{nxt}' in path {text!r}")
                j += 2
            else:
                chars.append(ch)
                j += 1
        if empty_marker:
            if chars:
                raise PathSyntaxError(f"misplaced empty-key marker in path {text!r}")
            return "", j
        if not chars:
            raise PathSyntaxError(f"empty key segment in path {text!r} (write \\e)")
        return "".join(chars), j

    i = 0
    while i < n:
        ch = text[i]
        if ch == "[":
            j = text.find("]", i + 1)
            if j < 0:
                raise PathSyntaxError(f"unterminated index in path {text!r}")
            digits = text[i + 1 : j]
            if not digits.isdigit():
                raise PathSyntaxError(f"bad array index {digits!r} in path {text!r}")
            segments.append(int(digits))
            i = j + 1
        elif ch == ".":
            if not segments:
                raise PathSyntaxError(f"path cannot start with '.': {text!r}")
            i += 1
            if i >= n:
                raise PathSyntaxError(f"empty key segment in path {text!r} (write \\e)")
            if text[i] == "[":
                raise PathSyntaxError(f"unexpected '.' before index in path {text!r}")
            key, i = scan_key(i)
            segments.append(key)
        else:
            if segments:
                raise PathSyntaxError(
                    f"expected '.' or '[' after index in path {text!r}"
                )
            key, i = scan_key(i)
            segments.append(key)
    return FlatPath(tuple(segments))
