"""Minimal key-value config parsing for the CLI.

The format mirrors the command-line flags, one `key = value` per line:
strings (quoted or bare words), integers, lists in brackets, and inline
tables in braces.  `#` starts a comment.
"""

from __future__ import annotations

from .errors import ConfigError


def _parse_value(tok: str):
    tok = tok.strip()
    if not tok:
        raise ConfigError("empty value")
    if tok.startswith("[") and tok.endswith("]"):
        inner = tok[1:-1].strip()
        if not inner:
            return []
        return [_parse_value(t) for t in _split_top(inner, ",")]
    if tok.startswith("{") and tok.endswith("}"):
        out = {}
        inner = tok[1:-1].strip()
        if inner:
            for part in _split_top(inner, ","):
                if "=" not in part:
                    raise ConfigError(f"bad table entry {part!r}")
                k, v = part.split("=", 1)
                out[k.strip()] = _parse_value(v)
        return out
    if tok.startswith('"') and tok.endswith('"') and len(tok) >= 2:
        return tok[1:-1]
    try:
        return int(tok)
    except ValueError:
        return tok


def _split_top(text: str, sep: str):
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch in "[{":
            depth += 1
        elif ch in "]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return parts


def parse_kv(text: str) -> dict:
    out = {}
    for rawline in text.splitlines():
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected `key = value`, got {rawline!r}")
        key, val = line.split("=", 1)
        out[key.strip()] = _parse_value(val)
    return out
