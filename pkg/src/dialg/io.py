"""Line-oriented text formats for algebras and extensions.

Algebra::

    dialg 1
    field Q            # or p=<prime>
    dim <n>
    left <i> <j> <k> <value>     # e_i -| e_j has coefficient value on e_k
    right <i> <j> <k> <value>

Extension: an algebra block followed by ``kernel <k>`` and lines
``cocycle left|right <i> <j> <c> <value>``.  Indices are 1-based, values are
``num`` or ``num/den`` in lowest terms, and writers emit only nonzero
entries sorted by key.  Blank lines and ``#`` comments are ignored on input.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import PRODUCTS, Algebra
from .cohomology import CochainPair
from .errors import FieldError, FormatError
from .extensions import CentralExtension, from_cocycle
from .linalg import Field

FORMAT_VERSION = 1


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _literal(token: str, lineno: int) -> Fraction:
    num, sep, den = token.partition("/")
    try:
        value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad number {token!r}", lineno) from None
    return value


def _coerce(field: Field, value: Fraction, lineno: int):
    if field.p and value.denominator % field.p == 0:
        raise FormatError(f"{value} is not defined modulo {field.p}", lineno)
    return field(value)


def _index(token: str, n: int, lineno: int) -> int:
    try:
        i = int(token)
    except ValueError:
        raise FormatError(f"bad index {token!r}", lineno) from None
    if not 1 <= i <= n:
        raise FormatError(f"index {i} out of range 1..{n}", lineno)
    return i - 1


def _parse_header(lines, field_override):
    expected = ("dialg", "field", "dim")
    values = []
    for key in expected:
        try:
            lineno, words = next(lines)
        except StopIteration:
            raise FormatError(f"missing {key!r} header line") from None
        if words[0] != key or len(words) != 2:
            raise FormatError(f"expected '{key} <value>'", lineno)
        values.append((lineno, words[1]))
    (vline, version), (fline, fspec), (dline, dim) = values
    if version != str(FORMAT_VERSION):
        raise FormatError(f"unsupported format version {version}", vline)
    try:
        file_field = Field.from_spec(fspec)
    except FieldError as exc:
        raise FormatError(str(exc), fline) from None
    try:
        n = int(dim)
    except ValueError:
        raise FormatError(f"bad dimension {dim!r}", dline) from None
    if n < 0:
        raise FormatError("dimension must be non-negative", dline)
    field = file_field
    if field_override is not None and field_override != file_field:
        field = field_override
    return file_field, field, n


def _parse(text: str, field_override: Field | None, allow_extension: bool):
    lines = _lines(text)
    file_field, field, n = _parse_header(lines, field_override)
    reinterpret = field != file_field
    entries = {}
    kernel = None
    cocycle = {}
    for lineno, words in lines:
        tag = words[0]
        if tag in PRODUCTS and kernel is None:
            if len(words) != 5:
                raise FormatError(f"expected '{tag} <i> <j> <k> <value>'", lineno)
            key = (tag, *(_index(w, n, lineno) for w in words[1:4]))
            if key in entries:
                raise FormatError(f"duplicate structure constant {' '.join(words[:4])}", lineno)
            value = _literal(words[4], lineno)
            if reinterpret and value.denominator != 1:
                raise FormatError("only integral constants can be reinterpreted in another field", lineno)
            entries[key] = _coerce(field, value, lineno)
        elif tag == "kernel" and allow_extension:
            if kernel is not None or len(words) != 2:
                raise FormatError("expected a single 'kernel <k>' line", lineno)
            try:
                kernel = int(words[1])
            except ValueError:
                raise FormatError(f"bad kernel dimension {words[1]!r}", lineno) from None
            if kernel < 0:
                raise FormatError("kernel dimension must be non-negative", lineno)
        elif tag == "cocycle" and allow_extension and kernel is not None:
            if len(words) != 6 or words[1] not in PRODUCTS:
                raise FormatError("expected 'cocycle left|right <i> <j> <c> <value>'", lineno)
            key = (words[1], _index(words[2], n, lineno), _index(words[3], n, lineno), _index(words[4], kernel, lineno))
            if key in cocycle:
                raise FormatError(f"duplicate cocycle entry {' '.join(words[:5])}", lineno)
            value = _literal(words[5], lineno)
            if reinterpret and value.denominator != 1:
                raise FormatError("only integral constants can be reinterpreted in another field", lineno)
            cocycle[key] = _coerce(field, value, lineno)
        else:
            raise FormatError(f"unexpected line starting with {tag!r}", lineno)
    entries = {key: v for key, v in entries.items() if v}
    L = Algebra.from_entries(field, n, entries)
    if not allow_extension:
        return L
    if kernel is None:
        raise FormatError("missing 'kernel <k>' line")
    return L, CochainPair.from_entries(field, n, kernel, {key: v for key, v in cocycle.items() if v})


def parse_algebra(text: str, field: Field | None = None) -> Algebra:
    """Parse an algebra file; ``field`` reinterprets integral constants."""
    return _parse(text, field, allow_extension=False)


def parse_cochain_file(text: str, field: Field | None = None) -> tuple[Algebra, CochainPair]:
    return _parse(text, field, allow_extension=True)


def parse_extension(text: str, field: Field | None = None) -> CentralExtension:
    L, f = parse_cochain_file(text, field)
    return from_cocycle(L, f)


def _fmt(field: Field, v) -> str:
    return field.format(v)


def write_algebra(L: Algebra) -> str:
    out = [f"dialg {FORMAT_VERSION}", f"field {L.field}", f"dim {L.dim}"]
    for (op, i, j, k), v in sorted(L.entries().items()):
        out.append(f"{op} {i + 1} {j + 1} {k + 1} {_fmt(L.field, v)}")
    return "\n".join(out) + "\n"


def write_cochain_file(L: Algebra, f: CochainPair) -> str:
    out = [write_algebra(L).rstrip("\n"), f"kernel {f.coeff_dim}"]
    for (op, i, j, c), v in sorted(f.entries().items()):
        out.append(f"cocycle {op} {i + 1} {j + 1} {c + 1} {_fmt(L.field, v)}")
    return "\n".join(out) + "\n"


def write_extension(E: CentralExtension) -> str:
    """Serialize by base algebra and cocycle (with respect to E's section)."""
    return write_cochain_file(E.base, E.cocycle)
