"""Fault model: the operator catalog and mutant enumeration.

Two operator families are built in.  Traditional operators rewrite basic
language elements (arithmetic, relational, conditional, bitwise, shift,
assignment shortcuts); null-type operators introduce or invert null-related
faults.  Each operator applies a single fixed replacement per site, so one
site yields one mutant per operator.  The enabled set is configurable, which
keeps the density metric parametric in the fault model.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from mutdense import errors
from mutdense.source_model import (
    BodySpan,
    SourceUnit,
    SpanKind,
    Token,
    TokenKind,
    is_reference_type,
    mark_generic_angles,
    span_region_lines,
)


class Family(str, Enum):
    TRADITIONAL = "traditional"
    NULL_TYPE = "null-type"


@dataclass(frozen=True)
class MutationOperator:
    id: str
    family: Family
    description: str


CATALOG: tuple[MutationOperator, ...] = (
    MutationOperator("AOR-B", Family.TRADITIONAL, "replace a binary arithmetic operator (+ - * / %)"),
    MutationOperator("AOR-S", Family.TRADITIONAL, "swap increment and decrement (++ <-> --)"),
    MutationOperator("AOR-U", Family.TRADITIONAL, "delete a unary minus"),
    MutationOperator("ROR", Family.TRADITIONAL, "replace a relational operator (< > <= >= == !=)"),
    MutationOperator("COR", Family.TRADITIONAL, "swap conditional and/or (&& <-> ||)"),
    MutationOperator("LOR", Family.TRADITIONAL, "replace a binary bitwise operator (& | ^)"),
    MutationOperator("SOR", Family.TRADITIONAL, "replace a shift operator (<< >> >>>)"),
    MutationOperator("ASR-S", Family.TRADITIONAL, "replace a compound assignment operator (+= -= ...)"),
    MutationOperator("NOI", Family.NULL_TYPE, "replace an object instantiation with null"),
    MutationOperator("NIV", Family.NULL_TYPE, "null a reference-typed input parameter at body start"),
    MutationOperator("NRV", Family.NULL_TYPE, "replace a returned reference value with null"),
    MutationOperator("NNC", Family.NULL_TYPE, "negate a null check (== null <-> != null)"),
)

_OPERATORS_BY_ID = {op.id: op for op in CATALOG}
ALL_OPERATOR_IDS = frozenset(_OPERATORS_BY_ID)


def list_operators(family: Family | None = None) -> list[MutationOperator]:
    """The fixed catalog, optionally restricted to one family."""
    if family is None:
        return list(CATALOG)
    return [op for op in CATALOG if op.family is family]


@dataclass(frozen=True)
class OperatorSet:
    """The enabled slice of the catalog: families plus optional id filter."""

    families: frozenset[Family]
    enabled_ids: frozenset[str]

    @classmethod
    def default(
        cls,
        families: Iterable[Family] | None = None,
        enabled_ids: Iterable[str] | None = None,
    ) -> "OperatorSet":
        fams = frozenset(families) if families is not None else frozenset(Family)
        if not fams:
            raise ValueError("at least one operator family is required")
        family_ids = frozenset(op.id for op in CATALOG if op.family in fams)
        if enabled_ids is None:
            ids = family_ids
        else:
            ids = frozenset(enabled_ids)
            unknown = ids - ALL_OPERATOR_IDS
            if unknown:
                raise ValueError(f"unknown operator ids: {sorted(unknown)}")
            ids &= family_ids
        return cls(families=fams, enabled_ids=ids)


@dataclass(frozen=True)
class Mutant:
    """One applicable mutation at one site.

    ``start``/``end`` are half-open offsets of the replaced text;
    ``insert_after`` is set only for parameter-nulling mutants and points
    just past the opening brace where the nulling statement goes.
    """

    operator_id: str
    family: Family
    unit_path: str
    line: int
    column: int
    start: int
    end: int
    original: str
    replacement: str
    insert_after: int | None = None


AOR_B_MAP = {"+": "-", "-": "+", "*": "/", "/": "*", "%": "*"}
AOR_S_MAP = {"++": "--", "--": "++"}
ROR_MAP = {"<": ">=", ">": "<=", "<=": ">", ">=": "<", "==": "!=", "!=": "=="}
COR_MAP = {"&&": "||", "||": "&&"}
LOR_MAP = {"&": "|", "|": "&", "^": "&"}
SOR_MAP = {"<<": ">>", ">>": "<<", ">>>": "<<"}
ASR_S_MAP = {
    "+=": "-=", "-=": "+=", "*=": "/=", "/=": "*=", "%=": "*=",
    "<<=": ">>=", ">>=": "<<=", "&=": "|=", "|=": "&=", "^=": "&=",
}

_BINARY_LEFT_KINDS = frozenset(
    {
        TokenKind.IDENTIFIER,
        TokenKind.NUMBER_LITERAL,
        TokenKind.STRING_LITERAL,
        TokenKind.CHAR_LITERAL,
    }
)


def _is_binary(tokens: Sequence[Token], idx: int) -> bool:
    """'+'/'-'/'&'/'|'/'^' is binary iff an operand just closed on its left."""
    if idx == 0:
        return False
    prev = tokens[idx - 1]
    return prev.kind in _BINARY_LEFT_KINDS or prev.text in (")", "]")


def _string_adjacent(tokens: Sequence[Token], idx: int) -> bool:
    if idx > 0 and tokens[idx - 1].kind is TokenKind.STRING_LITERAL:
        return True
    return idx + 1 < len(tokens) and tokens[idx + 1].kind is TokenKind.STRING_LITERAL


def find_mutation_sites(
    unit: SourceUnit, spans: Sequence[BodySpan], operator_set: OperatorSet
) -> list[Mutant]:
    """Enumerate every enabled-operator match inside span regions.

    Returned sorted by (line, column, operator id); identical inputs always
    produce the identical list.
    """
    tokens = unit.tokens
    angles = mark_generic_angles(tokens)
    region = span_region_lines(unit, spans)
    enabled = operator_set.enabled_ids
    traditional = Family.TRADITIONAL in operator_set.families
    null_type = Family.NULL_TYPE in operator_set.families
    out: list[Mutant] = []

    def emit(op_id: str, tok_line: int, tok_col: int, start: int, end: int,
             replacement: str, insert_after: int | None = None) -> None:
        out.append(
            Mutant(
                operator_id=op_id,
                family=_OPERATORS_BY_ID[op_id].family,
                unit_path=unit.path,
                line=tok_line,
                column=tok_col,
                start=start,
                end=end,
                original=unit.text[start:end],
                replacement=replacement,
                insert_after=insert_after,
            )
        )

    for idx, tok in enumerate(tokens):
        if tok.line not in region:
            continue
        tx = tok.text

        if traditional:
            if tx in ("+", "-"):
                if _is_binary(tokens, idx):
                    if "AOR-B" in enabled and not (tx == "+" and _string_adjacent(tokens, idx)):
                        emit("AOR-B", tok.line, tok.column, tok.start, tok.end, AOR_B_MAP[tx])
                elif tx == "-" and "AOR-U" in enabled:
                    emit("AOR-U", tok.line, tok.column, tok.start, tok.end, "")
            elif tx in ("*", "/", "%"):
                if "AOR-B" in enabled:
                    emit("AOR-B", tok.line, tok.column, tok.start, tok.end, AOR_B_MAP[tx])
            elif tx in AOR_S_MAP:
                if "AOR-S" in enabled:
                    emit("AOR-S", tok.line, tok.column, tok.start, tok.end, AOR_S_MAP[tx])
            elif tx in ("<", ">"):
                if "ROR" in enabled and idx not in angles.indices:
                    emit("ROR", tok.line, tok.column, tok.start, tok.end, ROR_MAP[tx])
            elif tx in ("<=", ">="):
                if "ROR" in enabled:
                    emit("ROR", tok.line, tok.column, tok.start, tok.end, ROR_MAP[tx])
            elif tx in COR_MAP:
                if "COR" in enabled:
                    emit("COR", tok.line, tok.column, tok.start, tok.end, COR_MAP[tx])
            elif tx in LOR_MAP:
                if "LOR" in enabled and _is_binary(tokens, idx):
                    emit("LOR", tok.line, tok.column, tok.start, tok.end, LOR_MAP[tx])
            elif tx in SOR_MAP:
                # shift tokens doubling as generic closers are not shifts
                if "SOR" in enabled and idx not in angles.indices:
                    emit("SOR", tok.line, tok.column, tok.start, tok.end, SOR_MAP[tx])
            elif tx in ASR_S_MAP:
                if "ASR-S" in enabled:
                    emit("ASR-S", tok.line, tok.column, tok.start, tok.end, ASR_S_MAP[tx])

        if tx in ("==", "!="):
            if traditional and "ROR" in enabled:
                emit("ROR", tok.line, tok.column, tok.start, tok.end, ROR_MAP[tx])
            if null_type and "NNC" in enabled and _null_adjacent(tokens, idx):
                emit("NNC", tok.line, tok.column, tok.start, tok.end,
                     "!=" if tx == "==" else "==")

        if null_type and tok.kind is TokenKind.KEYWORD:
            if tx == "new" and "NOI" in enabled:
                site = _object_creation_range(tokens, idx, angles)
                if site is not None:
                    emit("NOI", tok.line, tok.column, tok.start, site, "null")
            elif tx == "return" and "NRV" in enabled:
                site = _nullable_return_range(tokens, idx, spans)
                if site is not None:
                    emit("NRV", tok.line, tok.column, tok.start, site, "return null;")

    if null_type and "NIV" in enabled:
        for span in spans:
            insert_at = tokens[span.body_token_range[0]].end
            for (param_name, type_text), name_idx in zip(
                span.param_types, span.param_name_indices
            ):
                if not is_reference_type(type_text):
                    continue
                name_tok = tokens[name_idx]
                emit("NIV", name_tok.line, name_tok.column, name_tok.start,
                     name_tok.end, f"{param_name} = null", insert_after=insert_at)

    out.sort(key=lambda m: (m.line, m.column, m.operator_id))
    return out


def _null_adjacent(tokens: Sequence[Token], idx: int) -> bool:
    if idx > 0 and tokens[idx - 1].text == "null":
        return True
    return idx + 1 < len(tokens) and tokens[idx + 1].text == "null"


def _object_creation_range(tokens, idx, angles) -> int | None:
    """For 'new Name(...)' return the end offset of the closing ')';
    array creation ('new Name[...]') yields nothing."""
    n = len(tokens)
    j = idx + 1
    if j >= n or tokens[j].kind is not TokenKind.IDENTIFIER:
        return None
    j += 1
    while j + 1 < n and tokens[j].text == "." and tokens[j + 1].kind is TokenKind.IDENTIFIER:
        j += 2
    if j < n and tokens[j].text == "<" and j in angles.open_close:
        j = angles.open_close[j] + 1
    if j >= n or tokens[j].text != "(":
        return None
    depth = 0
    for k in range(j, n):
        tx = tokens[k].text
        if tx == "(":
            depth += 1
        elif tx == ")":
            depth -= 1
            if depth == 0:
                return tokens[k].end
    return None


def _nullable_return_range(tokens, idx, spans) -> int | None:
    """For 'return expr;' in a method returning a reference type, the end
    offset of the terminating ';'; 'return null;' yields nothing."""
    span = _innermost_span(spans, idx)
    if span is None or span.kind is not SpanKind.METHOD:
        return None
    if not is_reference_type(span.return_type_text):
        return None
    body_end = span.body_token_range[1]
    depth = 0
    for k in range(idx + 1, body_end):
        tx = tokens[k].text
        if tx in ("(", "[", "{"):
            depth += 1
        elif tx in (")", "]", "}"):
            depth -= 1
        elif tx == ";" and depth == 0:
            expr = tokens[idx + 1 : k]
            if len(expr) == 1 and expr[0].text == "null":
                return None
            return tokens[k].end
    return None


def _innermost_span(spans: Sequence[BodySpan], token_idx: int) -> BodySpan | None:
    best = None
    for span in spans:
        lo, hi = span.body_token_range
        if lo < token_idx < hi - 1:
            if best is None or lo > best.body_token_range[0]:
                best = span
    return best


def apply_mutant(unit: SourceUnit, mutant: Mutant) -> str:
    """Materialize one mutant as full source text (verification aid)."""
    actual = unit.text[mutant.start : mutant.end]
    if actual != mutant.original:
        raise errors.SiteMismatch(
            f"stale mutant at {unit.path}:{mutant.line}: "
            f"expected {mutant.original!r}, found {actual!r}"
        )
    if mutant.insert_after is not None:
        pos = mutant.insert_after
        return f"{unit.text[:pos]} {mutant.original} = null;{unit.text[pos:]}"
    return unit.text[: mutant.start] + mutant.replacement + unit.text[mutant.end :]
