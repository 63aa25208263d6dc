# tmkit/parser/parser.py
"""
Parser for the ``.tm`` modeling language.

Uses Lark to parse source text into declaration records, then assembles them
into a :class:`ModelDocument` whose static model has passed ``build_model``.
Every problem is reported as a :class:`ParseError` carrying a source span.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from lark import Lark, Token, Transformer_NonRecursive, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from ..core.diagnostics import ParseCode, ParseError, SourceSpan
from ..core.exceptions import ParseFailure, StructureErrors
from ..core.model import ModelAssembler
from ..core.types import (
    Action,
    ActionKind,
    BehavioralModel,
    Event,
    Flow,
    LinkKind,
    ModelDocument,
    PartLink,
    Thimac,
    Trigger,
)
from ..utils.config import MAX_NESTING_DEPTH
from .grammar import TM_GRAMMAR

_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "t": "\t", "r": "\r"}


@lru_cache(maxsize=None)
def _lark() -> Lark:
    return Lark(
        TM_GRAMMAR,
        parser="lalr",
        propagate_positions=True,
        maybe_placeholders=True,
    )


def unescape(literal: str) -> str:
    """Strip the quotes of a STRING token and resolve its escapes."""
    body = literal[1:-1]
    out: List[str] = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            out.append(_UNESCAPES.get(nxt, nxt))
            i += 2
            continue
        out.append(ch)
        i += 1
    return "".join(out)


def _span(meta) -> SourceSpan:
    if meta is None or getattr(meta, "empty", True):
        return SourceSpan()
    return SourceSpan(meta.line, meta.column, max(meta.end_pos - meta.start_pos, 0))


def _token_span(token: Token) -> SourceSpan:
    return SourceSpan(token.line or 1, token.column or 1, len(token.value))


def _end_span(text: str) -> SourceSpan:
    lines = text.split("\n")
    return SourceSpan(len(lines), len(lines[-1]) + 1, 0)


@dataclass
class _ActRef:
    kind: ActionKind
    path: str
    label: Optional[str]
    span: SourceSpan

    @property
    def text(self) -> str:
        return Action.make_id(self.kind, self.path, self.label)


@dataclass
class _ActionDecl:
    kind: ActionKind
    label: Optional[str]
    span: SourceSpan


@dataclass
class _MachineDecl:
    actions: List[_ActionDecl]


@dataclass
class _SharedDecl:
    path: str
    span: SourceSpan


@dataclass
class _EdgeDecl:
    trigger: bool
    src: _ActRef
    dst: _ActRef
    span: SourceSpan


@dataclass
class _ThimacDecl:
    name: str
    oo: bool
    members: list
    span: SourceSpan


@dataclass
class _EventDecl:
    id: str
    name: Optional[str]
    refs: List[_ActRef]
    time_label: str
    span: SourceSpan


@dataclass
class _BehaviorDecl:
    id: str
    steps: List[List[Token]]
    span: SourceSpan


@v_args(meta=True)
class DeclarationTransformer(Transformer_NonRecursive):
    """Turns the Lark tree into flat declaration records."""

    def start(self, meta, items):
        return list(items)

    def kind(self, meta, items):
        return ActionKind(str(items[0]))

    def path(self, meta, items):
        return ".".join(str(t) for t in items)

    def actref(self, meta, items):
        kind, path, label = items
        return _ActRef(kind, path, str(label) if label is not None else None, _span(meta))

    def action_decl(self, meta, items):
        kind, label = items
        return _ActionDecl(kind, str(label) if label is not None else None, _span(meta))

    def machine(self, meta, items):
        return _MachineDecl(list(items))

    def shared(self, meta, items):
        return _SharedDecl(items[0], _span(meta))

    def flow(self, meta, items):
        return _EdgeDecl(False, items[0], items[1], _span(meta))

    def trigger(self, meta, items):
        return _EdgeDecl(True, items[0], items[1], _span(meta))

    def thimac(self, meta, items):
        name, oo, *members = items
        return _ThimacDecl(str(name), oo is not None, members, _span(meta))

    def event(self, meta, items):
        event_id, name, *refs, at = items
        return _EventDecl(
            str(event_id),
            unescape(str(name)) if name is not None else None,
            refs,
            unescape(str(at)) if at is not None else "",
            _span(meta),
        )

    def step(self, meta, items):
        return list(items)

    def behavior(self, meta, items):
        behavior_id, *steps = items
        return _BehaviorDecl(str(behavior_id), steps, _span(meta))


@dataclass
class _Collected:
    thimacs: List[Thimac] = field(default_factory=list)
    part_links: List[PartLink] = field(default_factory=list)
    actions: List[Action] = field(default_factory=list)
    edges: List[_EdgeDecl] = field(default_factory=list)
    events: List[_EventDecl] = field(default_factory=list)
    behaviors: List[_BehaviorDecl] = field(default_factory=list)
    spans: Dict[Tuple[str, str], SourceSpan] = field(default_factory=dict)


class TmParser:
    """Main parser class for the ``.tm`` language."""

    def __init__(self, max_depth: int = MAX_NESTING_DEPTH, logger: Optional[logging.Logger] = None):
        self.max_depth = max_depth
        self.logger = logger or logging.getLogger(__name__)

    def parse(self, text: str) -> ModelDocument:
        """Parse source text into a validated document.

        Raises:
            ParseFailure: carrying every error found, sorted by position.
        """
        try:
            tree = _lark().parse(text)
        except UnexpectedCharacters as e:
            raise ParseFailure([self._lex_error(text, e)]) from None
        except (UnexpectedToken, UnexpectedEOF) as e:
            raise ParseFailure([self._syntax_error(text, e)]) from None
        except UnexpectedInput as e:
            raise ParseFailure([ParseError(_end_span(text), ParseCode.SYNTAX_ERROR, str(e).strip() or "Invalid input")]) from None

        decls = DeclarationTransformer().transform(tree)
        errors: List[ParseError] = []
        collected = self._collect(decls, errors)
        document = self._assemble(collected, errors)
        if errors:
            raise ParseFailure(errors)
        self.logger.debug(
            f"Parsed {len(document.static.thimacs)} thimacs, {len(document.events)} events, "
            f"{len(document.behaviors)} behaviors"
        )
        return document

    def parse_bytes(self, data: bytes) -> ModelDocument:
        """Decode UTF-8 input (BOM tolerated) and parse it."""
        try:
            text = data.decode("utf-8-sig")
        except UnicodeDecodeError as e:
            prefix = data[: e.start].decode("utf-8-sig", errors="replace")
            span = SourceSpan(prefix.count("\n") + 1, len(prefix.rsplit("\n", 1)[-1]) + 1, 1)
            raise ParseFailure([ParseError(span, ParseCode.LEX_ERROR, f"Invalid UTF-8 byte 0x{data[e.start]:02x}")]) from None
        return self.parse(text)

    def parse_file(self, path: Union[str, Path]) -> ModelDocument:
        return self.parse_bytes(Path(path).read_bytes())

    def _lex_error(self, text: str, e: UnexpectedCharacters) -> ParseError:
        char = text[e.pos_in_stream] if 0 <= e.pos_in_stream < len(text) else ""
        return ParseError(
            SourceSpan(e.line, e.column, 1 if char else 0),
            ParseCode.LEX_ERROR,
            f"Unexpected character {char!r}",
        )

    def _syntax_error(self, text: str, e: UnexpectedInput) -> ParseError:
        token = getattr(e, "token", None)
        if isinstance(e, UnexpectedEOF) or token is None or token.type in ("$END", "<EOF>"):
            return ParseError(_end_span(text), ParseCode.SYNTAX_ERROR, "Unexpected end of input")
        expected = sorted(getattr(e, "expected", None) or getattr(e, "accepts", None) or [])
        hint = f", expected one of {', '.join(expected)}" if expected else ""
        return ParseError(_token_span(token), ParseCode.SYNTAX_ERROR, f"Unexpected {token.value!r}{hint}")

    def _collect(self, decls: list, errors: List[ParseError]) -> _Collected:
        """Walk declarations with an explicit stack, assigning dot-path ids."""
        out = _Collected()
        stack: List[Tuple[object, Optional[str], int]] = [(d, None, 0) for d in reversed(decls)]
        while stack:
            decl, owner, depth = stack.pop()
            if isinstance(decl, _ThimacDecl):
                if depth >= self.max_depth:
                    errors.append(
                        ParseError(decl.span, ParseCode.NESTING_TOO_DEEP, f"Thimac nesting exceeds {self.max_depth} levels")
                    )
                    continue
                tid = f"{owner}.{decl.name}" if owner else decl.name
                out.thimacs.append(Thimac(tid, decl.name, owner, decl.oo))
                out.spans[("thimac", tid)] = decl.span
                stack.extend((m, tid, depth + 1) for m in reversed(decl.members))
            elif isinstance(decl, _MachineDecl):
                for a in decl.actions:
                    action = Action(Action.make_id(a.kind, owner, a.label), a.kind, owner, a.label)
                    out.actions.append(action)
                    out.spans[("action", action.id)] = a.span
            elif isinstance(decl, _SharedDecl):
                link = PartLink(owner, decl.path, LinkKind.SHARED)
                out.part_links.append(link)
                out.spans[("part_link", link.key)] = decl.span
            elif isinstance(decl, _EdgeDecl):
                out.edges.append(decl)
            elif isinstance(decl, _EventDecl):
                out.events.append(decl)
            elif isinstance(decl, _BehaviorDecl):
                out.behaviors.append(decl)
        return out

    def _resolver(self, actions: List[Action]):
        by_id = {a.id for a in actions}
        by_machine: Dict[Tuple[str, ActionKind], List[Action]] = {}
        for a in actions:
            by_machine.setdefault((a.owner, a.kind), []).append(a)

        def resolve(ref: _ActRef, errors: List[ParseError]) -> Optional[str]:
            if ref.text in by_id:
                return ref.text
            candidates = by_machine.get((ref.path, ref.kind), []) if ref.label is None else []
            if len(candidates) == 1:
                return candidates[0].id
            if len(candidates) > 1:
                labels = ", ".join(sorted(str(a.thing_label) for a in candidates))
                errors.append(
                    ParseError(
                        ref.span,
                        ParseCode.AMBIGUOUS_REFERENCE,
                        f"'{ref.text}' matches several actions; add one of the labels {labels}",
                    )
                )
                return None
            errors.append(ParseError(ref.span, ParseCode.UNKNOWN_ACTION, f"No action '{ref.text}' is declared"))
            return None

        return resolve

    def _assemble(self, c: _Collected, errors: List[ParseError]) -> ModelDocument:
        resolve = self._resolver(c.actions)

        flows: List[Flow] = []
        triggers: List[Trigger] = []
        for edge in c.edges:
            src, dst = resolve(edge.src, errors), resolve(edge.dst, errors)
            if src is None or dst is None:
                continue
            if edge.trigger:
                value = Trigger(src, dst)
                triggers.append(value)
                c.spans[("trigger", value.key)] = edge.span
            else:
                value = Flow(src, dst)
                flows.append(value)
                c.spans[("flow", value.key)] = edge.span

        static = None
        try:
            static = ModelAssembler(c.thimacs, c.part_links, c.actions, flows, triggers, logger=self.logger).assemble()
        except StructureErrors as e:
            for s in e.errors:
                span = c.spans.get((s.kind, s.subject), SourceSpan())
                errors.append(ParseError(span, ParseCode(s.code.value), s.message))

        events: List[Event] = []
        seen_events: Dict[str, _EventDecl] = {}
        for decl in c.events:
            if decl.id in seen_events:
                errors.append(
                    ParseError(decl.span, ParseCode.DUPLICATE_DECLARATION, f"Event '{decl.id}' is declared twice")
                )
                continue
            seen_events[decl.id] = decl
            resolved = [resolve(ref, errors) for ref in decl.refs]
            if any(r is None for r in resolved):
                continue
            events.append(Event(decl.id, frozenset(resolved), decl.name or decl.id, decl.time_label))

        behaviors: List[BehavioralModel] = []
        seen_behaviors = set()
        for decl in c.behaviors:
            if decl.id in seen_behaviors:
                errors.append(
                    ParseError(decl.span, ParseCode.DUPLICATE_DECLARATION, f"Behavior '{decl.id}' is declared twice")
                )
                continue
            seen_behaviors.add(decl.id)
            behaviors.append(self._behavior(decl, seen_events, errors))

        if static is None:
            return ModelDocument()
        return ModelDocument(static, tuple(events), tuple(behaviors))

    def _behavior(self, decl: _BehaviorDecl, known: Dict[str, _EventDecl], errors: List[ParseError]) -> BehavioralModel:
        order: Dict[str, None] = {}
        edges: Dict[Tuple[str, str], None] = {}
        for step in decl.steps:
            for token in step:
                if str(token) not in known:
                    errors.append(
                        ParseError(_token_span(token), ParseCode.UNKNOWN_EVENT, f"Behavior '{decl.id}' uses undeclared event '{token}'")
                    )
                order.setdefault(str(token), None)
            for a, b in zip(step, step[1:]):
                edges.setdefault((str(a), str(b)), None)
        return BehavioralModel(decl.id, tuple(order), tuple(edges))


def parse(text: str) -> ModelDocument:
    """Parse ``.tm`` source text.

    Raises:
        ParseFailure: with a non-empty list of positioned errors.
    """
    return TmParser().parse(text)


def parse_bytes(data: bytes) -> ModelDocument:
    return TmParser().parse_bytes(data)


def parse_file(path: Union[str, Path]) -> ModelDocument:
    return TmParser().parse_file(path)
