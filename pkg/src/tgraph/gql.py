"""Minimal GraphQL engine: lexer, parser, type system, executor, introspection.

No GraphQL library is available in this environment, so the service carries
its own engine. Supported: query/mutation operations, variables with
defaults, aliases, fragments (named and inline), list/enum/scalar arguments,
null propagation through non-null types, ``__typename`` / ``__schema`` /
``__type`` introspection, and an SDL printer. Not supported (not needed by
the shipped schema): subscriptions, interfaces/unions, input objects,
directives, block strings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Callable


class GqlError(Exception):
    """Error surfaced in the response "errors" array."""


# ---------------------------------------------------------------------------
# lexer


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[\s,]+)
  | (?P<comment>\#[^\n\r]*)
  | (?P<spread>\.\.\.)
  | (?P<name>[_A-Za-z][_0-9A-Za-z]*)
  | (?P<float>-?(?:0|[1-9]\d*)(?:\.\d+(?:[eE][+-]?\d+)?|[eE][+-]?\d+))
  | (?P<int>-?(?:0|[1-9]\d*))
  | (?P<string>"(?:\\.|[^"\\\n\r])*")
  | (?P<punct>[!$():=@\[\]{}|])
    """,
    re.VERBOSE,
)

_ESCAPES = {'"': '"', "\\": "\\", "/": "/", "b": "\b", "f": "\f", "n": "\n", "r": "\r", "t": "\t"}


def _unquote(raw: str) -> str:
    body = raw[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            nxt = body[i + 1]
            if nxt == "u":
                out.append(chr(int(body[i + 2 : i + 6], 16)))
                i += 6
                continue
            out.append(_ESCAPES.get(nxt, nxt))
            i += 2
            continue
        out.append(ch)
        i += 1
    return "".join(out)


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise GqlError(f"Syntax error: unexpected character {text[pos]!r} at offset {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind in ("ws", "comment"):
            continue
        tokens.append((kind, m.group()))
    tokens.append(("eof", ""))
    return tokens


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str]:
        return self.tokens[self.pos]

    def next(self) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> str:
        k, v = self.next()
        if k != kind or (value is not None and v != value):
            want = value or kind
            raise GqlError(f"Syntax error: expected {want!r}, got {v!r}")
        return v

    def expect_punct(self, value: str) -> None:
        k, v = self.next()
        if k != "punct" or v != value:
            raise GqlError(f"Syntax error: expected {value!r}, got {v!r}")

    def at_punct(self, value: str) -> bool:
        k, v = self.peek()
        return k == "punct" and v == value

    # -- document --

    def parse_document(self) -> dict:
        operations = []
        fragments: dict[str, dict] = {}
        while self.peek()[0] != "eof":
            k, v = self.peek()
            if k == "punct" and v == "{":
                operations.append(
                    {"type": "query", "name": None, "variables": [],
                     "selection_set": self.parse_selection_set()}
                )
            elif k == "name" and v in ("query", "mutation"):
                operations.append(self.parse_operation())
            elif k == "name" and v == "fragment":
                frag = self.parse_fragment()
                fragments[frag["name"]] = frag
            else:
                raise GqlError(f"Syntax error: unexpected {v!r} at document level")
        if not operations:
            raise GqlError("Document contains no operations")
        return {"operations": operations, "fragments": fragments}

    def parse_operation(self) -> dict:
        op_type = self.expect("name")
        name = None
        if self.peek()[0] == "name":
            name = self.next()[1]
        variables = []
        if self.at_punct("("):
            self.next()
            while not self.at_punct(")"):
                self.expect_punct("$")
                var_name = self.expect("name")
                self.expect_punct(":")
                var_type = self.parse_type()
                default = _MISSING
                if self.at_punct("="):
                    self.next()
                    default = self.parse_value(const=True)
                variables.append({"name": var_name, "type": var_type, "default": default})
            self.next()
        return {
            "type": op_type,
            "name": name,
            "variables": variables,
            "selection_set": self.parse_selection_set(),
        }

    def parse_fragment(self) -> dict:
        self.expect("name", "fragment")
        name = self.expect("name")
        self.expect("name", "on")
        type_name = self.expect("name")
        return {
            "name": name,
            "type_condition": type_name,
            "selection_set": self.parse_selection_set(),
        }

    def parse_selection_set(self) -> list[dict]:
        self.expect_punct("{")
        selections = []
        while not self.at_punct("}"):
            selections.append(self.parse_selection())
        self.next()
        return selections

    def parse_selection(self) -> dict:
        k, v = self.peek()
        if k == "spread":
            self.next()
            nk, nv = self.peek()
            if nk == "name" and nv == "on":
                self.next()
                type_name = self.expect("name")
                return {
                    "kind": "inline_fragment",
                    "type_condition": type_name,
                    "selection_set": self.parse_selection_set(),
                }
            if nk == "punct" and nv == "{":
                return {
                    "kind": "inline_fragment",
                    "type_condition": None,
                    "selection_set": self.parse_selection_set(),
                }
            return {"kind": "fragment_spread", "name": self.expect("name")}
        if k != "name":
            raise GqlError(f"Syntax error: expected field name, got {v!r}")
        first = self.next()[1]
        alias = None
        name = first
        if self.at_punct(":"):
            self.next()
            alias = first
            name = self.expect("name")
        arguments = {}
        if self.at_punct("("):
            self.next()
            while not self.at_punct(")"):
                arg_name = self.expect("name")
                self.expect_punct(":")
                arguments[arg_name] = self.parse_value()
            self.next()
        selection_set = None
        if self.at_punct("{"):
            selection_set = self.parse_selection_set()
        return {
            "kind": "field",
            "alias": alias,
            "name": name,
            "arguments": arguments,
            "selection_set": selection_set,
        }

    def parse_type(self) -> tuple:
        if self.at_punct("["):
            self.next()
            inner = self.parse_type()
            self.expect_punct("]")
            node: tuple = ("list", inner)
        else:
            node = ("named", self.expect("name"))
        if self.at_punct("!"):
            self.next()
            node = ("nonnull", node)
        return node

    def parse_value(self, const: bool = False) -> tuple:
        k, v = self.next()
        if k == "punct" and v == "$":
            if const:
                raise GqlError("Variables are not allowed in constant values")
            return ("var", self.expect("name"))
        if k == "int":
            return ("int", int(v))
        if k == "float":
            return ("float", float(v))
        if k == "string":
            return ("str", _unquote(v))
        if k == "name":
            if v == "true":
                return ("bool", True)
            if v == "false":
                return ("bool", False)
            if v == "null":
                return ("null", None)
            return ("enum", v)
        if k == "punct" and v == "[":
            items = []
            while not self.at_punct("]"):
                items.append(self.parse_value(const))
            self.next()
            return ("list", items)
        if k == "punct" and v == "{":
            obj = {}
            while not self.at_punct("}"):
                key = self.expect("name")
                self.expect_punct(":")
                obj[key] = self.parse_value(const)
            self.next()
            return ("obj", obj)
        raise GqlError(f"Syntax error: unexpected value token {v!r}")


def parse(text: str) -> dict:
    return _Parser(text).parse_document()


# ---------------------------------------------------------------------------
# type system


_MISSING = object()


class GqlType:
    pass


@dataclass(frozen=True)
class Scalar(GqlType):
    name: str
    serialize: Callable[[Any], Any]
    parse: Callable[[Any], Any]
    description: str | None = None


@dataclass(frozen=True)
class Enum(GqlType):
    name: str
    values: tuple[str, ...]
    description: str | None = None

    def serialize(self, value: Any) -> str:
        name = getattr(value, "name", None) or str(value)
        if name not in self.values:
            raise GqlError(f"Invalid value {value!r} for enum {self.name}")
        return name

    def parse(self, value: Any) -> str:
        if value not in self.values:
            raise GqlError(f"Value {value!r} is not a member of enum {self.name}")
        return value


@dataclass(frozen=True)
class ListOf(GqlType):
    of_type: GqlType


@dataclass(frozen=True)
class NonNull(GqlType):
    of_type: GqlType


@dataclass
class Argument:
    type: GqlType
    default: Any = _MISSING
    description: str | None = None


@dataclass
class Field:
    type: GqlType
    resolver: Callable[..., Any] | None = None
    args: dict[str, Argument] = field(default_factory=dict)
    description: str | None = None


class Object(GqlType):
    def __init__(self, name: str, fields: Callable[[], dict[str, Field]] | dict[str, Field],
                 description: str | None = None):
        self.name = name
        self._fields = fields
        self.description = description

    @property
    def fields(self) -> dict[str, Field]:
        if callable(self._fields):
            self._fields = self._fields()
        return self._fields


def _parse_int(v):
    if isinstance(v, bool) or not isinstance(v, int):
        raise GqlError(f"Int cannot represent {v!r}")
    if not (-(2**31) <= v < 2**31):
        raise GqlError(f"Int cannot represent {v!r}: 32-bit overflow")
    return v


def _parse_long(v):
    if isinstance(v, bool):
        raise GqlError(f"Long cannot represent {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str) and re.fullmatch(r"-?\d+", v):
        return int(v)
    raise GqlError(f"Long cannot represent {v!r}")


def _parse_float(v):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise GqlError(f"Float cannot represent {v!r}")
    return float(v)


def _parse_str(v):
    if not isinstance(v, str):
        raise GqlError(f"String cannot represent {v!r}")
    return v


def _parse_bool(v):
    if not isinstance(v, bool):
        raise GqlError(f"Boolean cannot represent {v!r}")
    return v


def _parse_id(v):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise GqlError(f"ID cannot represent {v!r}")
    return str(v)


Int = Scalar("Int", serialize=_parse_int, parse=_parse_int)
Float = Scalar("Float", serialize=lambda v: float(v), parse=_parse_float)
String = Scalar("String", serialize=_parse_str, parse=_parse_str)
Boolean = Scalar("Boolean", serialize=_parse_bool, parse=_parse_bool)
ID = Scalar("ID", serialize=lambda v: str(v), parse=_parse_id)
Long = Scalar(
    "Long",
    serialize=_parse_long,
    parse=_parse_long,
    description="Signed 64-bit integer tick (JSON number; exact within 2^53 in JS clients)",
)

BUILTIN_SCALARS = {s.name: s for s in (Int, Float, String, Boolean, ID, Long)}


class Schema:
    def __init__(self, query: Object, mutation: Object | None = None):
        self.query = query
        self.mutation = mutation
        self.type_map: dict[str, GqlType] = {}
        for root in filter(None, (query, mutation)):
            self._register(root)

    def _register(self, t: GqlType) -> None:
        t = unwrap(t)
        name = getattr(t, "name", None)
        if name is None or name in self.type_map:
            return
        self.type_map[name] = t
        if isinstance(t, Object):
            for f in t.fields.values():
                self._register(f.type)
                for a in f.args.values():
                    self._register(a.type)


def unwrap(t: GqlType) -> GqlType:
    while isinstance(t, (ListOf, NonNull)):
        t = t.of_type
    return t


# ---------------------------------------------------------------------------
# execution


@dataclass
class _ExecContext:
    schema: Schema
    fragments: dict[str, dict]
    variables: dict[str, Any]
    root_value: Any
    errors: list[str] = field(default_factory=list)


class _Bubble(Exception):
    """Null escaping through a non-null type; handled at the nearest nullable."""


def _coerce_input(node_or_value, gql_type: GqlType, ctx: _ExecContext, is_literal: bool):
    """Literal AST nodes and JSON variable values share the same coercion."""
    if isinstance(gql_type, NonNull):
        out = _coerce_input(node_or_value, gql_type.of_type, ctx, is_literal)
        if out is None:
            raise GqlError("Expected non-null value")
        return out

    if is_literal:
        kind, payload = node_or_value
        if kind == "var":
            if payload not in ctx.variables:
                return None
            return _coerce_input(ctx.variables[payload], gql_type, ctx, is_literal=False)
        if kind == "null":
            return None
        if isinstance(gql_type, ListOf):
            if kind == "list":
                return [
                    _coerce_input(item, gql_type.of_type, ctx, True) for item in payload
                ]
            return [_coerce_input(node_or_value, gql_type.of_type, ctx, True)]
        if isinstance(gql_type, Enum):
            if kind in ("enum", "str"):
                return gql_type.parse(payload)
            raise GqlError(f"Enum {gql_type.name} cannot represent {payload!r}")
        if isinstance(gql_type, Scalar):
            if kind == "enum":
                raise GqlError(f"{gql_type.name} cannot represent enum {payload!r}")
            return gql_type.parse(payload)
        raise GqlError(f"Unsupported literal for type {gql_type!r}")

    value = node_or_value
    if value is None:
        return None
    if isinstance(gql_type, ListOf):
        items = value if isinstance(value, list) else [value]
        return [_coerce_input(item, gql_type.of_type, ctx, False) for item in items]
    if isinstance(gql_type, Enum):
        return gql_type.parse(value)
    if isinstance(gql_type, Scalar):
        return gql_type.parse(value)
    raise GqlError(f"Unsupported variable type {gql_type!r}")


def _type_from_node(node: tuple, schema: Schema) -> GqlType:
    kind = node[0]
    if kind == "nonnull":
        return NonNull(_type_from_node(node[1], schema))
    if kind == "list":
        return ListOf(_type_from_node(node[1], schema))
    name = node[1]
    t = schema.type_map.get(name) or BUILTIN_SCALARS.get(name)
    if t is None:
        raise GqlError(f"Unknown type {name!r} in variable definition")
    return t


def _collect_fields(ctx: _ExecContext, obj_type: Object, selection_set: list[dict],
                    out: dict[str, dict] | None = None) -> dict[str, dict]:
    """Response-key ordered field map, fragments expanded and merged."""
    if out is None:
        out = {}
    for sel in selection_set:
        kind = sel["kind"]
        if kind == "field":
            key = sel["alias"] or sel["name"]
            if key in out and out[key]["selection_set"] and sel["selection_set"]:
                out[key] = {
                    **out[key],
                    "selection_set": out[key]["selection_set"] + sel["selection_set"],
                }
            elif key not in out:
                out[key] = sel
        elif kind == "fragment_spread":
            frag = ctx.fragments.get(sel["name"])
            if frag is None:
                raise GqlError(f"Unknown fragment {sel['name']!r}")
            if frag["type_condition"] in (None, obj_type.name):
                _collect_fields(ctx, obj_type, frag["selection_set"], out)
        else:  # inline fragment
            if sel["type_condition"] in (None, obj_type.name):
                _collect_fields(ctx, obj_type, sel["selection_set"], out)
    return out


def _execute_selection_set(ctx: _ExecContext, obj_type: Object, obj_value: Any,
                           selection_set: list[dict]) -> dict:
    result: dict[str, Any] = {}
    for key, sel in _collect_fields(ctx, obj_type, selection_set).items():
        name = sel["name"]
        if name == "__typename":
            result[key] = obj_type.name
            continue
        field_def = _field_def(ctx.schema, obj_type, name)
        if field_def is None:
            ctx.errors.append(f"Cannot query field {name!r} on type {obj_type.name!r}")
            raise _Bubble()
        try:
            result[key] = _execute_field(ctx, obj_type, obj_value, sel, field_def)
        except _Bubble:
            if isinstance(field_def.type, NonNull):
                raise
            result[key] = None
    return result


def _field_def(schema: Schema, obj_type: Object, name: str) -> Field | None:
    if name == "__schema" and obj_type is schema.query:
        return _schema_meta_field(schema)
    if name == "__type" and obj_type is schema.query:
        return _type_meta_field(schema)
    return obj_type.fields.get(name)


def _execute_field(ctx: _ExecContext, obj_type: Object, obj_value: Any,
                   sel: dict, field_def: Field) -> Any:
    kwargs = {}
    for arg_name, arg_def in field_def.args.items():
        node = sel["arguments"].get(arg_name)
        if node is None or (node[0] == "var" and node[1] not in ctx.variables):
            if arg_def.default is not _MISSING:
                kwargs[arg_name] = arg_def.default
            elif isinstance(arg_def.type, NonNull):
                raise_and_log(ctx, f"Missing required argument {arg_name!r}")
            continue
        try:
            kwargs[arg_name] = _coerce_input(node, arg_def.type, ctx, is_literal=True)
        except GqlError as exc:
            raise_and_log(ctx, f"Argument {arg_name!r}: {exc}")
    for extra in sel["arguments"]:
        if extra not in field_def.args:
            raise_and_log(ctx, f"Unknown argument {extra!r}")

    resolver = field_def.resolver
    try:
        if resolver is not None:
            raw = resolver(obj_value, **kwargs)
        elif isinstance(obj_value, dict):
            raw = obj_value.get(sel["name"])
        else:
            raw = getattr(obj_value, sel["name"], None)
    except GqlError as exc:
        raise_and_log(ctx, str(exc))
    except Exception as exc:  # engine errors surface with their message
        raise_and_log(ctx, str(exc) or type(exc).__name__)
    return _complete_value(ctx, field_def.type, sel, raw)


def raise_and_log(ctx: _ExecContext, message: str):
    ctx.errors.append(message)
    raise _Bubble()


def _complete_value(ctx: _ExecContext, gql_type: GqlType, sel: dict, value: Any) -> Any:
    if isinstance(gql_type, NonNull):
        out = _complete_value(ctx, gql_type.of_type, sel, value)
        if out is None:
            raise_and_log(ctx, f"Field {sel['name']!r} returned null for non-nullable type")
        return out
    if value is None:
        return None
    if isinstance(gql_type, ListOf):
        if not isinstance(value, (list, tuple)):
            raise_and_log(ctx, f"Field {sel['name']!r} expected a list")
        return [_complete_value(ctx, gql_type.of_type, sel, item) for item in value]
    if isinstance(gql_type, Scalar):
        try:
            return gql_type.serialize(value)
        except GqlError as exc:
            raise_and_log(ctx, str(exc))
    if isinstance(gql_type, Enum):
        try:
            return gql_type.serialize(value)
        except GqlError as exc:
            raise_and_log(ctx, str(exc))
    if isinstance(gql_type, Object):
        if sel["selection_set"] is None:
            raise_and_log(ctx, f"Field {sel['name']!r} of type {gql_type.name} needs a selection set")
        return _execute_selection_set(ctx, gql_type, value, sel["selection_set"])
    raise_and_log(ctx, f"Cannot complete value of unsupported type {gql_type!r}")


def execute(schema: Schema, document: str, variables: dict | None = None,
            operation_name: str | None = None, root_value: Any = None) -> dict:
    """Run a request document; returns the GraphQL response envelope."""
    try:
        doc = parse(document)
    except GqlError as exc:
        return {"errors": [{"message": str(exc)}]}

    operations = doc["operations"]
    if operation_name is not None:
        matching = [op for op in operations if op["name"] == operation_name]
        if not matching:
            return {"errors": [{"message": f"Unknown operation {operation_name!r}"}]}
        op = matching[0]
    elif len(operations) == 1:
        op = operations[0]
    else:
        return {"errors": [{"message": "operationName is required for multi-operation documents"}]}

    root_type = schema.query if op["type"] == "query" else schema.mutation
    if root_type is None:
        return {"errors": [{"message": f"Schema has no {op['type']} root"}]}

    ctx = _ExecContext(schema=schema, fragments=doc["fragments"],
                       variables={}, root_value=root_value)
    raw_vars = variables or {}
    try:
        for var in op["variables"]:
            name = var["name"]
            gql_type = _type_from_node(var["type"], schema)
            if name in raw_vars:
                ctx.variables[name] = _coerce_input(raw_vars[name], gql_type, ctx, is_literal=False)
            elif var["default"] is not _MISSING:
                ctx.variables[name] = _coerce_input(var["default"], gql_type, ctx, is_literal=True)
            elif isinstance(gql_type, NonNull):
                raise GqlError(f"Variable ${name} of required type is missing")
    except GqlError as exc:
        return {"errors": [{"message": str(exc)}]}

    try:
        data = _execute_selection_set(ctx, root_type, root_value, op["selection_set"])
    except _Bubble:
        data = None
    response: dict[str, Any] = {"data": data}
    if ctx.errors:
        response["errors"] = [{"message": m} for m in ctx.errors]
    return response


# ---------------------------------------------------------------------------
# introspection


def _type_ref(t: GqlType) -> dict:
    if isinstance(t, NonNull):
        return {"kind": "NON_NULL", "name": None, "ofType": _type_ref(t.of_type)}
    if isinstance(t, ListOf):
        return {"kind": "LIST", "name": None, "ofType": _type_ref(t.of_type)}
    return {"kind": _kind(t), "name": getattr(t, "name", None), "ofType": None}


def _kind(t: GqlType) -> str:
    if isinstance(t, Scalar):
        return "SCALAR"
    if isinstance(t, Enum):
        return "ENUM"
    if isinstance(t, Object):
        return "OBJECT"
    if isinstance(t, ListOf):
        return "LIST"
    if isinstance(t, NonNull):
        return "NON_NULL"
    return "SCALAR"


def _default_sdl(arg: Argument) -> str | None:
    if arg.default is _MISSING:
        return None
    v = arg.default
    base = unwrap(arg.type)
    if isinstance(base, Enum) and isinstance(v, str):
        return v
    return json.dumps(v)


def _full_type(t: GqlType) -> dict:
    doc = {
        "kind": _kind(t),
        "name": getattr(t, "name", None),
        "description": getattr(t, "description", None),
        "fields": None,
        "inputFields": None,
        "interfaces": None,
        "enumValues": None,
        "possibleTypes": None,
        "ofType": None,
    }
    if isinstance(t, Object):
        doc["interfaces"] = []
        doc["fields"] = [
            {
                "name": fname,
                "description": f.description,
                "args": [
                    {
                        "name": aname,
                        "description": a.description,
                        "type": _type_ref(a.type),
                        "defaultValue": _default_sdl(a),
                    }
                    for aname, a in f.args.items()
                ],
                "type": _type_ref(f.type),
                "isDeprecated": False,
                "deprecationReason": None,
            }
            for fname, f in t.fields.items()
        ]
    if isinstance(t, Enum):
        doc["enumValues"] = [
            {"name": v, "description": None, "isDeprecated": False, "deprecationReason": None}
            for v in t.values
        ]
    return doc


def _all_types(schema: Schema) -> list[dict]:
    named: dict[str, GqlType] = dict(schema.type_map)
    for t in BUILTIN_SCALARS.values():
        named.setdefault(t.name, t)
    return [_full_type(named[name]) for name in sorted(named)]


def _schema_meta_field(schema: Schema) -> Field:
    def resolve(_obj):
        return {
            "queryType": {"name": schema.query.name},
            "mutationType": {"name": schema.mutation.name} if schema.mutation else None,
            "subscriptionType": None,
            "types": _all_types(schema),
            "directives": [],
        }

    return Field(type=_INTROSPECTION_SCHEMA, resolver=resolve)


def _type_meta_field(schema: Schema) -> Field:
    def resolve(_obj, name):
        t = schema.type_map.get(name) or BUILTIN_SCALARS.get(name)
        return _full_type(t) if t is not None else None

    return Field(type=_INTROSPECTION_TYPE, resolver=resolve,
                 args={"name": Argument(NonNull(String))})


def _introspection_type() -> Object:
    t: Object = Object("__Type", lambda: {
        "kind": Field(NonNull(String)),
        "name": Field(String),
        "description": Field(String),
        "fields": Field(ListOf(NonNull(_INTROSPECTION_FIELD)),
                        args={"includeDeprecated": Argument(Boolean, default=False)},
                        resolver=lambda obj, includeDeprecated=False: obj.get("fields")),
        "inputFields": Field(ListOf(NonNull(_INTROSPECTION_INPUT))),
        "interfaces": Field(ListOf(NonNull(_INTROSPECTION_TYPE))),
        "enumValues": Field(ListOf(NonNull(_INTROSPECTION_ENUM)),
                            args={"includeDeprecated": Argument(Boolean, default=False)},
                            resolver=lambda obj, includeDeprecated=False: obj.get("enumValues")),
        "possibleTypes": Field(ListOf(NonNull(_INTROSPECTION_TYPE))),
        "ofType": Field(_INTROSPECTION_TYPE),
        "specifiedByURL": Field(String),
    })
    return t


_INTROSPECTION_TYPE = _introspection_type()

_INTROSPECTION_INPUT = Object("__InputValue", lambda: {
    "name": Field(NonNull(String)),
    "description": Field(String),
    "type": Field(NonNull(_INTROSPECTION_TYPE)),
    "defaultValue": Field(String),
})

_INTROSPECTION_FIELD = Object("__Field", lambda: {
    "name": Field(NonNull(String)),
    "description": Field(String),
    "args": Field(NonNull(ListOf(NonNull(_INTROSPECTION_INPUT)))),
    "type": Field(NonNull(_INTROSPECTION_TYPE)),
    "isDeprecated": Field(NonNull(Boolean)),
    "deprecationReason": Field(String),
})

_INTROSPECTION_ENUM = Object("__EnumValue", lambda: {
    "name": Field(NonNull(String)),
    "description": Field(String),
    "isDeprecated": Field(NonNull(Boolean)),
    "deprecationReason": Field(String),
})

_INTROSPECTION_SCHEMA = Object("__Schema", lambda: {
    "queryType": Field(NonNull(_INTROSPECTION_TYPE)),
    "mutationType": Field(_INTROSPECTION_TYPE),
    "subscriptionType": Field(_INTROSPECTION_TYPE),
    "types": Field(NonNull(ListOf(NonNull(_INTROSPECTION_TYPE)))),
    "directives": Field(NonNull(ListOf(NonNull(Object("__Directive", lambda: {
        "name": Field(NonNull(String)),
        "description": Field(String),
        "locations": Field(NonNull(ListOf(NonNull(String)))),
        "args": Field(NonNull(ListOf(NonNull(_INTROSPECTION_INPUT)))),
    }))))),
})


# ---------------------------------------------------------------------------
# SDL printer


def _type_sdl(t: GqlType) -> str:
    if isinstance(t, NonNull):
        return f"{_type_sdl(t.of_type)}!"
    if isinstance(t, ListOf):
        return f"[{_type_sdl(t.of_type)}]"
    return t.name  # type: ignore[attr-defined]


def print_sdl(schema: Schema) -> str:
    """Schema definition document; custom scalars, enums and objects."""
    blocks: list[str] = []
    for name in sorted(schema.type_map):
        t = schema.type_map[name]
        if isinstance(t, Scalar):
            if name not in ("Int", "Float", "String", "Boolean", "ID"):
                blocks.append(f"scalar {name}")
            continue
        if isinstance(t, Enum):
            values = "\n".join(f"  {v}" for v in t.values)
            blocks.append(f"enum {name} {{\n{values}\n}}")
            continue
        if isinstance(t, Object):
            lines = []
            for fname, f in t.fields.items():
                if f.args:
                    args = ", ".join(
                        f"{aname}: {_type_sdl(a.type)}"
                        + (f" = {_default_sdl(a)}" if a.default is not _MISSING else "")
                        for aname, a in f.args.items()
                    )
                    lines.append(f"  {fname}({args}): {_type_sdl(f.type)}")
                else:
                    lines.append(f"  {fname}: {_type_sdl(f.type)}")
            blocks.append(f"type {name} {{\n" + "\n".join(lines) + "\n}")
    return "\n\n".join(blocks) + "\n"
