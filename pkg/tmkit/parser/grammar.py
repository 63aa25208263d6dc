# tmkit/parser/grammar.py
"""Lark grammar of the ``.tm`` modeling language."""

TM_GRAMMAR = r"""
start: _decl*

_decl: thimac
     | flow
     | trigger
     | event
     | behavior

thimac: "thimac" NAME [OO] "{" _member* "}"

_member: thimac
       | shared
       | machine
       | flow
       | trigger

shared: "shared" "part" path ";"

machine: "machine" "{" action_decl* "}"

action_decl: kind [":" NAME] ";"

flow: "flow" actref "->" actref ";"

trigger: "trigger" actref "~>" actref ";"

event: "event" NAME [STRING] "over" "{" actref ("," actref)* "}" ["at" STRING] ";"

behavior: "behavior" NAME "{" step* "}"

step: NAME ("->" NAME)* ";"

actref: kind "." path [":" NAME]

path: NAME ("." NAME)*

!kind: "create" | "process" | "release" | "transfer" | "receive"

OO: "oo"
NAME: /[A-Za-z_][A-Za-z0-9_]*/
STRING: /"(\\.|[^"\\\r\n])*"/
COMMENT: /\/\/[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

KEYWORDS = frozenset(
    {
        "thimac", "oo", "shared", "part", "machine", "flow", "trigger",
        "event", "over", "at", "behavior",
        "create", "process", "release", "transfer", "receive",
    }
)
