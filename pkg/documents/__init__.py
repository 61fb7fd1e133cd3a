"""Input documents: groups, matched pairs, Lie algebras, actions and task directives."""

from .parser import COMMANDS, DocumentParser, InputDocument, TaskDirective, Token, load_document, parse_document

__all__ = [
    "COMMANDS",
    "DocumentParser",
    "InputDocument",
    "TaskDirective",
    "Token",
    "load_document",
    "parse_document",
]
