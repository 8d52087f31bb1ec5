from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import List, Tuple

from lark import Lark, Token, Transformer

_GRAMMAR_PATH = Path(__file__).parent / "grammar" / "words.lark"

Term = Tuple[int, str]


class _ToTerms(Transformer):
    def letter(self, items):
        return str(items[0]).upper()

    def group(self, items):
        # items = [LPAR, product, RPAR]
        return items[1]

    def factor(self, items):
        base = items[0]
        if len(items) == 3:
            return base * int(items[2])
        return base

    def product(self, items):
        return "".join(items)

    def scaled(self, items):
        coefficient = int(items[0])
        return (coefficient, items[-1])

    def constant(self, items):
        return (int(items[0]), "")

    def plain(self, items):
        return (1, items[0])

    def sum(self, items):
        return [item for item in items if not isinstance(item, Token)]


@lru_cache(maxsize=1)
def _build_parser() -> Lark:
    grammar = _GRAMMAR_PATH.read_text(encoding="utf-8")
    return Lark(grammar, parser="lalr", maybe_placeholders=False)


def parse(expression: str) -> List[Term]:
    """Parse a sum of words into (coefficient, letters) terms; raises lark errors unchanged."""

    tree = _build_parser().parse(expression)
    return _ToTerms().transform(tree)
