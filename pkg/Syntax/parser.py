from functools import lru_cache
from pathlib import Path
from typing import Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from Core.Utils.exception import KernelError, TheorySyntaxError
from Core.Utils.logger import Logger
from Syntax.ast import (
    AppNode,
    AxiomDecl,
    BareNode,
    DefNode,
    EntryDecl,
    EqNode,
    FunDecl,
    FunMap,
    ImportDecl,
    MorphismBlock,
    NameRef,
    PragmaDecl,
    PredDecl,
    PredMap,
    SortRef,
    TelescopeDecl,
    TheoryBlock,
    TermNode,
    TheoryFile,
)

logger = Logger.get_logger()

GRAMMAR_PATH = Path(__file__).with_name("grammar.lark")


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    return Lark(
        GRAMMAR_PATH.read_text(encoding="utf-8"),
        parser="earley",
        start=["start", "term"],
        propagate_positions=True,
    )


@v_args(inline=True)
class _ToAst(Transformer):
    def start(self, *decls):
        return TheoryFile(tuple(decls))

    def import_stmt(self, name):
        return ImportDecl(str(name))

    def pragma(self, level):
        return PragmaDecl(int(level))

    def sort(self, keyword, level):
        return SortRef(str(keyword), int(level))

    def sort_list(self, *sorts):
        return tuple(sorts)

    def context_pos(self, position):
        return int(position)

    def fun_decl(self, name, args, result, context=None):
        return FunDecl(str(name), args, result, context)

    def pred_decl(self, name, args):
        return PredDecl(str(name), args)

    def var_decl(self, name, sort):
        return (str(name), sort)

    def var_decls(self, *decls):
        return tuple(decls)

    def axiom(self, name, variables, lhs, rhs):
        return AxiomDecl(str(name), variables, lhs, rhs)

    def tel_entry(self, name, *rest):
        kind = str(rest[0]) if len(rest) == 2 else None
        return EntryDecl(str(name), kind, rest[-1])

    def tel_entries(self, *entries):
        return tuple(entries)

    def telescope(self, name, entries):
        return TelescopeDecl(str(name), entries)

    def theory(self, name, *items):
        return TheoryBlock(str(name), tuple(items))

    def names(self, *names):
        return tuple(str(n) for n in names)

    def fun_map(self, name, params, image):
        return FunMap(str(name), params, image)

    def pred_map(self, name, params, image):
        return PredMap(str(name), params, image)

    def morphism(self, name, source, target, *items):
        return MorphismBlock(str(name), str(source), str(target), tuple(items))

    def formula(self, value):
        return value

    def top(self):
        return ()

    def conj(self, *atoms):
        if len(atoms) == 1 and atoms[0] == BareNode(NameRef("true")):
            return ()
        return tuple(atoms)

    def eq(self, lhs, rhs):
        return EqNode(lhs, rhs)

    def defined(self, term):
        return DefNode(term)

    def bare(self, term):
        return BareNode(term)

    def name(self, token: Token):
        return NameRef(str(token))

    def app(self, name, args):
        return AppNode(str(name), args)

    def terms(self, *terms):
        return tuple(terms)


def _position(text: str, error: UnexpectedInput):
    line, column = getattr(error, "line", -1), getattr(error, "column", -1)
    if line is None or line < 1:
        lines = text.split("\n")
        line, column = len(lines), len(lines[-1]) + 1
    return line, column


def _parse(text: str, start: str):
    try:
        tree = get_parser().parse(text, start=start)
    except (UnexpectedCharacters, UnexpectedToken, UnexpectedEOF) as e:
        line, column = _position(text, e)
        expected = getattr(e, "expected", None) or getattr(e, "allowed", None) or ()
        logger.debug("📛 Syntax error at %d:%d", line, column)
        raise TheorySyntaxError("Syntax error", line, column, expected)
    except UnexpectedInput as e:
        line, column = _position(text, e)
        raise TheorySyntaxError("Syntax error", line, column)
    try:
        return _ToAst().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, KernelError):
            raise e.orig_exc
        raise


def parse_theory_file(text: Union[str, bytes]) -> TheoryFile:
    """Parse a theory file into its declarations, in order."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return _parse(text, "start")


def parse_term(text: str) -> TermNode:
    """A single term in theory-file syntax, e.g. `app(A, B, f, a)`."""
    return _parse(text, "term")
