from typing import Iterable, Tuple


class KernelError(Exception):
    """Base class for all custom exceptions."""
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

class UnknownVariable(KernelError):
    """Raised when a term mentions a variable outside its context."""
    pass

class ArityMismatch(KernelError):
    """Raised when a symbol is applied to the wrong number of arguments."""
    pass

class SortMismatch(KernelError):
    """Raised when a term does not have the sort its position requires."""
    def __init__(self, message: str, position: Tuple[int, ...] = ()):
        super().__init__(message)
        self.position = position

class UnknownSymbol(KernelError):
    """Raised when a name is not declared in the signature."""
    pass

class NoBoundary(KernelError):
    """Raised when the boundary of a level-0 context is requested."""
    pass

class MissingBaseSymbol(KernelError):
    """Raised when a theory lacks the ty/ft symbol of some level."""
    pass

class UnmappedSymbol(KernelError):
    """Raised when a morphism has no image for a source symbol."""
    pass

class BaseMismatch(KernelError):
    """Raised when colimit inputs disagree on, or move, the base theory."""
    pass

class DerivationError(KernelError):
    """Base class for derivation-checking failures; carries the node path."""
    def __init__(self, message: str, path: Tuple[int, ...] = ()):
        super().__init__(f"{message} at node {list(path)}")
        self.path = path

class RuleMismatch(DerivationError):
    """Raised when a node does not match its rule schema."""
    pass

class UnknownAxiom(DerivationError):
    """Raised when rule na names an axiom the theory does not have."""
    pass

class SideConditionFailed(DerivationError):
    """Raised when a rule's side condition does not hold."""
    pass

class LhsDrift(DerivationError):
    """Raised when a premise's left-hand side differs from its conclusion's."""
    pass

class VariableLhs(KernelError):
    """Raised when a rewrite rule has a variable left-hand side."""
    pass

class EscapingVariable(KernelError):
    """Raised when a rewrite rule's right-hand side has a variable not on the left."""
    pass

class FuelExhausted(KernelError):
    """Raised when normalization runs out of fuel; carries the partial trace."""
    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace

class NotSeparated(KernelError):
    """Raised when a theory's axioms cannot be split into A_d, A'_d and A_e."""
    def __init__(self, message: str, axiom: str = ""):
        super().__init__(message)
        self.axiom = axiom

class UndirectedAxiom(KernelError):
    """Raised when an equational axiom cannot be read as a rewrite rule."""
    def __init__(self, axiom: str, reason: str):
        super().__init__(f"Axiom '{axiom}' is not directed: {reason}")
        self.axiom = axiom
        self.reason = reason

class CyclicOrder(KernelError):
    """Raised when a symbol ordering candidate has a cycle."""
    def __init__(self, message: str, cycle: Iterable[str] = ()):
        super().__init__(message)
        self.cycle = list(cycle)

class MissingSymbol(KernelError):
    """Raised when a certificate does not cover some function symbol."""
    pass

class OutOfOrderReference(KernelError):
    """Raised when a telescope entry mentions a later variable."""
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index

class MissingWitness(KernelError):
    """Raised when a witness table omits a required symbol."""
    pass

class MissingContextMetadata(KernelError):
    """Raised when a context argument sits outside the declared context position."""
    pass

class TheorySyntaxError(KernelError):
    """Raised for malformed theory files; carries the position and expected tokens."""
    def __init__(self, message: str, line: int, column: int, expected: Iterable[str] = ()):
        self.line = line
        self.column = column
        self.expected = sorted(set(expected))
        super().__init__(f"{message} at line {line}, column {column}")

class DuplicateName(KernelError):
    """Raised when a declaration reuses a name."""
    pass

class UnknownSort(KernelError):
    """Raised for a sort keyword other than tm, ty or ctx."""
    pass

class UnknownName(KernelError):
    """Raised when a stdlib artifact or command name is not registered."""
    pass

class NotImplementedArtifact(KernelError, NotImplementedError):
    """Raised by registered placeholders that have no construction."""
    pass

class UnknownCommand(KernelError):
    """Raised when a sub-command name is not registered."""
    pass
