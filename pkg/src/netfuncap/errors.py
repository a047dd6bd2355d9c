"""Exception types shared across the library."""


class NetfuncapError(Exception):
    """Base class for all library errors."""


# --- network construction ---------------------------------------------------

class ValidationError(NetfuncapError):
    """Malformed input (unknown node, duplicate id, bad field value, ...)."""


class CyclicGraph(ValidationError):
    """The edge list contains a directed cycle."""


class UnreachableReceiver(ValidationError):
    """Some node has no directed path to the receiver."""


class SourcelessLeaf(ValidationError):
    """A node with no in-edges is not declared as a source."""


class ReceiverIsSource(ValidationError):
    """The receiver appears in the source list."""


# --- budgets ----------------------------------------------------------------

class BudgetExceeded(NetfuncapError):
    """An exhaustive enumeration would exceed the configured budget."""


# --- target functions -------------------------------------------------------

class OutOfAlphabet(NetfuncapError):
    """An argument vector contains a symbol outside {0..q-1}."""


class NotSymmetric(NetfuncapError):
    """Operation requires a symmetric target function."""


class NotDivisible(NetfuncapError):
    """Operation requires a (declared and spot-checked) divisible function."""


class NonPrimeFieldForLinear(ValidationError):
    """Linear target functions are only supported over prime-size alphabets."""


class ArityMismatch(ValidationError):
    """Explicit value table length does not match q**s."""


# --- bounds / codes ---------------------------------------------------------

class NotAllSources(NetfuncapError):
    """Operation requires every non-receiver node to be a source."""


class NotTree(NetfuncapError):
    """Operation requires a multi-edge tree network."""


class RateInfeasible(NetfuncapError):
    """Requested (k, n) violates the per-node index-capacity condition."""

    def __init__(self, node, message=None):
        self.node = node
        super().__init__(message or f"rate infeasible at node {node!r}")


class OddK(NetfuncapError):
    """The diamond construction requires an even message block length."""


class BlockTooSmall(NetfuncapError):
    """Edge blocks too short to forward a full message block."""


class IncompatibleEmbedding(NetfuncapError):
    """Source alphabet does not embed into the simulated code's alphabet."""


# --- sumsets ----------------------------------------------------------------

class PreconditionViolated(NetfuncapError):
    """Input family violates a stated size precondition."""


class DomainError(NetfuncapError):
    """Scalar argument outside the function's domain."""


# --- cli --------------------------------------------------------------------

class ParseError(NetfuncapError):
    """Structured input document is missing or misusing a key."""

    def __init__(self, key, message=None):
        self.key = key
        super().__init__(message or f"bad or missing key: {key}")


class UnknownExample(NetfuncapError):
    """Requested builtin example name does not exist."""
