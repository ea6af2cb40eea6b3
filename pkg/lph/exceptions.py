#!/usr/bin/env python
"""
Exceptions raised by the lph library.

Every error derives from LphError, so the management commands can turn
any of them into a CommandError with a single except clause.
"""


class LphError(Exception):
    """Base class of every toolkit error."""


# Graphs and assignments

class GraphError(LphError):
    pass


class EmptyGraph(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class DuplicateNode(GraphError):
    pass


class Disconnected(GraphError):
    pass


class UnknownNode(GraphError):
    pass


class MissingId(GraphError):
    pass


class NotLocallyUnique(GraphError):
    pass


class LabelError(GraphError):
    """A label is not a bit string where one is required."""


# Parsing

class ParseError(LphError):
    """
    Raised by every file and formula reader. Carries the 1-based line
    and the column of the offending input when known.
    """
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self._render())

    def _render(self):
        if self.line is not None and self.column is not None:
            return f'line {self.line}, column {self.column}: {self.message}'
        if self.line is not None:
            return f'line {self.line}: {self.message}'
        if self.column is not None:
            return f'position {self.column}: {self.message}'
        return self.message


class FormulaSyntaxError(ParseError):
    pass


# Distributed runtime

class MachineError(LphError):
    pass


class InvalidTransition(MachineError):
    """A transition would overwrite or write the start marker, or move left of it."""


class UndefinedTransition(MachineError):
    def __init__(self, state, symbols):
        self.state = state
        self.symbols = symbols
        super().__init__(
            f'no transition from state {state!r} reading {"".join(symbols)!r}'
        )


class HeadUnderflow(MachineError):
    pass


class DuplicateSenderId(MachineError):
    pass


class RoundLimitExceeded(MachineError):
    pass


class StepLimitExceeded(MachineError):
    pass


# Logic

class LogicError(LphError):
    pass


class ArityMismatch(LogicError):
    pass


class NotClassifiable(LogicError):
    pass


class SignatureMismatch(LogicError):
    pass


class UnboundVariable(LogicError):
    pass


class SearchSpaceTooLarge(LogicError):
    pass


# Games

class BudgetExceeded(LphError):
    pass


# Reductions

class ReductionError(LphError):
    pass


class Not3CNF(ReductionError):
    pass


class NotSigma1(ReductionError):
    pass


# Oracles and pictures

class Unsupported(LphError):
    pass


class BitWidthMismatch(LphError):
    pass


class NonZeroBits(LphError):
    pass
