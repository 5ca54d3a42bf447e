class ParsingError(Exception):
    """
    Exception raised when loading of external files (configuration, input data) into internal representation
    encounters error that prevents further parsing of file in question.
    """


class FileWritingError(Exception):
    """
    Exception raised when encountering error while trying to write content into file.
    """


class CodecError(Exception):
    """
    Exception raised when encoding or decoding cannot continue.
    """


class CorruptStreamError(CodecError):
    """
    Exception raised when encoded stream is truncated, holds out of range values or does not decode to declared
    length.
    """


class BadMagicError(CorruptStreamError):
    """
    Exception raised when stream does not start with the expected magic bytes.
    """


class UnsupportedVersionError(CorruptStreamError):
    """
    Exception raised when stream header declares format version this implementation cannot read.
    """


class InfeasibleError(ValueError):
    """
    Exception raised when no joint distribution with given marginals satisfies the distortion budget.
    """


class LengthMismatchError(ValueError):
    """
    Exception raised when two sequences that need to be compared position by position differ in length.
    """


class EmptySequenceError(ValueError):
    """
    Exception raised when operation requires at least one symbol but got empty sequence.
    """


class NotALeafError(ValueError):
    """
    Exception raised when extending dictionary node that is not a current codelet.
    """


class LevelFullError(Exception):
    """
    Exception raised when dictionary level already holds its maximum number of live codelets.
    """


class EmptyMatchSetError(ValueError):
    """
    Exception raised when codelet selection is requested from no matching codelets.
    """


class ZeroRateError(ValueError):
    """
    Exception raised when rate-distortion function is zero and quantity derived from its inverse is undefined.
    """


class CheckFailureError(Exception):
    """
    Exception raised when at least one of the requested verification checks did not pass.
    """
