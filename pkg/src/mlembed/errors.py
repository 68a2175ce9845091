"""Exception types shared across the package."""


class GraphInputError(ValueError):
    """Base class for invalid graphs, files, matchings, configs, and shapes."""


class DimensionError(GraphInputError):
    """A node id, matrix shape, or embedding dimension is out of range."""


class EdgeWeightError(GraphInputError):
    """An edge weight is zero, negative, or non-finite."""


class MissingEdgeError(GraphInputError):
    """The requested edge is not present in the graph."""


class MatchingError(GraphInputError):
    """A matching assigns a node twice or leaves a super-node column empty."""


class FileFormatError(GraphInputError):
    """A text input file is malformed."""

    def __init__(self, message, path=None, line=None):
        if line is not None:
            message = f"{path or '<input>'}:{line}: {message}"
        elif path is not None:
            message = f"{path}: {message}"
        super().__init__(message)
        self.path = path
        self.line = line


class ConfigError(GraphInputError):
    """A configuration value is outside its documented range."""


class TrainingDivergedError(RuntimeError):
    """Refiner training produced a non-finite loss."""

    def __init__(self, epoch, loss):
        super().__init__(f"non-finite training loss {loss!r} at epoch {epoch}")
        self.epoch = epoch
        self.loss = loss
