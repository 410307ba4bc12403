from __future__ import annotations


class MedianlabError(RuntimeError):
    code = "ERROR"

    def __init__(self, message: str, *, code: str | None = None, witness: object = None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.witness = witness


class UnknownVertexError(MedianlabError, KeyError):
    code = "UNKNOWN_VERTEX"

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else self.code


class InvalidGraphError(MedianlabError, ValueError):
    code = "INVALID_GRAPH"


class ThetaError(MedianlabError):
    code = "THETA_NOT_TRANSITIVE"


class NotGatedError(MedianlabError):
    code = "NOT_GATED"

    def __init__(self, message: str, *, side: str, witness: object = None):
        super().__init__(message, witness=witness)
        self.side = side


class DomainTooLargeError(MedianlabError):
    code = "DOMAIN_TOO_LARGE"

    def __init__(self, limit: int):
        super().__init__(f"domain has more than {limit} configurations")
        self.limit = limit


class ResourceLimitError(MedianlabError):
    code = "RESOURCE_LIMIT"


class PartialMapError(MedianlabError, ValueError):
    code = "PARTIAL_MAP"


class InvalidOrderError(MedianlabError, ValueError):
    code = "INVALID_ORDER"


class RepresentationError(MedianlabError):
    code = "CELL_REPRESENTATION"


class ConstructionBugError(MedianlabError):
    code = "CONSTRUCTION_BUG"


class SchemaError(MedianlabError, ValueError):
    code = "SCHEMA"
