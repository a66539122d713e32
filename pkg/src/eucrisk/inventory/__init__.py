"""EUCA inventory: records, the JSON store, and CSV exchange."""

from eucrisk.inventory.csvio import (
    CSV_COLUMNS,
    MalformedRow,
    SchemaMismatch,
    exchange,
    export_csv,
    import_csv,
)
from eucrisk.inventory.records import (
    Assessment,
    Disposition,
    EucaRecord,
    IntegrityError,
    Lifecycle,
    RiskRegisterEntry,
    RiskStatus,
    StoreDocument,
)
from eucrisk.inventory.store import (
    AlreadyClosed,
    DateOrder,
    InconsistentResult,
    InventoryError,
    InventoryStore,
    MissingField,
    ResidualExceedsInherent,
    RetiredRecord,
    ScaleViolation,
    UnknownId,
    UnknownRisk,
)

__all__ = [
    "AlreadyClosed",
    "Assessment",
    "CSV_COLUMNS",
    "DateOrder",
    "Disposition",
    "EucaRecord",
    "InconsistentResult",
    "IntegrityError",
    "InventoryError",
    "InventoryStore",
    "Lifecycle",
    "MalformedRow",
    "MissingField",
    "ResidualExceedsInherent",
    "RetiredRecord",
    "RiskRegisterEntry",
    "RiskStatus",
    "ScaleViolation",
    "SchemaMismatch",
    "StoreDocument",
    "UnknownId",
    "UnknownRisk",
    "exchange",
    "export_csv",
    "import_csv",
]
