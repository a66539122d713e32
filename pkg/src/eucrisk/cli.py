"""Command line interface.

Thin adapters only: every command parses its inputs, calls the module
operation, and prints that operation's serialized result. Machine output
goes to stdout, prompts and diagnostics to stderr. Exit codes: 0 success,
1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import os
import sys
from pathlib import Path

from eucrisk.dates import parse_date
from eucrisk.drafts import DraftStore, UnknownDraft
from eucrisk.inventory import (
    EucaRecord,
    IntegrityError,
    InventoryError,
    InventoryStore,
    Lifecycle,
    RiskRegisterEntry,
    exchange,
)
from eucrisk.rating import (
    CONTROL_FIELDS,
    DATA_FIELDS,
    AssessmentInput,
    OutOfRange,
    RatingBand,
    TriageSubmission,
    UnknownField,
    assess,
    triage,
)
from eucrisk.reporting import (
    EmptyStore,
    UnsupportedFormat,
    department_concentration,
    kpi_snapshot,
    overdue_reviews,
    render_report,
    unregistered_amber_red,
)
from eucrisk.scanner import (
    EncryptedWorkbook,
    ScanError,
    detect_controls_framework,
    diff_against_baseline,
    extract_metrics,
    grade_complexity,
    parse_workbook,
    unavailable_metrics,
)

STORE_ENV = "EUC_STORE"

_FORMATS = {"md": "markdown", "markdown": "markdown", "csv": "csv", "json": "json"}

DOMAIN_ERRORS = (
    ScanError, InventoryError, IntegrityError, EmptyStore, UnsupportedFormat,
    OutOfRange, UnknownField, UnknownDraft, FileNotFoundError, ValueError,
)


class UsageError(Exception):
    """Bad flag combination detected after parsing; maps to exit code 2."""


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(payload) -> None:
    _emit(json.dumps(payload, indent=2))


def _render(payload, fmt: str) -> None:
    _emit(render_report(payload, _FORMATS[fmt]))


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _require_store(args) -> Path:
    if not args.store:
        raise UsageError("--store is required (or set EUC_STORE)")
    return Path(args.store)


def _drafts(args) -> DraftStore:
    if getattr(args, "drafts_file", None):
        return DraftStore(args.drafts_file)
    if args.store:
        return DraftStore.beside(args.store)
    raise UsageError("draft options need --store or --drafts-file")


# ---------------------------------------------------------------------------
# scan / diff
# ---------------------------------------------------------------------------

def cmd_scan(args) -> int:
    try:
        model = parse_workbook(args.path)
    except EncryptedWorkbook:
        if args.tabs:
            raise
        sys.stderr.write("encrypted workbook: reporting protection only\n")
        _render(unavailable_metrics(), args.format)
        return 0
    if args.tabs:
        _emit_json(detect_controls_framework(model).to_dict())
        return 0
    _render(extract_metrics(model), args.format)
    return 0


def cmd_diff(args) -> int:
    diff = diff_against_baseline(parse_workbook(args.baseline), parse_workbook(args.current))
    _render(diff, args.format)
    return 0


# ---------------------------------------------------------------------------
# assess (file-driven and interactive questionnaire)
# ---------------------------------------------------------------------------

# General Details prompts, asked when the assessment will create a record.
GENERAL_PROMPTS = [
    ("group_division", "Group / Division"),
    ("department", "Department"),
    ("team", "Team"),
    ("manager", "Manager's name"),
    ("sme", "Name of the SME"),
    ("data_steward", "Who is the Data Steward?"),
    ("data_owner", "Who is the Data Owner?"),
    ("tester", "Tester's name"),
    ("name", "Name of the application"),
    ("description", "Description of the application"),
    ("version", "Application version"),
    ("last_release_date", "Date of last release (YYYY-MM-DD)"),
    ("last_changed_date", "Date last changed or reviewed (YYYY-MM-DD)"),
    ("processes", "Process(es) this application is part of (semicolon separated)"),
    ("app_type", "Application type"),
    ("file_location", "File location of the application"),
    ("decision_making", "Used for decision making or profiling? (y/n)"),
    ("key_data_items", "Key data items used or calculated (semicolon separated)"),
]

CONTROL_PROMPTS = {
    "location_known": "Is the application's location known?",
    "operating_instructions": "Are there operating instructions?",
    "backup_in_place": "Is a back-up in place?",
    "recovery_tested": "Has recovery been tested?",
    "version_controlled": "Is it version controlled?",
    "review_current": "Is its review up to date?",
    "testing_evidenced": "Is testing evidenced?",
    "access_restricted": "Is access restricted?",
    "integrity_protected": "Is it protected against unauthorised change?",
    "second_person_can_fix": "Can a second person fix it if it breaks?",
    "technical_docs_exist": "Does technical documentation exist?",
    "holds_personal_data": "Does it hold personal data?",
    "holds_sensitive_personal_data": "Does it hold sensitive personal data?",
}

_YES = {"y", "yes", "true", "1"}
_NO = {"n", "no", "false", "0"}


def _ask(prompt: str, default=None) -> str:
    shown = "" if default in (None, "") else f" [{default}]"
    sys.stderr.write(f"{prompt}{shown}: ")
    sys.stderr.flush()
    line = sys.stdin.readline()
    if not line:
        return "" if default is None else str(default)
    line = line.strip()
    if not line:
        return "" if default is None else str(default)
    return line


def _ask_bool(prompt: str, default: bool | None = None) -> bool:
    shown_default = None if default is None else ("y" if default else "n")
    while True:
        answer = _ask(prompt + " (y/n)", shown_default).lower()
        if answer in _YES:
            return True
        if answer in _NO:
            return False
        sys.stderr.write("please answer y or n\n")


def _general_details_screen(base: dict) -> dict:
    sys.stderr.write("-- General Details --\n")
    general: dict = {}
    for field_name, prompt in GENERAL_PROMPTS:
        answer = _ask(prompt, base.get(field_name, ""))
        if field_name == "decision_making":
            general[field_name] = answer.lower() in _YES
        elif field_name in ("processes", "key_data_items"):
            general[field_name] = [p.strip() for p in answer.split(";") if p.strip()]
        elif answer:
            general[field_name] = answer
    return general


def _controls_screen(base: dict, default_complexity: int | None) -> dict:
    sys.stderr.write("-- Risk Assessment --\n")
    answers: dict = {}
    answers["complexity"] = int(_ask("Complexity grade 1-3",
                                     base.get("complexity", default_complexity)))
    answers["materiality"] = int(_ask("Materiality grade 1-3", base.get("materiality")))
    answers["impact"] = int(_ask(
        "Impact 1-6 (1 Inconvenient ... 6 Statutory/Legislative)", base.get("impact")))
    answers["assessed_on"] = _ask("Assessment date (YYYY-MM-DD)",
                                  base.get("assessed_on", dt.date.today().isoformat()))
    controls: dict = {}
    base_controls = base.get("controls", {})
    for field_name in CONTROL_FIELDS + DATA_FIELDS:
        controls[field_name] = _ask_bool(CONTROL_PROMPTS[field_name],
                                         base_controls.get(field_name))
    answers["controls"] = controls
    return answers


def _record_from_general(general: dict) -> EucaRecord:
    data = dict(general)
    for key in ("processes", "key_data_items"):
        if key in data and isinstance(data[key], list):
            data[key] = tuple(data[key])
    return EucaRecord.from_dict({k: v for k, v in data.items() if v is not None})


def cmd_assess(args) -> int:
    scan_grade = None
    if args.from_scan:
        scan_grade = int(grade_complexity(extract_metrics(parse_workbook(args.from_scan))))

    base: dict = {}
    general: dict | None = None
    if args.draft:
        payload = _drafts(args).get(args.draft)
        if isinstance(payload, dict) and "input" in payload:
            base = dict(payload.get("input") or {})
            general = payload.get("general")
        else:
            base = dict(payload)
    if args.input:
        base = _load_json(args.input)

    if args.interactive:
        if args.store and not args.id:
            general = _general_details_screen(general or {})
        base = _controls_screen(base, scan_grade)
    else:
        if scan_grade is not None:
            base["complexity"] = scan_grade
        base.setdefault("assessed_on", dt.date.today().isoformat())

    if args.save_draft:
        _drafts(args).put(args.save_draft, {"general": general, "input": base})
        sys.stderr.write(f"draft saved under {args.save_draft!r}\n")

    try:
        inp = AssessmentInput.from_dict(base)
    except ValueError:
        if args.save_draft:
            _emit_json({"draft": args.save_draft, "complete": False})
            return 0
        raise

    result = assess(inp)

    if args.store and (args.id or general):
        store = InventoryStore.open(_require_store(args))
        if args.id:
            euca_id = args.id
        else:
            euca_id = store.upsert_euca(_record_from_general(general or {})).id
        store.record_assessment(euca_id, inp, result)
        store.save()
        sys.stderr.write(f"assessment recorded against {euca_id}\n")

    _emit_json(result.to_dict())
    return 0


# ---------------------------------------------------------------------------
# triage
# ---------------------------------------------------------------------------

def cmd_triage(args) -> int:
    if args.input:
        data = _load_json(args.input)
    else:
        if args.has_euc is None:
            raise UsageError("triage needs --input or --has-euc")
        data = {
            "department": args.department or "",
            "has_euc": args.has_euc,
            "process": args.process or "",
            "materiality": args.materiality if args.materiality is not None else 1,
            "complexity": args.complexity if args.complexity is not None else 1,
            "fix_knowledge": args.fix_knowledge if args.fix_knowledge is not None else 3.0,
            "staffing_resilience": args.staffing_resilience if args.staffing_resilience is not None else 3.0,
            "recovery": args.recovery if args.recovery is not None else 3.0,
            "version_control": args.version_control if args.version_control is not None else 3.0,
            "misuse_protection": args.misuse_protection if args.misuse_protection is not None else 3.0,
            "gdpr": args.gdpr if args.gdpr is not None else 0,
        }
        if args.has_euc == 1:
            required = ("materiality", "complexity", "fix_knowledge", "staffing_resilience",
                        "recovery", "version_control", "misuse_protection")
            missing = [name for name in required if getattr(args, name) is None]
            if missing:
                raise UsageError(
                    "triage with --has-euc 1 needs --" + ", --".join(m.replace("_", "-") for m in missing))
    result = triage(TriageSubmission.from_dict(data))
    _emit_json(result.to_dict())
    return 0


# ---------------------------------------------------------------------------
# inventory
# ---------------------------------------------------------------------------

def cmd_inventory_add(args) -> int:
    store = InventoryStore.open(_require_store(args))
    if args.input:
        record = EucaRecord.from_dict(_load_json(args.input))
    else:
        if not (args.name and args.department and args.manager):
            raise UsageError("inventory add needs --input or --name/--department/--manager")
        record = EucaRecord(
            id=args.id or "", name=args.name, department=args.department,
            manager=args.manager, team=args.team or "", sme=args.sme or "",
            description=args.description or "", app_type=args.app_type or "",
            file_location=args.file_location or "",
        )
    saved = store.upsert_euca(record)
    store.save()
    _emit_json(saved.to_dict())
    return 0


def cmd_inventory_list(args) -> int:
    store = InventoryStore.load(_require_store(args))
    records = store.list_eucas(
        department=args.department,
        band=RatingBand.from_label(args.band) if args.band else None,
        lifecycle=Lifecycle(args.lifecycle) if args.lifecycle else None,
        due_before=parse_date(args.due_before) if args.due_before else None,
    )
    _render(records, args.format)
    return 0


def cmd_inventory_review(args) -> int:
    store = InventoryStore.load(_require_store(args))
    record = store.confirm_review(args.id, parse_date(args.date))
    store.save()
    _emit_json(record.to_dict())
    return 0


def cmd_inventory_retire(args) -> int:
    store = InventoryStore.load(_require_store(args))
    record = store.set_lifecycle(args.id, Lifecycle.RETIRED, args.reason or "")
    store.save()
    _emit_json(record.to_dict())
    return 0


def cmd_inventory_exchange(args) -> int:
    direction = args.direction
    if direction == "import":
        store = InventoryStore.open(_require_store(args))
    else:
        store = InventoryStore.load(_require_store(args))
    count = exchange(store, direction, args.path)
    if direction == "import":
        store.save()
    _emit_json({"direction": direction, "path": str(args.path), "count": count})
    return 0


# ---------------------------------------------------------------------------
# risk register
# ---------------------------------------------------------------------------

def cmd_risk_link(args) -> int:
    store = InventoryStore.load(_require_store(args))
    entry = store.link_risk(args.euca, RiskRegisterEntry(
        risk_id="", euca_id="", description=args.description,
        inherent_likelihood=args.inherent_likelihood,
        inherent_severity=args.inherent_severity,
        residual_likelihood=args.residual_likelihood,
        residual_severity=args.residual_severity,
        opened=parse_date(args.opened) if args.opened else dt.date.today(),
    ))
    store.save()
    _emit_json(entry.to_dict())
    return 0


def cmd_risk_close(args) -> int:
    store = InventoryStore.load(_require_store(args))
    entry = store.close_risk(args.risk_id, parse_date(args.date))
    store.save()
    _emit_json(entry.to_dict())
    return 0


# ---------------------------------------------------------------------------
# kpi / serve
# ---------------------------------------------------------------------------

def cmd_kpi(args) -> int:
    store = InventoryStore.load(_require_store(args))
    as_of = parse_date(args.as_of) if args.as_of else dt.date.today()
    if args.view == "snapshot":
        payload = kpi_snapshot(store, as_of, include_retired=args.include_retired)
    elif args.view == "overdue":
        payload = overdue_reviews(store, as_of)
    elif args.view == "unregistered":
        payload = unregistered_amber_red(store)
    else:
        payload = department_concentration(store, args.top_k,
                                           include_retired=args.include_retired)
    _render(payload, args.format)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from eucrisk.api import create_app

    app = create_app(_require_store(args), ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_store(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--store", default=os.environ.get(STORE_ENV),
                        help=f"store file path (default: ${STORE_ENV})")


def _add_format(parser: argparse.ArgumentParser, default: str = "json") -> None:
    parser.add_argument("--format", choices=sorted(_FORMATS), default=default,
                        help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eucrisk",
        description="Spreadsheet governance: scan workbooks, score risk, run the inventory.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="extract complexity indicators from a workbook")
    scan.add_argument("path")
    scan.add_argument("--tabs", action="store_true",
                      help="check for the Control/Validation/Documentation tabs instead")
    _add_format(scan)
    scan.set_defaults(func=cmd_scan)

    assess_p = sub.add_parser("assess", help="score one assessment questionnaire")
    assess_p.add_argument("--input", help="answers file (AssessmentInput JSON)")
    assess_p.add_argument("--interactive", action="store_true",
                          help="ask the questionnaire on the terminal")
    assess_p.add_argument("--from-scan", dest="from_scan", metavar="XLSX",
                          help="pre-fill the complexity grade by scanning a workbook")
    assess_p.add_argument("--id", help="record the assessment against this inventory id")
    assess_p.add_argument("--draft", help="restore previous input saved under this key")
    assess_p.add_argument("--save-draft", dest="save_draft", metavar="KEY",
                          help="save the (possibly partial) input under this key")
    assess_p.add_argument("--drafts-file", dest="drafts_file",
                          help="drafts sidecar path (default: next to the store)")
    _add_store(assess_p)
    assess_p.set_defaults(func=cmd_assess)

    triage_p = sub.add_parser("triage", help="departmental quick score")
    triage_p.add_argument("--input", help="submission file (TriageSubmission JSON)")
    triage_p.add_argument("--department")
    triage_p.add_argument("--has-euc", dest="has_euc", type=int, choices=(0, 1))
    triage_p.add_argument("--process")
    triage_p.add_argument("--materiality", type=int)
    triage_p.add_argument("--complexity", type=int)
    for flag in ("fix-knowledge", "staffing-resilience", "recovery",
                 "version-control", "misuse-protection"):
        triage_p.add_argument(f"--{flag}", dest=flag.replace("-", "_"), type=float)
    triage_p.add_argument("--gdpr", type=int, choices=(0, 1))
    triage_p.set_defaults(func=cmd_triage)

    inventory = sub.add_parser("inventory", help="inventory operations")
    inv_sub = inventory.add_subparsers(dest="subcommand", required=True)

    add = inv_sub.add_parser("add", help="insert or update a record")
    add.add_argument("--input", help="record file (EucaRecord JSON)")
    add.add_argument("--id", help="existing record id to update")
    for flag in ("name", "department", "manager", "team", "sme", "description",
                 "app-type", "file-location"):
        add.add_argument(f"--{flag}", dest=flag.replace("-", "_"))
    _add_store(add)
    add.set_defaults(func=cmd_inventory_add)

    listing = inv_sub.add_parser("list", help="list records with optional filters")
    listing.add_argument("--department")
    listing.add_argument("--band", choices=["Blue", "Green", "Amber", "Red"])
    listing.add_argument("--lifecycle", choices=["live", "retired"])
    listing.add_argument("--due-before", dest="due_before", metavar="DATE")
    _add_store(listing)
    _add_format(listing)
    listing.set_defaults(func=cmd_inventory_list)

    review = inv_sub.add_parser("review", help="confirm the annual review")
    review.add_argument("--id", required=True)
    review.add_argument("--date", required=True)
    _add_store(review)
    review.set_defaults(func=cmd_inventory_review)

    retire = inv_sub.add_parser("retire", help="retire a record")
    retire.add_argument("--id", required=True)
    retire.add_argument("--reason")
    _add_store(retire)
    retire.set_defaults(func=cmd_inventory_retire)

    for direction in ("import", "export"):
        ex = inv_sub.add_parser(direction, help=f"{direction} the inventory as CSV")
        ex.add_argument("path")
        _add_store(ex)
        ex.set_defaults(func=cmd_inventory_exchange, direction=direction)

    risk = sub.add_parser("risk", help="risk register operations")
    risk_sub = risk.add_subparsers(dest="subcommand", required=True)

    link = risk_sub.add_parser("link", help="open a register entry against a record")
    link.add_argument("--euca", required=True, help="inventory record id")
    link.add_argument("--description", default="")
    link.add_argument("--inherent-likelihood", dest="inherent_likelihood", type=int, required=True)
    link.add_argument("--inherent-severity", dest="inherent_severity", type=int, required=True)
    link.add_argument("--residual-likelihood", dest="residual_likelihood", type=int, required=True)
    link.add_argument("--residual-severity", dest="residual_severity", type=int, required=True)
    link.add_argument("--opened", help="opening date (default: today)")
    _add_store(link)
    link.set_defaults(func=cmd_risk_link)

    close = risk_sub.add_parser("close", help="close a register entry")
    close.add_argument("--risk-id", dest="risk_id", required=True)
    close.add_argument("--date", required=True)
    _add_store(close)
    close.set_defaults(func=cmd_risk_close)

    kpi = sub.add_parser("kpi", help="governance aggregates over the store")
    kpi.add_argument("--view", choices=["snapshot", "overdue", "unregistered", "concentration"],
                     default="snapshot")
    kpi.add_argument("--as-of", dest="as_of", metavar="DATE")
    kpi.add_argument("--top-k", dest="top_k", type=int, default=7)
    kpi.add_argument("--include-retired", dest="include_retired", action="store_true")
    _add_store(kpi)
    _add_format(kpi)
    kpi.set_defaults(func=cmd_kpi)

    diff = sub.add_parser("diff", help="compare a workbook against its baseline")
    diff.add_argument("baseline")
    diff.add_argument("current")
    _add_format(diff)
    diff.set_defaults(func=cmd_diff)

    serve = sub.add_parser("serve", help="run the local HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8876)
    serve.add_argument("--ui-dir", dest="ui_dir", help="built frontend to serve at /")
    _add_store(serve)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
