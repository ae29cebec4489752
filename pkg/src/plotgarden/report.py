"""Law registry, structured law reports, and plain-text rendering.

Every checked statement carries a stable identifier.  A report is plain
JSON-ready data with sorted keys so that two runs over the same
instances produce byte-identical output.
"""

import json

FORMAT_VERSION = 1

REGISTRY = {
    "LAW.210C": "box preserves all intersections and diamond all unions "
                "exactly when the pair comes from a transition relation",
    "LAW.220G": "lifted box and diamond satisfy the bed laws",
    "LAW.220J": "the valuation preimage is lax over both lifted operators",
    "LAW.230D": "frame morphism, lax operator laws, and the strict square "
                "hold for the garden morphism",
    "LAW.240B": "every enumerated root/stalk/bloom triple satisfies the "
                "flower conditions",
    "LAW.240E": "pruning stops at a healthy set containing every healthy set",
    "LAW.240G": "the harvest image of every surviving flower is a flower",
    "LAW.240H": "the harvest image map preserves transitions",
    "LAW.240I": "harvest images of survivors survive in the target harvest",
    "LAW.240J": "the induced map between harvests is lentile",
    "LAW.250A": "the covering is lax over the harvest-induced operators",
    "LAW.250C": "the unit square commutes around the tested garden morphism",
    "LAW.250F": "the unit preserves transitions",
    "LAW.250G": "unit images are flowers forming a healthy subset of the "
                "harvest",
    "LAW.250H": "the unit map is lentile",
    "LAW.250J": "harvested stalks and blooms are fixed by the covering "
                "round trip",
    "LAW.250K": "the unit of a harvest rewrites each flower through the "
                "covering",
    "LAW.250L": "the transposed unit composites are identities both ways",
    "LAW.250M.LE": "lifted operators sit below the operators lifted again "
                   "after a harvest round trip",
    "LAW.250M.GE": "operators lifted after a harvest round trip sit below "
                   "the original lifted operators",
    "LAW.250N.R": "naturality: node values commute with the point map",
    "LAW.250N.S": "naturality: stalks transfer through the right adjoint",
    "LAW.250N.B": "naturality: blooms transfer through the double inverse "
                  "image",
    "ORACLE.FILTERS": "filter enumeration agrees with the exhaustive "
                      "upward-closed scan",
    "ORACLE.LENS": "closure, interior, saturation, and lens agree with "
                   "their pointwise definitions",
    "ORACLE.FLOWERS": "flower enumeration agrees with the definition-level "
                      "triple scan",
    "ORACLE.HARVEST": "worklist pruning agrees with full-rescan pruning",
    "INTERNAL": "no internal postcondition fails while running the suite",
}


def law_statement(law_id):
    return REGISTRY.get(law_id, "")


def jsonable(value):
    """Rebuild a value out of plain JSON types, deterministically."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((jsonable(v) for v in value), key=repr)
    return repr(value)


def law_report(records, instance=None):
    """Assemble the versioned report for one instance's records."""
    rows = [{"id": r["id"],
             "statement": law_statement(r["id"]),
             "passed": bool(r["passed"]),
             "witness": jsonable(r.get("witness"))}
            for r in records]
    return {
        "format_version": FORMAT_VERSION,
        "instance": jsonable(instance or {}),
        "records": rows,
        "passed": all(r["passed"] for r in rows),
    }


def merge_reports(reports):
    """Combine per-instance reports into one run-level report."""
    return {
        "format_version": FORMAT_VERSION,
        "runs": [r for r in reports],
        "passed": all(r["passed"] for r in reports),
    }


def to_json(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_records(records):
    """One fixed-width line per record: verdict, id, statement or witness."""
    lines = []
    for r in records:
        mark = "PASS" if r["passed"] else "FAIL"
        line = "%s  %-12s  %s" % (mark, r["id"], law_statement(r["id"]))
        if not r["passed"] and r.get("witness") is not None:
            line += "  [witness: %s]" % (jsonable(r["witness"]),)
        lines.append(line)
    return "\n".join(lines)
