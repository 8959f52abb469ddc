"""Count tables and their JSON / CSV / text renderings.

All counts are serialized as decimal strings so that downstream tools
never round them through 53-bit floats.
"""

import csv
import io
import json
from dataclasses import dataclass

from .simplex import faces

__all__ = [
    "CountTable",
    "table_from_partition",
    "table_from_counts",
    "to_json",
    "from_json",
    "to_csv",
    "from_csv",
    "to_text",
    "functionals_to_json",
    "functionals_to_csv",
    "functionals_to_text",
]


@dataclass
class FaceRow:
    face_dim: int
    num_faces: int
    per_face_counts_by_order: dict | None  # order -> count; None if faces differ
    dimension_total: int
    dimension_total_by_order: dict

    @property
    def per_face_total(self):
        if self.per_face_counts_by_order is None:
            return None
        return sum(self.per_face_counts_by_order.values())


@dataclass
class CountTable:
    dimension: int
    degree: int
    profile: tuple
    faces: list  # FaceRow per face dimension 0..n
    grand_total: int


def table_from_partition(report):
    prof = report.profile
    n = prof.n
    rows = []
    for d in range(n + 1):
        by_order = {}
        for (face, t), c in report.per_face_order_counts.items():
            if face.dim == d:
                by_order[t] = by_order.get(t, 0) + c
        rows.append(FaceRow(d, len(faces(n, d)), report.uniform_face_counts(d),
                            report.per_dim_totals[d], dict(sorted(by_order.items()))))
    return CountTable(n, prof.degree, prof.orders, rows, report.grand_total)


def table_from_counts(profile, face_counts):
    rows = []
    for fc in face_counts:
        per = dict(sorted(fc.per_order.items()))
        rows.append(FaceRow(fc.face_dim, fc.num_faces, per, fc.total,
                            {t: fc.num_faces * c for t, c in per.items()}))
    grand = sum(r.dimension_total for r in rows)
    return CountTable(profile.n, profile.degree, profile.orders, rows, grand)


def _to_dict(table):
    return {
        "dimension": table.dimension,
        "degree": table.degree,
        "profile": list(table.profile),
        "faces": [
            {
                "face_dim": row.face_dim,
                "num_faces": row.num_faces,
                "per_face_counts_by_order": None if row.per_face_counts_by_order is None
                else {str(t): str(c) for t, c in row.per_face_counts_by_order.items()},
                "per_face_total": None if row.per_face_total is None else str(row.per_face_total),
                "dimension_total": str(row.dimension_total),
                "dimension_total_by_order": {
                    str(t): str(c) for t, c in row.dimension_total_by_order.items()
                },
            }
            for row in table.faces
        ],
        "grand_total": str(table.grand_total),
    }


def to_json(table):
    return json.dumps(_to_dict(table), indent=2) + "\n"


def from_json(text):
    data = json.loads(text)
    rows = []
    for f in data["faces"]:
        per = f["per_face_counts_by_order"]
        rows.append(FaceRow(
            int(f["face_dim"]),
            int(f["num_faces"]),
            None if per is None else {int(t): int(c) for t, c in per.items()},
            int(f["dimension_total"]),
            {int(t): int(c) for t, c in f.get("dimension_total_by_order", {}).items()},
        ))
    return CountTable(int(data["dimension"]), int(data["degree"]),
                      tuple(int(r) for r in data["profile"]), rows, int(data["grand_total"]))


CSV_COLUMNS = ["face_dim", "order", "per_face", "num_faces", "total"]


def to_csv(table):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in table.faces:
        for t, total in row.dimension_total_by_order.items():
            per = "" if row.per_face_counts_by_order is None else str(row.per_face_counts_by_order[t])
            writer.writerow([row.face_dim, t, per, row.num_faces, str(total)])
    return buf.getvalue()


def from_csv(text, dimension, degree, profile):
    """Rebuild a table from CSV rows; the header fields are not in the CSV."""
    rows = {}
    for rec in csv.DictReader(io.StringIO(text)):
        d = int(rec["face_dim"])
        row = rows.setdefault(d, FaceRow(d, int(rec["num_faces"]), {}, 0, {}))
        t, total = int(rec["order"]), int(rec["total"])
        row.dimension_total_by_order[t] = total
        row.dimension_total += total
        if rec["per_face"] == "":
            row.per_face_counts_by_order = None
        elif row.per_face_counts_by_order is not None:
            row.per_face_counts_by_order[t] = int(rec["per_face"])
    ordered = [rows[d] for d in sorted(rows)]
    return CountTable(dimension, degree, tuple(profile), ordered,
                      sum(r.dimension_total for r in ordered))


def to_text(table):
    lines = [
        f"dimension {table.dimension}  degree {table.degree}  "
        f"profile ({', '.join(map(str, table.profile))})",
        f"{'face_dim':>8} {'faces':>6} {'order':>6} {'per_face':>10} {'total':>10}",
    ]
    for row in table.faces:
        for t, total in row.dimension_total_by_order.items():
            per = "varies" if row.per_face_counts_by_order is None \
                else str(row.per_face_counts_by_order[t])
            lines.append(f"{row.face_dim:>8} {row.num_faces:>6} {t:>6} {per:>10} {total:>10}")
        lines.append(f"dim {row.face_dim} total {row.dimension_total}")
    lines.append(f"total {table.grand_total}")
    return "\n".join(lines) + "\n"


def functionals_to_json(element):
    prof = element.profile
    data = {
        "dimension": prof.n,
        "degree": prof.degree,
        "profile": list(prof.orders),
        "functionals": [f.describe() for f in element.functionals],
    }
    return json.dumps(data, indent=1) + "\n"


def functionals_to_csv(element):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["owner", "order", "direction_multiorder", "point", "source_index"])
    for f in element.functionals:
        desc = f.describe()
        writer.writerow([
            " ".join(map(str, desc["owner"])),
            desc["order"],
            " ".join(map(str, desc["direction_multiorder"])),
            " ".join(desc["point"]),
            " ".join(map(str, desc["source_index"])),
        ])
    return buf.getvalue()


def functionals_to_text(element):
    lines = []
    for f in element.functionals:
        lines.append(
            f"owner {f.owner} order {f.order} dirs {list(f.direction_multiorder)} "
            f"at {f.point}"
        )
    lines.append(f"total {len(element.functionals)}")
    return "\n".join(lines) + "\n"
