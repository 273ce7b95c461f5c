"""Regenerate src/structconst/data/types/*.txt.

Cartan matrices follow Bourbaki numbering with a_ij = <alpha_i, alpha_j^vee>.
Positive roots are listed in simple-root coordinates and fundamental
(co)weights as rows of the inverse Cartan matrix, both for the named type.
"""

from pathlib import Path

from structconst.rootdata import _inverse, cartan_matrix, root_datum

OUT = Path(__file__).resolve().parents[1] / "src" / "structconst" / "data" / "types"
TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "B5", "B6", "C2", "C3", "C4", "C5", "C6",
         "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2"]


def table(label: str) -> str:
    a = cartan_matrix(label)
    d = root_datum(label + ":sc") if label[0] in "AC" else root_datum(label)
    # positive roots of the named type are the positive coroots of the datum
    roots = sorted((d.root_coefficients_of_coroot(c) for c in d.positive_coroots), key=lambda r: (sum(r), r))
    lines = [f"type {label}", f"rank {len(a)}", "cartan"]
    lines += [" ".join(f"{x:2d}" for x in row) for row in a]
    lines.append(f"positive_roots  # {len(roots)} rows")
    lines += [" ".join(str(x) for x in r) for r in roots]
    lines.append("fundamental_coweights")
    lines += [" ".join(str(x) for x in row) for row in _inverse(a)]
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for t in TYPES:
        (OUT / f"{t}.txt").write_text(table(t))
