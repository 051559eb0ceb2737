"""Deterministic text formats: CSV tables and series dumps."""

from . import series as fs

# Parameters recorded in dump headers, in this order.
PARAM_FIELDS = ("r", "K", "a", "alpha", "beta", "d", "delta", "gamma_0", "m", "n", "bracket_order")


def fmt_float(v):
    """Shortest decimal that round-trips to the same double (at most 17
    significant digits); integral values drop the trailing ".0"."""
    v = float(v)
    if v == 0.0:
        return "0"
    text = repr(v)
    if text.endswith(".0"):
        text = text[:-2]
    return text


def csv_text(header, columns):
    """CSV with a header row and LF endings; ``columns`` are equal-length sequences."""
    lengths = {len(c) for c in columns}
    if len(lengths) > 1:
        raise ValueError(f"column lengths differ: {sorted(lengths)}")
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(fmt_float(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_csv(text):
    """Inverse of :func:`csv_text`: returns (header, list of float rows)."""
    lines = text.strip("\n").split("\n")
    header = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    for row in rows:
        if len(row) != len(header):
            raise ValueError("row length does not match header")
    return header, rows


def params_header(params, extra=()):
    lines = []
    for name in PARAM_FIELDS:
        lines.append(f"# {name} = {fmt_float(getattr(params, name))}")
    for key, value in extra:
        lines.append(f"# {key} = {value}")
    return "\n".join(lines) + "\n"


def solution_dump(sol):
    """Every x_k and y_k of an HPM solution, grouped by level."""
    out = ["# fracrm HPM series dump\n", params_header(sol.params, [("order", sol.order)])]
    for k, (xk, yk) in enumerate(zip(sol.x_terms, sol.y_terms)):
        out.append(f"## x {k}\n")
        out.append(fs.dumps(xk))
        out.append(f"## y {k}\n")
        out.append(fs.dumps(yk))
    return "".join(out)


def parse_solution_dump(text):
    """Read a dump back into ({"x": [...], "y": [...]} of term dicts, params dict)."""
    params = {}
    groups = {"x": [], "y": []}
    current = None
    for line in text.splitlines():
        if line.startswith("## "):
            _, var, k = line.split()
            current = {}
            groups[var].append(current)
            if len(groups[var]) != int(k) + 1:
                raise ValueError(f"level {k} of {var} out of order")
        elif line.startswith("# ") and "=" in line:
            key, value = line[2:].split("=", 1)
            params[key.strip()] = value.strip()
        elif line.strip() and not line.startswith("#"):
            i, j, c = line.split()
            current[(int(i), int(j))] = float(c)
    return groups, params
