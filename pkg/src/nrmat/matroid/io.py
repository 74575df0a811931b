"""Line-oriented `.mtd` matroid files.

    name <ident>
    ground <labels...>
    rank <r>
    bases
    <one basis per line; '-' is the empty basis>
    end
"""

from __future__ import annotations

import re

from .core import Matroid, basis_exchange_violation

_IDENT = re.compile(r"^[^\s#]+$")


class MtdError(ValueError):
    pass


def format_mtd(M: Matroid) -> str:
    for e in M.ground:
        if not _IDENT.match(str(e)):
            raise MtdError(f"label {e!r} cannot be written")
    lines = [f"name {M.name or 'M'}", "ground " + " ".join(map(str, M.ground)),
             f"rank {M.rank}", "bases"]
    for b in sorted(M.bases):
        lines.append(" ".join(str(e) for k, e in enumerate(M.ground) if b >> k & 1) or "-")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_mtd(text: str, validate=False) -> Matroid:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]

    def expect(k, key):
        if k >= len(lines):
            raise MtdError(f"missing '{key}' line")
        head, _, rest = lines[k].partition(" ")
        if head != key:
            raise MtdError(f"line {k + 1}: expected '{key}', got {lines[k]!r}")
        return rest.strip()

    name = expect(0, "name")
    if not _IDENT.match(name):
        raise MtdError("bad name")
    ground = expect(1, "ground").split()
    if not ground or len(set(ground)) != len(ground):
        raise MtdError("ground labels must be nonempty and distinct")
    rank_s = expect(2, "rank")
    if not rank_s.isdigit():
        raise MtdError(f"bad rank {rank_s!r}")
    rank = int(rank_s)
    if expect(3, "bases"):
        raise MtdError("'bases' takes no arguments")
    index = {e: k for k, e in enumerate(ground)}
    masks = set()
    k = 4
    while k < len(lines) and lines[k] != "end":
        labs = lines[k].split() if lines[k] != "-" else []
        if len(labs) != rank or len(set(labs)) != rank:
            raise MtdError(f"line {k + 1}: basis of wrong size")
        m = 0
        for e in labs:
            if e not in index:
                raise MtdError(f"line {k + 1}: unknown label {e!r}")
            m |= 1 << index[e]
        if m in masks:
            raise MtdError(f"line {k + 1}: repeated basis")
        masks.add(m)
        k += 1
    if k >= len(lines):
        raise MtdError("missing 'end'")
    if k != len(lines) - 1:
        raise MtdError("text after 'end'")
    if not masks:
        raise MtdError("no bases")
    M = Matroid._raw(ground, masks, rank, name)
    if validate:
        bad = basis_exchange_violation(M)
        if bad:
            raise MtdError(f"basis exchange fails: {bad}")
    return M


def read_mtd(path, validate=False) -> Matroid:
    with open(path) as fh:
        return parse_mtd(fh.read(), validate)


def write_mtd(M: Matroid, path):
    with open(path, "w") as fh:
        fh.write(format_mtd(M))
