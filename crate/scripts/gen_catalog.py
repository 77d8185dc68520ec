#!/usr/bin/env python3
"""Regenerate the shipped group catalog (catalog/*.json)."""
import itertools
import json
import pathlib
import sys

OUT = pathlib.Path(__file__).resolve().parent.parent / "catalog"


def cycles(images):
    """Format a 0-based image list as 1-based canonical cycle notation."""
    n = len(images)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start] or images[start] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = images[x]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def from_cycles(cycs, n):
    img = list(range(n))
    for c in cycs:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return img


def symmetric(n):
    return n, [from_cycles([list(range(1, n + 1))], n), from_cycles([[1, 2]], n)]


def alternating(n):
    if n == 4:
        return 4, [from_cycles([[1, 2, 3]], 4), from_cycles([[2, 3, 4]], 4)]
    if n == 6:
        return 6, [from_cycles([[1, 2, 3, 4, 5]], 6), from_cycles([[4, 5, 6]], 6)]
    if n % 2 == 1:
        return n, [from_cycles([list(range(1, n + 1))], n), from_cycles([[1, 2, 3]], n)]
    return n, [from_cycles([list(range(2, n + 1))], n), from_cycles([[1, 2, 3]], n)]


def dihedral(order):
    n = order // 2
    rot = from_cycles([list(range(1, n + 1))], n)
    refl = [n - 1 - i for i in range(n)]
    return n, [rot, refl]


def cyclic(n):
    return n, [from_cycles([list(range(1, n + 1))], n)]


def matrix_group(q, mats):
    """Faithful action of 2x2 matrices over F_q on the nonzero vectors of F_q^2."""
    vecs = [v for v in itertools.product(range(q), repeat=2) if v != (0, 0)]
    idx = {v: i for i, v in enumerate(vecs)}
    gens = []
    for (a, b), (c, d) in mats:
        # row vector times matrix
        gens.append([idx[((x * a + y * c) % q, (x * b + y * d) % q)] for x, y in vecs])
    return len(vecs), gens


def quaternion():
    # elements: (sign, unit) with unit in 1,i,j,k; regular action by right multiplication
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    idx = {e: i for i, e in enumerate(elems)}

    def mul(x, y):
        s, u = table[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    gens = [[idx[mul(e, g)] for e in elems] for g in [(1, "i"), (1, "j")]]
    return 8, gens


def direct(a, b):
    na, ga = a
    nb, gb = b
    gens = [g + list(range(na, na + nb)) for g in ga]
    gens += [list(range(na)) + [x + na for x in g] for g in gb]
    return na + nb, gens


def entry(name, group, tags=None):
    degree, gens = group
    rec = {"name": name, "degree": degree, "generators": [cycles(g) for g in gens]}
    if tags:
        rec["tags"] = tags
    return rec


def main():
    entries = []
    for n in range(3, 8):
        entries.append(entry(f"s{n}", symmetric(n)))
    for n in range(4, 8):
        entries.append(entry(f"a{n}", alternating(n)))
    for order in (8, 10, 12, 16, 18, 20, 24, 32):
        entries.append(entry(f"d{order}", dihedral(order)))
    entries.append(entry("q8", quaternion()))
    s_mat = ((0, 2), (1, 0))
    t_mat = ((1, 1), (0, 1))
    entries.append(entry("sl2-3", matrix_group(3, [s_mat, t_mat])))
    entries.append(entry("gl2-3", matrix_group(3, [s_mat, t_mat, ((2, 0), (0, 1))])))
    entries.append(entry("sl2-5", matrix_group(5, [((0, 4), (1, 0)), t_mat])))
    entries.append(entry("c2-wr-c2-wr-c2", (8, [
        from_cycles([[1, 2]], 8),
        from_cycles([[1, 3], [2, 4]], 8),
        from_cycles([[1, 5], [2, 6], [3, 7], [4, 8]], 8),
    ])))
    entries.append(entry("f20", (5, [from_cycles([[1, 2, 3, 4, 5]], 5), from_cycles([[2, 3, 5, 4]], 5)])))
    entries.append(entry("m11", (11, [
        from_cycles([list(range(1, 12))], 11),
        from_cycles([[3, 7, 11, 8], [4, 10, 5, 6]], 11),
    ])))
    entries.append(entry("a6-c4-example", (10, [
        from_cycles([[1, 2, 3, 4, 5]], 10),
        from_cycles([[4, 5, 6]], 10),
        from_cycles([[5, 6], [7, 8, 9, 10]], 10),
    ]), tags=["counterexample"]))
    products = [
        ("s3xc3", symmetric(3), cyclic(3)),
        ("s3xs3", symmetric(3), symmetric(3)),
        ("a4xc3", alternating(4), cyclic(3)),
        ("d8xs3", dihedral(8), symmetric(3)),
        ("sl2-3xc3", matrix_group(3, [s_mat, t_mat]), cyclic(3)),
        ("s4xs3", symmetric(4), symmetric(3)),
        ("a5xc3", alternating(5), cyclic(3)),
        ("a5xa5", alternating(5), alternating(5)),
    ]
    for name, a, b in products:
        entries.append(entry(name, direct(a, b), tags=["direct-product"]))

    OUT.mkdir(exist_ok=True)
    for rec in entries:
        (OUT / f"{rec['name']}.json").write_text(json.dumps(rec, indent=2) + "\n")
    print(f"wrote {len(entries)} group files to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
