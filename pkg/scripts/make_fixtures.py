#!/usr/bin/env python3
"""Regenerate the group and subgroup files under fixtures/."""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from vagrowth.group import Generator, GroupElement, VAGroupData, dump_group, validate

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def gen(vec, coset, weight, name):
    return Generator(GroupElement(tuple(vec), coset), weight, name)


def mk(n, d, delta, tau, cocycle):
    return VAGroupData(
        n=n,
        d=d,
        delta=tuple(tuple(tuple(row) for row in m) for m in delta),
        tau=tuple(tuple(row) for row in tau),
        cocycle=tuple(tuple(tuple(v) for v in row) for row in cocycle),
    )


def z_line(weight):
    data = mk(1, 1, [[[1]]], [[0]], [[[0]]])
    gens = [gen([1], 0, weight, "a"), gen([-1], 0, weight, "a_inv")]
    return data, gens


def z2():
    data = mk(2, 1, [[[1, 0], [0, 1]]], [[0]], [[[0, 0]]])
    gens = [
        gen([1, 0], 0, 1, "a"),
        gen([-1, 0], 0, 1, "a_inv"),
        gen([0, 1], 0, 1, "b"),
        gen([0, -1], 0, 1, "b_inv"),
    ]
    return data, gens


def dinf():
    data = mk(
        1,
        2,
        [[[1]], [[-1]]],
        [[0, 1], [1, 0]],
        [[[0], [0]], [[0], [0]]],
    )
    gens = [gen([1], 0, 1, "a"), gen([-1], 0, 1, "a_inv"), gen([0], 1, 1, "b")]
    return data, gens


def klein():
    # fundamental group of the Klein bottle: b a b^-1 = a^-1, Z^2 = <a, b^2>
    data = mk(
        2,
        2,
        [[[1, 0], [0, 1]], [[-1, 0], [0, 1]]],
        [[0, 1], [1, 0]],
        [[[0, 0], [0, 0]], [[0, 0], [0, 1]]],
    )
    gens = [
        gen([1, 0], 0, 1, "a"),
        gen([-1, 0], 0, 1, "a_inv"),
        gen([0, 0], 1, 1, "b"),
        gen([0, -1], 1, 1, "b_inv"),
    ]
    return data, gens


def swap():
    # Z^2 x| C2 with the involution exchanging coordinates
    data = mk(
        2,
        2,
        [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
        [[0, 1], [1, 0]],
        [[[0, 0], [0, 0]], [[0, 0], [0, 0]]],
    )
    gens = [
        gen([1, 0], 0, 1, "a"),
        gen([-1, 0], 0, 1, "a_inv"),
        gen([0, 1], 0, 1, "b"),
        gen([0, -1], 0, 1, "b_inv"),
        gen([0, 0], 1, 1, "s"),
    ]
    return data, gens


def zxc2():
    data = mk(
        1,
        2,
        [[[1]], [[1]]],
        [[0, 1], [1, 0]],
        [[[0], [0]], [[0], [0]]],
    )
    gens = [gen([1], 0, 1, "a"), gen([-1], 0, 1, "a_inv"), gen([0], 1, 1, "c")]
    return data, gens


GROUPS = {
    "z": z_line(1),
    "z_w2": z_line(2),
    "z2": z2(),
    "dinf": dinf(),
    "klein": klein(),
    "swap": swap(),
    "zxc2": zxc2(),
}

SUBGROUPS = {
    "dinf_a": [{"vector": [1], "coset": 0}],
    "dinf_b": [{"vector": [0], "coset": 1}],
    "dinf_a2_b": [{"vector": [2], "coset": 0}, {"vector": [0], "coset": 1}],
    "dinf_full": [{"vector": [1], "coset": 0}, {"vector": [0], "coset": 1}],
    "dinf_trivial": [{"vector": [0], "coset": 0}],
    "z2_diag": [{"vector": [1, 1], "coset": 0}],
    "klein_a_b2": [{"vector": [1, 0], "coset": 0}, {"vector": [0, 1], "coset": 0}],
}


def main():
    FIXTURES.mkdir(exist_ok=True)
    for name, (data, gens) in GROUPS.items():
        errs = validate(data, gens)
        if errs:
            raise SystemExit(f"fixture {name} is invalid: {errs}")
        path = FIXTURES / f"{name}.json"
        path.write_text(json.dumps(dump_group(data, gens), indent=1) + "\n")
        print(f"wrote {path}")
    for name, gens in SUBGROUPS.items():
        path = FIXTURES / f"{name}.json"
        path.write_text(json.dumps({"generators": gens}, indent=1) + "\n")
        print(f"wrote {path}")
    # a deliberately broken group file for the validate error path
    data, gens = dinf()
    raw = dump_group(data, gens)
    raw["tau"] = [[0, 1], [1, 1]]
    (FIXTURES / "broken_tau.json").write_text(json.dumps(raw, indent=1) + "\n")
    print("wrote broken_tau.json")


if __name__ == "__main__":
    main()
