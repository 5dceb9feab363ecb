"""Recompute, with the independent brute-force oracle in tests/oracle.py, the values frozen in the tests."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

import oracle  # noqa: E402


def main():
    for p in (2, 3):
        alg = oracle.all_associative(p)
        classes = oracle.orbit_partition(alg, p)
        print(f"GF({p}): {len(alg)} associative MSCs, {len(classes)} nonzero classes")
        print("  orbit sizes:", [size for _, size in classes])
        print("  with a compatible nondegenerate form:", sum(oracle.has_frobenius_form(m, p) for m in alg))
        print("  with an ideal-free functional:", sum(oracle.has_ideal_free_functional(m, p) for m in alg))
    print("stabilizer of (1,0,0,0;0,0,1,0) over GF(2):", oracle.stabilizer((1, 0, 0, 0, 0, 0, 1, 0), 2))
    print("change_basis((3,0,0,1;0,3,3,0), (1,0;0,2)) over GF(5):",
          oracle.change_basis((3, 0, 0, 1, 0, 3, 3, 0), (1, 0, 0, 2), 5))


if __name__ == "__main__":
    main()
