"""Freeze the signs of the two +- product identities by brute force.

For each admissible (n, i, k) the block determinant and the product of the
two minors are expanded over permutations at a structured point (free
entries drawn from a seeded RNG) and the ratio is recorded. Writes
tests/data/sign_tables.json.
"""

import json
import random
import sys
from pathlib import Path


sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from oracles import leibniz_det, sub  # noqa: E402

N_MAX = 6


def structured(n, allowed, seed):
    rng = random.Random(seed)
    return [[rng.randint(1, 10**6) if allowed(i, j) else 0 for j in range(1, n + 1)]
            for i in range(1, n + 1)]


def ratio(lhs, rhs):
    assert rhs != 0 and lhs in (rhs, -rhs), (lhs, rhs)
    return 1 if lhs == rhs else -1


def main():
    table = {"Rminus": {}, "Rplus": {}}
    for n in range(1, N_MAX + 1):
        x = structured(n, lambda i, j: True, 2)
        lower = structured(n, lambda i, j: j >= n - i + 1, 1000)
        upper = structured(n, lambda i, j: j <= n - i + 1, 5000)
        for i in range(1, n + 1):
            ip = n - i + 1
            for k in range(1, n + 1):
                key = f"{n},{i},{k}"
                kp = n - k + 1
                if ip < k:
                    block = sub(x, range(i, n + 1), range(1, k + 1)) + \
                        sub(upper, range(n - (k - ip) + 1, n + 1), range(1, k + 1))
                    d = kp + ip
                    rhs = leibniz_det(sub(x, range(i, n + 1), range(k - ip + 1, k + 1))) * \
                        leibniz_det(sub(upper, range(d, n + 1), range(1, n - d + 2)))
                    table["Rminus"][key] = ratio(leibniz_det(block), rhs)
                elif ip > k:
                    block = [zr + xr for zr, xr in zip(sub(lower, range(i, n + 1), range(1, ip - k + 1)),
                                                       sub(x, range(i, n + 1), range(1, k + 1)))]
                    d = i + k
                    rhs = leibniz_det(sub(lower, range(d, n + 1), range(1, n - d + 2))) * \
                        leibniz_det(sub(x, range(i, i + k), range(1, k + 1)))
                    table["Rplus"][key] = ratio(leibniz_det(block), rhs)
    out = Path(__file__).resolve().parents[1] / "tests" / "data" / "sign_tables.json"
    out.write_text(json.dumps(table, indent=1, sort_keys=True) + "\n")
    print(f"wrote {out}: {len(table['Rminus'])} Rminus, {len(table['Rplus'])} Rplus signs")


if __name__ == "__main__":
    main()
