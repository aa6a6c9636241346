"""Writes the tame list for simple factors of rank <= N as descriptor strings.

Built by hand from the classification, independently of the Rust classifier,
and checked in as crates/core/tests/fixtures/tame_table_rank8.txt.

    python3 python/gen_tame_table.py 8 > crates/core/tests/fixtures/tame_table_rank8.txt
"""
import sys

ORDER = "ABCDEFG"


def fund(n, *idx):
    m = [0] * n
    for i in idx:
        m[i - 1] += 1
    return m


def canon(fam, n, marks):
    """Low-rank coincidences, matching the descriptor conventions."""
    if fam in "BC" and n == 1:
        return [("A", 1, marks)]
    if fam == "D" and n == 2:
        return [("A", 1, [marks[0]]), ("A", 1, [marks[1]])]
    if fam == "D" and n == 3:
        return [("A", 3, [marks[1], marks[0], marks[2]])]
    if fam == "B" and n == 2:
        return [("C", 2, [marks[1], marks[0]])]
    return [(fam, n, marks)]


def show(factors):
    factors = [f for f in factors if any(f[2])]
    factors.sort(key=lambda f: (ORDER.index(f[0]), f[1], f[2]))
    types = "x".join(f"{f[0]}{f[1]}" for f in factors)
    marks = "|".join(",".join(map(str, f[2])) for f in factors)
    return f"{types}[{marks}]"


def simple_modules(N):
    out = []
    # SL_{n+1}: natural, dual, Λ², its dual, S², its dual, adjoint
    for n in range(1, N + 1):
        ws = [fund(n, 1), fund(n, n), fund(n, 1, 1), fund(n, n, n), fund(n, 1, n)]
        if n >= 3:
            ws += [fund(n, 2), fund(n, n - 1)]
        out += [("A", n, w) for w in ws]
    # SO_m natural, and spinors for m <= 10
    for m in range(3, 2 * N + 2):
        if m % 2:
            n = (m - 1) // 2
            if n > N:
                continue
            out.append(("B", n, fund(n, 1)))
            if m <= 10:
                out.append(("B", n, fund(n, n)))
        else:
            n = m // 2
            if n > N:
                continue
            out.append(("D", n, fund(n, 1)))
            if m <= 10:
                out += [("D", n, fund(n, n - 1)), ("D", n, fund(n, n))]
    # Sp_{2n}: natural, Λ²₀, S² (adjoint)
    for n in range(2, N + 1):
        out += [("C", n, fund(n, 1)), ("C", n, fund(n, 2)), ("C", n, fund(n, 1, 1))]
    if N >= 6:
        out += [("E", 6, fund(6, 1)), ("E", 6, fund(6, 5))]
    if N >= 4:
        out.append(("F", 4, fund(4, 1)))
    if N >= 2:
        out.append(("G", 2, fund(2, 1)))
    return out


def product_modules(N):
    # SL_m x SL_n, SL_m x Sp_2n, Sp_2m x Sp_2n on the tensor product of naturals (either dual for SL)
    nat = []
    for n in range(1, N + 1):
        nat += [("A", n, fund(n, 1)), ("A", n, fund(n, n))]
    for n in range(2, N + 1):
        nat.append(("C", n, fund(n, 1)))
    out = set()
    for i, a in enumerate(nat):
        for b in nat[i:]:
            out.add(show([a, b]))
    return out


def main():
    N = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    rows = set(product_modules(N))
    for fam, n, w in simple_modules(N):
        fs = canon(fam, n, w)
        if sum(sum(f[2]) for f in fs) == 0:
            continue
        if fam == "A" and n == 1 and w == [0]:
            continue
        rows.add(show(fs))
    for r in sorted(rows):
        print(r)


if __name__ == "__main__":
    main()
