#!/usr/bin/env python3
"""Write an offline b-file for A090867.

A090867(n) is the number of parts in all partitions of n into odd parts
minus the number of parts in all partitions of n into distinct parts.
Both totals come from a knapsack over part values that tracks
(number of partitions, total number of parts) per size.

The published b-file can replace this output verbatim: the CLI `oeis`
subcommand accepts either.

Usage: gen_oeis_fixture.py [N] > crates/core/fixtures/oeis/b090867.txt
"""

import sys


def part_totals(n_max, values, max_mult):
    count = [0] * (n_max + 1)
    parts = [0] * (n_max + 1)
    count[0] = 1
    for v in values:
        new_count = count[:]
        new_parts = parts[:]
        for s in range(n_max + 1):
            if count[s] == 0:
                continue
            k = 1
            while s + k * v <= n_max and k <= max_mult:
                new_count[s + k * v] += count[s]
                new_parts[s + k * v] += parts[s] + k * count[s]
                k += 1
        count, parts = new_count, new_parts
    return parts


def main():
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 100
    odd = part_totals(n_max, range(1, n_max + 1, 2), n_max)
    distinct = part_totals(n_max, range(1, n_max + 1), 1)
    print("# A090867: parts in partitions into odd parts minus parts in partitions into distinct parts")
    print(f"# generated by scripts/gen_oeis_fixture.py for n = 0..{n_max}")
    for n in range(n_max + 1):
        print(n, odd[n] - distinct[n])


if __name__ == "__main__":
    main()
