# The relative class number from first Bernoulli numbers
#
# h^- at level m is the corrected product of -B_1(chi)/2 over odd
# characters, computed in exact root-of-unity arithmetic (one norm per
# conjugacy orbit). A floating digamma series for L(1, chi) serves as an
# independent sanity net; the exact layer never consumes it.

from distlab import h_minus, l_value_crosscheck, odd_characters

print(f"{'m':>4} {'odd chars':>9} {'h-':>6}")
for m in (3, 4, 5, 8, 12, 23, 40, 105):
    print(f"{m:>4} {len(odd_characters(m)):>9} {h_minus(m):>6}")

# h-(23) = 3 is the first prime level with class number above 1;
# the growth after that is steep
assert h_minus(23) == 3

# ---------------------------------------------------------------
# float cross-check: |L(1, chi)| two ways

m = 23
rows = l_value_crosscheck(m)
print(f"\nlevel {m}: {len(rows)} odd characters")
worst = max(r["rel_err"] for r in rows)
for r in rows[:3]:
    print(
        f"  conductor {r['conductor']}: digamma {r['l_value']:.12f}"
        f"  bernoulli {r['bernoulli_route']:.12f}"
    )
print(f"  worst relative error across all characters: {worst:.2e}")
assert all(r["ok"] for r in rows)
