# The rational smoothing operator and its determinant products
#
# A block-diagonal rational map phi carries the difference complex onto
# the average complex. Its alternating determinant product factors over
# the primes of the level, and each local factor is an inverse character
# product that this script recomputes from exact root-of-unity
# arithmetic.

from distlab import (
    character_product_full,
    character_product_minus,
    det_check,
    intertwine_check,
    smoothing_det,
    smoothing_det_minus,
)
from distlab.arith import prime_to_p_part, primes_of

m = 60

res = intertwine_check(m)
print(f"level {m}: phi intertwines the differentials: {res['intertwines']}")
print(f"          phi commutes with negation:        {res['commutes_with_negation']}")

res = det_check(m)
print("alternating determinant, full  :", res["full"], "=", res["full_expected"])
print("alternating determinant, minus :", res["minus"], "=", res["minus_expected"])
assert res["ok"]

# ---------------------------------------------------------------
# local factors, two independent routes
#
# route 1: the closed form in p and f
# route 2: product of (1 - chi(p)/p) over characters mod f, inverted,
#          evaluated in the ring of integers of the f-th layer

print()
print(f"{'p':>3} {'f':>3} {'closed form':>14} {'character route':>16}")
for p in primes_of(m):
    f = prime_to_p_part(m, p)
    a = smoothing_det(p, f)
    b = 1 / character_product_full(p, f)
    mark = "ok" if a == b else "MISMATCH"
    print(f"{p:>3} {f:>3} {str(a):>14} {str(b):>16}  {mark}")
    am = smoothing_det_minus(p, f)
    bm = 1 / character_product_minus(p, f)
    print(f"{'':>3} {'':>3} {str(am):>14} {str(bm):>16}  minus {'ok' if am == bm else 'MISMATCH'}")
