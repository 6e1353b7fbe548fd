"""Exact extremal numbers for tiny n, and how they compare with the limits.

Run:  python3 demos/04_extremal_values.py
"""

from configlab.extremal import REFERENCE_LIMITS, compute_f, compute_g, packing_number, ratio_table

print(ratio_table(2, range(3, 10)).to_csv())
print("packing numbers:", [packing_number(n) for n in range(3, 10)])

print("\n n  f(n;5,3)  g(n;3)  f(n;6,4)  g(n;4)")
for n in range(3, 10):
    row = [compute_f(n, 5, 3).value, compute_g(n, 3).value, compute_f(n, 6, 4).value, compute_g(n, 4).value]
    print(f"{n:2d}  " + "  ".join(f"{v:8d}" for v in row))

print("\nlimits of f / n^2 as n grows:", {k: str(v) for k, v in REFERENCE_LIMITS.items()})
