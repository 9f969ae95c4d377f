"""Which lattice-based algebras are semi-primal, and why some are not.

Run: python3 demos/primality_tour.py
"""
from semiprimal import catalog
from semiprimal.core import enumerate_subuniverses
from semiprimal.primality import is_primal


def show(entry):
    A = entry.algebra
    v = is_primal(A)
    subs = len(enumerate_subuniverses(A))
    print(f"  {entry.label:<20} |A|={A.size:<2} subalgebras={subs:<2} {v.level}")
    return v


print("Chain families:")
for family in ("lukasiewicz", "moisil", "general", "cornish", "post", "godel"):
    for n in catalog.FAMILY_RANGES[family]:
        show(catalog.build(family, n))

print("\nFive-element FL_ew chain with a·a = 0:")
v = show(catalog.build("R_5_1_17"))
w = v.witness["discriminator-route"]
print(f"  two different subalgebras are isomorphic: {w['from']} -> {w['to']}")
print("  so it is quasi-primal but not semi-primal")

print("\nBoolean product on the four-element lattice:")
show(catalog.build("flew_diamond"))
print("  its product is the meet, so it is the Boolean algebra 2x2, which has")
print("  non-trivial congruences even though x v ~x = 1 holds")
