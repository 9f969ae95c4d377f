"""A member of the variety of Ł4, taken apart and rebuilt.

Run: python3 demos/duality_walkthrough.py
"""
from semiprimal.boolean import FiniteBooleanAlgebra
from semiprimal.catalog import lukasiewicz
from semiprimal.duality import pi_obj, roundtrip_algebra, sigma_obj
from semiprimal.functors import (
    Base,
    VarietyAlgebra,
    boolean_power,
    canonicalize,
    quotient_functor,
    skeleton,
    transpose,
    unit_embedding,
)

base = Base(lukasiewicz(4))
print("Subalgebras of Ł4 (ids used below):")
for i, S in enumerate(base.subuniverses):
    print(f"  {i}: {{{', '.join(S.labels())}}}")

A = VarietyAlgebra.product(base, [1, 2])
print(f"\nA = Ł2 x Ł4 has {A.size} elements")

sk = skeleton(A)
print(f"Boolean skeleton: 2^{sk.skeleton.atom_count} =",
      " ".join(A.algebra.label(e) for e in sk.inclusion))

X = sigma_obj(A)
print(f"Dual: {X.points} homomorphisms into Ł4, image labels {list(X.v)}")
P = pi_obj(X)
iso = roundtrip_algebra(A)
print(f"Rebuilt from the dual: {P.size} elements, evaluation is an isomorphism: "
      f"{iso.is_injective() and iso.is_surjective()}")

power = boolean_power(base.algebra, sk.skeleton)
u = unit_embedding(A, sk, power)
print(f"\nA embeds into Ł4[2^2] ({power.algebra.size} elements) via a -> (l -> T_l(a)):"
      f" image has {len(set(u.map))} elements")
for k in range(3):
    tr = transpose(A, FiniteBooleanAlgebra(k), sk)
    print(f"  Hom(skeleton, 2^{k}) and Hom(A, Ł4[2^{k}]) both have {len(tr.boolean_homs)} maps")

Q = quotient_functor(A, base.sub(1))
print(f"\nForcing everything into Ł2 collapses A to {Q.algebra.size} elements, factors {list(Q.algebra.factors)}")

P22 = boolean_power(base.algebra, FiniteBooleanAlgebra(2))
V = canonicalize(P22.algebra, base)
print(f"Ł4[2^2] as a product of subalgebras: factors {list(V.factors)}")
