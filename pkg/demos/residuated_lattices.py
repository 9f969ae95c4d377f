"""Quasi-primality of FL_ew algebras read off from idempotents.

Run: python3 demos/residuated_chains.py
"""
from semiprimal import catalog
from semiprimal.lattice import detect_lattice
from semiprimal.primality import flew_quasiprimal_witness, idempotent_elements, is_quasi_primal

keys = [k for k in catalog.golden() if k.startswith("R_")]
algebras = [catalog.build(k).algebra for k in keys]
algebras += [catalog.lukasiewicz(n) for n in (3, 5)] + [catalog.godel(n) for n in (2, 3)]

print(f"{'algebra':<12} {'idempotents':<22} {'least n':>7}  quasi-primal")
for A in algebras:
    R = detect_lattice(A)
    idem = [A.label(x) for x in idempotent_elements(A)]
    n = flew_quasiprimal_witness(A, R, max_n=32)
    print(f"{A.name:<12} {','.join(idem):<22} {str(n):>7}  {is_quasi_primal(A, R)[0]}")
print("\nAn idempotent strictly between 0 and 1 blocks x v ~(x^n) = 1 for every n.")
