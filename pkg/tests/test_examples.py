"""Worked examples with known answers, one per operation where available."""
import numpy as np

from semiprimal import catalog
from semiprimal.boolean import FiniteBooleanAlgebra
from semiprimal.core import enumerate_homomorphisms, internal_isomorphisms, is_identity_iso, subuniverse_closure
from semiprimal.functors import VarietyAlgebra, canonicalize, inclusion_functor, skeleton
from semiprimal.lattice import detect_lattice
from semiprimal.primality import (
    build_discriminator_from_T,
    discriminator_table,
    flew_quasiprimal_witness,
    idempotent_elements,
    is_quasi_primal,
)


def test_closure_of_half_in_luk4():
    A = catalog.lukasiewicz(4)
    assert subuniverse_closure(A, [2]).labels() == ["0", "2/4", "1"]


def test_homs_from_product_are_the_projections(luk4_base):
    A = VarietyAlgebra.product(luk4_base, [1, 2])
    homs = enumerate_homomorphisms(A.algebra, luk4_base.algebra)
    assert sorted(h.map for h in homs) == sorted(tuple(A.carrier[:, i].tolist()) for i in range(2))


def test_luk4_has_only_identity_internal_isos():
    triples = internal_isomorphisms(catalog.lukasiewicz(4))
    assert len(triples) == 3 and all(is_identity_iso(t) for t in triples)


def test_discriminator_from_T_on_luk4():
    A = catalog.lukasiewicz(4)
    assert np.array_equal(build_discriminator_from_T(A), discriminator_table(5))
    assert is_quasi_primal(A)[0]


def test_diamond_idempotents_and_chain_witness():
    D = catalog.build("flew_diamond").algebra
    assert [D.label(x) for x in idempotent_elements(D)] == ["0", "a", "b", "1"]
    assert flew_quasiprimal_witness(catalog.build("R_5_1_20").algebra) <= 4


def test_boolean_power_of_two_element_subalgebra(luk4_base):
    S = luk4_base.sub(0)
    V = inclusion_functor(FiniteBooleanAlgebra(2), S, luk4_base)
    assert V.size == 4 and list(V.factors) == [0, 0]
    assert skeleton(V).skeleton.atom_count == 2


def test_member_factors(luk4_base):
    A = VarietyAlgebra.product(luk4_base, [1, 2])
    V = canonicalize(A.algebra, luk4_base)
    assert sorted(V.factors) == [1, 2] and V.full


def test_lattice_bounds_and_shapes():
    R = detect_lattice(catalog.lukasiewicz(4))
    assert (R.bot, R.top) == (0, 4)
    P = catalog.pseudologic(2)
    R = detect_lattice(P)
    assert P.size == 6 and (P.label(R.bot), P.label(R.top)) == ("0", "1")
    D = catalog.demorgan("D4")
    leq = detect_lattice(D).leq()
    e, a = D.index_of("e"), D.index_of("a")
    assert not leq[e, a] and not leq[a, e]
