"""
Orphans, unbalanced words and colliding pairs, decided on the de Bruijn graph.
"""

from caperiod import elementary, example2, is_injective, is_surjective, preimage_count
from caperiod.config import format_config

ca = example2()
rep = is_surjective(ca)
print("surjective:", rep.surjective)
print("shortest unbalanced word:", ca.alphabet.render(rep.witness),
      rep.witness_count, "preimages instead of", rep.expected)
print("'rr' has", preimage_count(ca, "rr"), "preimage")

inj = is_injective(ca)
print("same image:", [format_config(c, ca.alphabet) for c in inj.witness])

surj = [c for c in range(256) if is_surjective(elementary(c)).surjective]
inj = [c for c in range(256) if is_injective(elementary(c)).injective]
print(len(surj), "surjective elementary rules")
print("reversible:", inj)
