"""
Temporally periodic points that are not spatially periodic, built from a blocking word.
"""

from caperiod import construct_stp, elementary, example2, search_stp, verify_stp
from caperiod.config import format_config
from caperiod.dynamics import trace
from caperiod.stp import build_y_sequence

ca = example2()
enc, show = ca.alphabet.encode, ca.alphabet.render

for e in build_y_sequence(enc("w"), enc("00"), enc("r0"), 2):
    print(e.i, show(e.word), e.interval)

cert = construct_stp(ca, "w", "00", "r0")
print(format_config(cert.point, ca.alphabet), "period", cert.temporal_period, cert.evidence)
print(verify_stp(ca, cert))
for row in trace(ca, cert.point, (-6, 9), 4).render(ca.alphabet):
    print(row)

print(len(search_stp(ca)), "certified points for example2")
print(len(search_stp(elementary(170))), "for the shift")
