"""
Space-time trace of the {w, 0, r} automaton and its eventually periodic column.
"""

from caperiod import column_period, example2, parse_config, trace

ca = example2()
x = parse_config("^(wr000w)^", ca.alphabet)

# w never changes, so the six cells between two w's evolve on their own
for t, row in enumerate(trace(ca, x, (0, 5), 6).render(ca.alphabet)):
    print(t, row)

m, p = column_period(ca, x, (0, 5))
print("preperiod", m, "period", p)
