"""
The Z/pZ factor read off the eventually periodic column of Example 2.
"""

from caperiod import PeriodicConfig, build_periodic_factor, example2, parse_config, verify_factor

ca = example2()
f = build_periodic_factor(ca, parse_config("^(wr000w)^", ca.alphabet), (0, 5))
print(f.to_dict(ca.alphabet))

points = [PeriodicConfig(ca.alphabet.encode(w)) for w in ("wr0r0w", "wrr0rw", "wr0r0ww0")]
print("pi(F y) = pi(y) + 1:", verify_factor(ca, f, points))

# smaller windows give periods dividing 2
for win in [(0, 0), (1, 2), (2, 4)]:
    print(win, build_periodic_factor(ca, parse_config("^(wr000w)^", ca.alphabet), win).p)
