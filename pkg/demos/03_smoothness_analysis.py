"""
How smooth is the limit?
========================

Certify the stationary limits through their symbols, then check how fast
the level masks approach them.
"""

import math

from trigsubdiv import SchemeFamily, full_report
from trigsubdiv.symbol import certify_smoothness, divide_by_smoothing_factor, symbol_of_mask
from trigsubdiv.mask import stationary_limit_mask

a = symbol_of_mask(stationary_limit_mask(4))
print("a(z)*384 =", {e: round(v * 384) for e, v in a.coefficients.items()})

b = divide_by_smoothing_factor(a)
cert = certify_smoothness(b)
print("b(z)*192 =", {e: round(v * 192) for e, v in b.coefficients.items()})
print("difference scheme", cert.difference_symbol, "norm", cert.norm)
print("b certifies C^%d, a certifies C^%d" % (cert.order, certify_smoothness(a).order))

# the level masks approach the limit like 4^-k
report = full_report(SchemeFamily(4, math.pi / 6), 12)
print("decay exponent %.4f (stated %.0f)" % (report.decay_exponent, report.stated_decay_exponent))
print("verdict at C^%d: %s" % (report.stationary_smoothness, report.verdict))
print("smoothness carried over by equivalence: C^%d" % report.equivalence_smoothness)
for note in report.notes:
    print(" -", note)
