"""Walk through tracked-precision arithmetic in Q_5 and Q_5(zeta_5)."""

from fractions import Fraction

from padic_twoterm.core import CycloElement, PadicScalar, PrecisionPolicy
from padic_twoterm.special import dwork_pi, gauss_sum, gross_koblitz_check, log_scalar, teichmuller

p = 5
policy = PrecisionPolicy.for_prime(p, 20)
W = policy.working
print(f"p = {p}, target {policy.target} digits, guard {policy.guard}, working {W}")

# scalars carry their own precision; cancellation is visible in the result
x = PadicScalar.from_rational(p, Fraction(2, 3), 20)
y = PadicScalar.from_int(p, 2 + 3 * 5 ** 7, 20) / 3
print("2/3           =", x)
print("difference    =", x - y, "(valuation 7, fewer digits left)")

# Teichmüller lift of 2 is a 4th root of unity congruent to 2
w = teichmuller(2, policy)
print("omega(2)      =", w.truncate(8))
print("omega(2)^4 - 1 zero at precision:", (w ** 4 - 1).is_zero)

# Iwasawa branch: log 5 = 0, log of roots of unity = 0
print("log(6)        =", log_scalar(PadicScalar.from_int(p, 6, W), policy).truncate(8))
print("log(5)        =", log_scalar(PadicScalar.from_int(p, 5, W), policy))

# the cyclotomic field
zeta = CycloElement.zeta(p, W)
one = CycloElement.one(p, W)
print("val(1 - zeta) =", (one - zeta).valuation())
norm = one
for a in range(1, p):
    norm = norm * (one - CycloElement.zeta(p, W, a))
print("prod (1 - zeta^a) =", norm.scalar_part().truncate(6))

# Dwork's uniformizer and Gauss sums
pi = dwork_pi(policy).pi
print("pi^4 + 5 zero at precision:", (pi ** (p - 1) + p).is_zero)
for a in range(1, p - 1):
    tau = gauss_sum(a, policy)
    r = gross_koblitz_check(a, 6, policy)
    print(f"a = {a}: val tau = {tau.valuation()}, Gross–Koblitz to 6 digits:",
          r.multiplicative_passed)
