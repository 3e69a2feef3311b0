"""L_p(s, chi*omega) near s = 0 for the odd characters mod 7."""

from padic_twoterm.core import PrecisionPolicy
from padic_twoterm.lfun import (
    L_at_zero,
    enumerate_odd_nontrivial,
    finite_difference_derivative,
    kubota_leopoldt,
)

p = 7
policy = PrecisionPolicy.for_prime(p, 40)

for chi in enumerate_odd_nontrivial(p):
    jet = kubota_leopoldt(chi, 0, policy)
    print(f"chi = {chi}")
    print("  L(0, chi)      =", L_at_zero(chi, policy).truncate(12))
    print("  L_p(0, chi w)  =", jet.value.truncate(12))
    print("  L_p'(0, chi w) =", jet.deriv.truncate(12))
    # a central difference with step p^m should agree to about 2m digits
    for m in (4, 6, 8):
        fd = finite_difference_derivative(chi, m, policy)
        agree = (jet.deriv - fd).floor - jet.deriv.valuation
        print(f"  step {p}^{m}: difference agrees to {agree} digits")
