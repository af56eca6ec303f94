#!/usr/bin/env python3
"""Arbitrary-precision reference values frozen into the C++ unit tests.

Run with `python3 generate_reference_values.py`; the printed constants are
pasted into tests/reference_values.hpp. Requires mpmath.
"""
import mpmath as mp

mp.mp.dps = 40


def show(name, value):
    if isinstance(value, mp.mpc):
        print(f"{name}: {mp.nstr(value.real, 20)} {mp.nstr(value.imag, 20)}")
    else:
        print(f"{name}: {mp.nstr(value, 20)}")


# Gamma on positive reals.
for x in ["0.05", "0.1", "0.25", "0.75", "1.5", "3.3", "7.25", "12.5", "33.3", "50"]:
    show(f"gamma({x})", mp.gamma(mp.mpf(x)))

# Principal complex power.
show("(1+i)^0.5", mp.power(mp.mpc(1, 1), mp.mpf("0.5")))
show("(-0.5+2i)^-0.3", mp.power(mp.mpc(-0.5, 2), mp.mpf("-0.3")))

# Beta-Bessel integral: int_0^1 p^-1/2 (1-p)^-1/2 e^{i w p} dp = pi e^{iw/2} J0(w/2).
for w in [1, 10, 100, 1000, 10000]:
    direct = mp.pi * mp.expj(mp.mpf(w) / 2) * mp.besselj(0, mp.mpf(w) / 2)
    show(f"bessel_integral({w})", direct)
show("J0(5)", mp.besselj(0, 5))

# Incomplete Fresnel-type integral: int_0^1 p^-1/2 e^{i w p} dp at w = 25,
# i.e. 25^{-1/2} int_0^25 u^{-1/2} e^{iu} du.
w = mp.mpf(25)
val = mp.quad(lambda p: p ** mp.mpf(-0.5) * mp.expj(w * p), [0, 0.25, 0.5, 0.75, 1])
show("fresnel_integral(25)", val)

# Same with the closed form through the lower incomplete gamma function:
# int_0^X u^{a-1} e^{iu} du = e^{i pi a/2} gamma_lower(a, -iX).
a = mp.mpf("0.5")
closed = mp.exp(1j * mp.pi * a / 2) * mp.gammainc(a, 0, -1j * w) / mp.sqrt(w)
show("fresnel_integral_closed(25)", closed)

# Generic two-sided amplitude p^{mu1-1}(1-p)^{mu2-1} with psi = p + p^2.
for (m1, m2, om) in [("0.3", "0.6", 50), ("0.7", "0.4", 200)]:
    m1, m2 = mp.mpf(m1), mp.mpf(m2)
    f = lambda p: p ** (m1 - 1) * (1 - p) ** (m2 - 1) * mp.expj(om * (p + p * p))
    pts = mp.linspace(0, 1, 41)
    show(f"beta_quadlift({m1},{m2},{om})", mp.quad(f, pts))

# Intro Schrodinger datum at small time: (1/2pi) int_0^1 p^-1/4 (1-p) dp.
show("u_small_t", mp.mpf(16) / 21 / (2 * mp.pi))
