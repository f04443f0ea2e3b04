#!/usr/bin/env python3
"""Generate frozen high-precision reference values for the math-function tests.

Uses mpmath at 60 decimal digits and emits a C++ header with plain arrays.
Run from the repository root:

    python3 tools/gen_reference_values.py > tests/support/reference_values.hpp
"""

import mpmath as mp

mp.mp.dps = 60


def fmt(x):
    return mp.nstr(mp.mpf(x), 22, strip_zeros=False)


def phi(z):
    return mp.ncdf(z)


def phi_inv(p):
    p = mp.mpf(p)
    return mp.sqrt(2) * mp.erfinv(2 * p - 1)


def t_cdf(x, nu):
    nu = mp.mpf(nu)
    x = mp.mpf(x)
    # F(x) = 1/2 + x Gamma((nu+1)/2) 2F1(1/2,(nu+1)/2;3/2;-x^2/nu) / (sqrt(pi nu) Gamma(nu/2))
    h = mp.hyp2f1(mp.mpf('0.5'), (nu + 1) / 2, mp.mpf('1.5'), -x * x / nu)
    return mp.mpf('0.5') + x * mp.gamma((nu + 1) / 2) * h / (mp.sqrt(mp.pi * nu) * mp.gamma(nu / 2))


def t_pdf(x, nu):
    nu = mp.mpf(nu)
    x = mp.mpf(x)
    return mp.gamma((nu + 1) / 2) / (mp.sqrt(nu * mp.pi) * mp.gamma(nu / 2)) * (1 + x * x / nu) ** (-(nu + 1) / 2)


def gamma_cdf(x, shape, rate):
    return mp.gammainc(mp.mpf(shape), 0, mp.mpf(rate) * mp.mpf(x), regularized=True)


def gamma_quantile(p, shape, rate):
    p = mp.mpf(p)
    shape = mp.mpf(shape)
    rate = mp.mpf(rate)
    guess = shape / rate
    return mp.findroot(lambda x: gamma_cdf(x, shape, rate) - p, guess)


def main():
    lines = []
    add = lines.append
    add("// Auto-generated by tools/gen_reference_values.py -- do not edit by hand.")
    add("// High-precision reference values (mpmath, 60 digits) for math-function tests.")
    add("#pragma once")
    add("")
    add("namespace refval {")
    add("")

    # --- standard normal cdf ---
    zs = ['-8.0', '-6.0', '-2.0', '-0.75', '-0.1', '0.0', '0.1', '0.5', '1.0',
          '1.1774', '2.0', '2.5758', '3.0', '5.0', '8.0']
    add("struct CdfPair { double x; double value; };")
    add("")
    add("inline constexpr CdfPair kStdNormalCdf[] = {")
    for z in zs:
        add(f"    {{{z}, {fmt(phi(mp.mpf(z)))}}},")
    add("};")
    add("")

    # --- standard normal quantile ---
    ps = ['1e-12', '1e-8', '0.005', '0.025', '0.1', '0.3', '0.5', '0.75',
          '0.841344746068542948585232545632', '0.975', '0.995', '0.9999', '0.99999999']
    add("inline constexpr CdfPair kStdNormalQuantile[] = {")
    for p in ps:
        add(f"    {{{mp.nstr(mp.mpf(p), 17)}, {fmt(phi_inv(p))}}},")
    add("};")
    add("")

    # --- student t cdf: (x, dof, value) ---
    add("struct TTriple { double x; double dof; double value; };")
    add("")
    tcases = [('1.0', '1.0'), ('2.0', '2.0'), ('1.5', '5.0'), ('-2.3', '14.58'),
              ('2.0', '456.58'), ('0.5', '0.5'), ('3.0', '30.0'), ('-1.0', '100.0'),
              ('2.5758', '1000000.0'), ('-0.183', '9.0'), ('0.0', '3.7')]
    add("inline constexpr TTriple kStudentTCdf[] = {")
    for x, nu in tcases:
        add(f"    {{{x}, {nu}, {fmt(t_cdf(x, nu))}}},")
    add("};")
    add("")

    tpdf_cases = [('0.0', '1.0'), ('1.0', '2.0'), ('-2.5', '14.58'), ('0.5', '456.58'), ('3.0', '22.0')]
    add("inline constexpr TTriple kStudentTPdf[] = {")
    for x, nu in tpdf_cases:
        add(f"    {{{x}, {nu}, {fmt(t_pdf(x, nu))}}},")
    add("};")
    add("")

    # --- gamma cdf: (x, shape, rate, value) ---
    add("struct GammaQuad { double x; double shape; double rate; double value; };")
    add("")
    gcases = [('1.0', '1.0', '1.0'), ('0.2', '0.3', '1.0'), ('6.5', '7.29', '1.0'),
              ('200.0', '215.5', '1.0'), ('4.0', '2.5', '2.5'), ('80.0', '100.0', '1.0'),
              ('0.5', '7.29', '3.0'), ('1300.0', '228.29', '0.17')]
    add("inline constexpr GammaQuad kGammaCdf[] = {")
    for x, a, r in gcases:
        add(f"    {{{x}, {a}, {r}, {fmt(gamma_cdf(x, a, r))}}},")
    add("};")
    add("")

    qcases = [('0.995', '7.29', '1.0'), ('0.6321205588285576784044762', '1.0', '1.0'),
              ('0.5', '100.0', '1.0'), ('0.005', '7.29', '1.0'), ('0.975', '2.0', '4.0')]
    add("inline constexpr GammaQuad kGammaQuantile[] = {")
    for p, a, r in qcases:
        add(f"    {{{mp.nstr(mp.mpf(p), 17)}, {a}, {r}, {fmt(gamma_quantile(p, a, r))}}},")
    add("};")
    add("")

    # --- chi-square upper tails used by the model checks ---
    add("inline constexpr TTriple kChiSqUpperTail[] = {")
    for x, k in [('12.879', '11.0'), ('328.29', '11.0'), ('19.675', '11.0')]:
        v = 1 - gamma_cdf(x, mp.mpf(k) / 2, mp.mpf('0.5'))
        add(f"    {{{x}, {k}, {fmt(v)}}},")
    add("};")
    add("")
    add("}  // namespace refval")
    print("\n".join(lines))


if __name__ == "__main__":
    main()
