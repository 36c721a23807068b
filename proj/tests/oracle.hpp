#pragma once

// Extended-precision reference values for tests. Everything here is brute force:
// terms are built from their defining formulas in 100-digit arithmetic and summed
// until they are negligible. Nothing from the library is used.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_100;
using Rational = boost::multiprecision::cpp_rational;

enum class Fn { small_e, big_e };

inline Big const& negligible()
{
    static Big const v("1e-80");
    return v;
}

/// k-th term: z^k/(q;q)_k or q^{k(k-1)/2} z^k/(q;q)_k.
inline Big term(Fn fn, Big const& q, Big const& z, int k)
{
    Big t = 1;
    for (int i = 1; i <= k; ++i) {
        t *= z / (1 - pow(q, i));
    }
    if (fn == Fn::big_e) {
        t *= pow(q, (k * (k - 1)) / 2);
    }
    return t;
}

/// sum_{k>n} t_k, n >= -1. Term ratios are non-increasing, so once a ratio r < 1
/// the rest is at most t r / (1 - r); stop when that is below 1e-80 of the sum.
inline Big tail(Fn fn, double qd, double zd, int n)
{
    Big const q = qd;
    Big const z = zd;
    Big t = term(fn, q, z, n + 1);
    Big sum = 0;
    Big qk = pow(q, n + 1); // q^k for the current k
    for (int k = n + 1; k < 2'000'000; ++k) {
        sum += t;
        Big const ratio = (fn == Fn::big_e ? qk : Big(1)) * z / (1 - qk * q);
        if (ratio < 1 && t * ratio / (1 - ratio) < negligible() * sum) {
            return sum;
        }
        t *= ratio;
        qk *= q;
    }
    throw std::runtime_error("oracle tail did not converge");
}

inline Big full(Fn fn, double q, double z) { return tail(fn, q, z, -1); }

/// (a;q)_inf by partial products.
inline Big qpoch_inf(double ad, double qd)
{
    Big const a = ad;
    Big const q = qd;
    Big p = 1;
    Big x = a;
    for (int k = 0; k < 2'000'000; ++k) {
        if (abs(x) < negligible()) {
            return p;
        }
        p *= 1 - x;
        x *= q;
    }
    throw std::runtime_error("oracle product did not converge");
}

/// e^x - sum_{k<=n} x^k/k! by direct tail summation.
inline Big classical_tail(double xd, int n)
{
    Big const x = xd;
    Big t = 1;
    for (int i = 1; i <= n + 1; ++i) {
        t *= x / i;
    }
    Big sum = 0;
    for (int k = n + 1; k < 2'000'000; ++k) {
        sum += t;
        Big const ratio = x / (k + 1);
        if (ratio < 1 && t * ratio / (1 - ratio) < negligible() * sum) {
            return sum;
        }
        t *= ratio;
    }
    throw std::runtime_error("oracle classical tail did not converge");
}

inline Big turan_ratio(Fn fn, double q, double z, int n)
{
    Big const a = tail(fn, q, z, n - 1);
    Big const b = tail(fn, q, z, n);
    Big const c = tail(fn, q, z, n + 1);
    return a * c / (b * b);
}

inline Big turan_difference(Fn fn, double q, double z, int n)
{
    Big const a = tail(fn, q, z, n - 1);
    Big const b = tail(fn, q, z, n);
    Big const c = tail(fn, q, z, n + 1);
    return a * c - b * b;
}

inline Big classical_ratio(double x, int n)
{
    Big const a = classical_tail(x, n - 1);
    Big const b = classical_tail(x, n);
    Big const c = classical_tail(x, n + 1);
    return a * c / (b * b);
}

inline double to_double(Big const& v) { return v.convert_to<double>(); }

inline double rel_diff(double value, Big const& ref)
{
    return to_double(abs((Big(value) - ref) / ref));
}

} // namespace oracle
