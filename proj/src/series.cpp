#include "qturan/series.hpp"

#include "qturan/qcore.hpp"

#include <cmath>

namespace qturan::series {

double tail_step_error(Family f) noexcept
{
    switch (f) {
    case Family::small_e: return 8.0 * kEps;
    case Family::big_e: return 10.0 * kEps;
    case Family::classical: return 3.0 * kEps;
    }
    return 32.0 * kEps;
}

double det_step_error(Family f) noexcept
{
    switch (f) {
    case Family::small_e: return 20.0 * kEps;
    case Family::big_e: return 24.0 * kEps;
    case Family::classical: return 6.0 * kEps;
    }
    return 32.0 * kEps;
}

double tail_ratio(Family f, double q, double z, int k)
{
    switch (f) {
    case Family::small_e: return z / one_minus_qpow(q, k + 1);
    case Family::big_e: return std::pow(q, k) * z / one_minus_qpow(q, k + 1);
    case Family::classical: return z / static_cast<double>(k + 1);
    }
    return 0.0;
}

Leading leading_term(Family f, double q, double z, int n)
{
    CompensatedProduct p;
    for (int k = 0; k <= n; ++k) {
        p *= tail_ratio(f, q, z, k);
    }
    return {p.value(), static_cast<double>(n + 1) * tail_step_error(f)};
}

SeriesSum normalized_tail(Family f, double q, double z, int n, double rel_tol)
{
    return sum_ratio_series(
        1.0, 0.0, [&](int j) { return tail_ratio(f, q, z, n + 1 + j); }, tail_step_error(f), rel_tol);
}

SeriesSum normalized_tail_excess(Family f, double q, double z, int n, double rel_tol)
{
    return sum_ratio_series(
        tail_ratio(f, q, z, n + 1), tail_step_error(f), [&](int j) { return tail_ratio(f, q, z, n + 2 + j); },
        tail_step_error(f), rel_tol);
}

SeriesSum full_series(Family f, double q, double z, double rel_tol)
{
    return sum_ratio_series(
        1.0, 0.0, [&](int j) { return tail_ratio(f, q, z, j); }, tail_step_error(f), rel_tol);
}

double sharp_constant(Family f, double q, int n)
{
    switch (f) {
    case Family::small_e: return one_minus_qpow(q, n + 1) / one_minus_qpow(q, n + 2);
    case Family::big_e: return q * one_minus_qpow(q, n + 1) / one_minus_qpow(q, n + 2);
    case Family::classical: return static_cast<double>(n + 1) / static_cast<double>(n + 2);
    }
    return 0.0;
}

double sharp_gap(Family f, double q, int n)
{
    switch (f) {
    case Family::small_e: return std::pow(q, n + 1) * (1.0 - q) / one_minus_qpow(q, n + 2);
    case Family::big_e: return (1.0 - q) / one_minus_qpow(q, n + 2);
    case Family::classical: return 1.0 / static_cast<double>(n + 2);
    }
    return 0.0;
}

namespace {

// w_{j+1} / w_j of the normalized determinant series. With k = n + 2 + j the
// raw terms are (q^k - q^{n+1}) z^{k+n} / ((q;q)_{n+1} (q;q)_k) for small_e and
// q^{(n(n-1)+(k-1)(k-2))/2} (q^{k-1} - q^n) z^{k+n} / ((q;q)_{n+1} (q;q)_k) for big_e.
double det_ratio(Family f, double q, double z, int n, int j)
{
    switch (f) {
    case Family::small_e:
        return z * one_minus_qpow(q, j + 2) / (one_minus_qpow(q, j + 1) * one_minus_qpow(q, n + 3 + j));
    case Family::big_e:
        return std::pow(q, n + j + 1) * z * one_minus_qpow(q, j + 2)
               / (one_minus_qpow(q, j + 1) * one_minus_qpow(q, n + 3 + j));
    case Family::classical:
        return z * static_cast<double>(j + 2)
               / (static_cast<double>(j + 1) * static_cast<double>(n + 3 + j));
    }
    return 0.0;
}

} // namespace

SeriesSum normalized_neg_determinant(Family f, double q, double z, int n, double rel_tol)
{
    double const first = sharp_gap(f, q, n);
    return sum_ratio_series(
        first, 8.0 * kEps, [&](int j) { return det_ratio(f, q, z, n, j); }, det_step_error(f), rel_tol);
}

SeriesSum normalized_neg_determinant_excess(Family f, double q, double z, int n, double rel_tol)
{
    double const first = sharp_gap(f, q, n) * det_ratio(f, q, z, n, 0);
    return sum_ratio_series(
        first, 8.0 * kEps + det_step_error(f), [&](int j) { return det_ratio(f, q, z, n, j + 1); },
        det_step_error(f), rel_tol);
}

} // namespace qturan::series
