#pragma once

#include "qturan/accumulate.hpp"
#include "qturan/errors.hpp"

#include <cmath>
#include <limits>

namespace qturan::series {

/// Term families handled by the summation engine.
///
/// small_e  : t_k = z^k / (q;q)_k
/// big_e    : t_k = q^{k(k-1)/2} z^k / (q;q)_k
/// classical: t_k = x^k / k!
enum class Family { small_e, big_e, classical };

struct SeriesSum {
    double value = 0.0;
    double truncation = 0.0; ///< bound on the omitted tail
    double rounding = 0.0;   ///< bound on accumulated floating-point error
    int terms = 0;

    [[nodiscard]] double abs_error() const noexcept { return truncation + rounding; }
};

inline constexpr int kMaxTerms = 20'000'000;

/// Sums w_0 + w_1 + ... of positive terms with w_{j+1} = w_j * ratio(j).
///
/// Requires ratio(j) > 0 and non-increasing in j. Then for any J with
/// ratio(J) < 1 the omitted tail is at most w_J r / (1 - r), r = ratio(J).
/// Summation stops once that bound drops below rel_tol times the partial sum.
/// first_rel_err is the relative error of w_0; every ratio evaluation plus the
/// multiplication adds at most step_rel_err.
template <typename RatioFn>
SeriesSum sum_ratio_series(double first, double first_rel_err, RatioFn&& ratio,
                           double step_rel_err, double rel_tol)
{
    SeriesSum out;
    CompensatedSum acc;
    double term = first;
    double term_rel = first_rel_err;
    double weighted = 0.0; // sum_j rel_err(w_j) * w_j
    for (int j = 0;; ++j) {
        if (j >= kMaxTerms) {
            throw ConsistencyError("series failed to reach its tail bound");
        }
        acc += term;
        weighted += term_rel * term;
        double const sum = acc.value();
        if (term == 0.0) {
            // Underflowed: every later term is below the smallest subnormal.
            out.truncation = std::numeric_limits<double>::denorm_min();
            out.terms = j + 1;
            break;
        }
        double const r = ratio(j) * (1.0 + step_rel_err);
        if (r < 1.0) {
            double const bound = term * (1.0 + term_rel) * r / (1.0 - r) * (1.0 + 4.0 * kEps);
            if (bound <= rel_tol * sum) {
                out.truncation = bound;
                out.terms = j + 1;
                break;
            }
        }
        term *= ratio(j);
        term_rel += step_rel_err;
    }
    out.value = acc.value();
    out.rounding = weighted + 3.0 * kEps * out.value;
    return out;
}

/// Relative error added by one ratio step of each family's tail series.
double tail_step_error(Family f) noexcept;
/// Relative error added by one ratio step of each family's determinant series.
double det_step_error(Family f) noexcept;

/// t_{k+1} / t_k.
double tail_ratio(Family f, double q, double z, int k);

/// Leading tail term t_{n+1} and its relative error, built as prod_{k<=n} t_{k+1}/t_k.
struct Leading {
    double value;
    double rel_error;
};
Leading leading_term(Family f, double q, double z, int n);

/// Tail sum_{k>n} t_k divided by t_{n+1}. The first normalized term is exactly 1.
SeriesSum normalized_tail(Family f, double q, double z, int n, double rel_tol);

/// normalized_tail minus its first term, summed directly: sum_{k>n+1} t_k / t_{n+1}.
SeriesSum normalized_tail_excess(Family f, double q, double z, int n, double rel_tol);

/// Full series sum_{k>=0} t_k.
SeriesSum full_series(Family f, double q, double z, double rel_tol);

/// The sharp lower Turán constant c of the family at index n.
double sharp_constant(Family f, double q, int n);

/// 1 - c, where c is the sharp lower Turán constant of the family at index n.
double sharp_gap(Family f, double q, int n);

/// -(F_{n-1} F_{n+1} - F_n^2) / t_{n+1}^2 from the closed-form determinant series.
/// Every term is positive; the leading one equals sharp_gap(f, q, n).
SeriesSum normalized_neg_determinant(Family f, double q, double z, int n, double rel_tol);

/// normalized_neg_determinant without its leading term, summed directly.
SeriesSum normalized_neg_determinant_excess(Family f, double q, double z, int n, double rel_tol);

} // namespace qturan::series
