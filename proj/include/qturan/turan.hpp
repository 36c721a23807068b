#pragma once

#include "qturan/qcore.hpp"
#include "qturan/tails.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace qturan {

enum class Outcome { certified, violated, indeterminate };

std::string_view to_string(Outcome outcome) noexcept;

/// Result of checking  c * R_n^2 <= R_{n-1} R_{n+1} <= R_n^2  at one point,
/// written in ratio form  c <= ratio <= 1.
///
/// lower_margin = ratio - lower_constant, upper_margin = 1 - ratio. Both margins
/// are computed from the closed-form determinant series, so they keep full
/// relative accuracy even when the ratio rounds to 1. error_budget bounds the
/// error of lower_margin; upper_error_budget bounds the error of upper_margin
/// and never exceeds error_budget.
struct TuranVerdict {
    double ratio = 0.0;
    double lower_constant = 0.0;
    double upper_constant = 1.0;
    double lower_margin = 0.0;
    double upper_margin = 0.0;
    double error_budget = 0.0;
    double upper_error_budget = 0.0;
    Outcome outcome = Outcome::indeterminate;
};

/// Safety factor applied to first-order propagated error bounds in verdicts.
inline constexpr double kVerdictSafety = 8.0;

/// Tolerance used where an operation takes none.
inline constexpr double kDefaultTol = 1e-15;

/// certified if both margins clear their budgets, violated if either margin is
/// below minus its budget, indeterminate otherwise.
Outcome classify(double lower_margin, double lower_budget, double upper_margin, double upper_budget) noexcept;

/// R_{n-1} R_{n+1} / R_n^2 from one direct tail at n and the index-shift
/// recurrences in both directions. Needs n >= 1 (IndexError otherwise).
EvalResult turan_ratio(RemainderKind kind, QDomain const& dom, double tol);

/// Sharp lower constant: (1-q^{n+1})/(1-q^{n+2}) for tail_i and
/// (q-q^{n+2})/(1-q^{n+2}) for tail_j.
double best_constant(RemainderKind kind, double q, int n);

/// R_{n-1} R_{n+1} - R_n^2 summed from its closed-form series. Negative in-domain.
EvalResult turan_determinant_series(RemainderKind kind, QDomain const& dom, double tol);

/// Verdict at one point; throws ConsistencyError if the shift-recurrence ratio and
/// the determinant-series ratio disagree beyond their bounds.
TuranVerdict verify_turan(RemainderKind kind, QDomain const& dom, double tol);

struct SharpnessPoint {
    double z;
    double ratio;
    double best_constant;
    double deviation; ///< |ratio - best_constant|
};

struct SharpnessReport {
    std::vector<SharpnessPoint> points;
    double empirical_constant = 0.0; ///< max deviation / z over the sequence
    bool monotone = true;            ///< deviations strictly decreasing
};

/// Approach of the Turán ratio to its sharp constant along z -> 0.
/// z_sequence must be strictly decreasing and in-domain (ArgumentError otherwise).
SharpnessReport sharpness_probe(RemainderKind kind, double q, int n, std::span<double const> z_sequence,
                                double tol = kDefaultTol);

/// e^x - sum_{k<=n} x^k/k!, summed directly from k = n+1.
double classical_remainder(double x, int n);

/// Classical check  (n+1)/(n+2) <= I_{n-1} I_{n+1} / I_n^2 <= 1  for e^x.
TuranVerdict verify_alzer(double x, int n);

struct QLimitPoint {
    double q;
    double q_ratio;
    double classical_ratio;
    double deviation;
};

struct QLimitReport {
    std::vector<QLimitPoint> points;
    bool monotone = true; ///< deviations strictly decreasing along the sequence
};

/// Compares the tail_j ratio at z = (1-q) x with the classical ratio at x.
/// q_sequence must be strictly increasing inside (0,1).
QLimitReport q_limit_check(double x, int n, std::span<double const> q_sequence, double tol = kDefaultTol);

} // namespace qturan
