#include "qturan/turan.hpp"

#include "qturan/errors.hpp"
#include "qturan/series.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace qturan {

namespace {

using series::Family;

Family family(RemainderKind kind)
{
    return kind == RemainderKind::tail_i ? Family::small_e : Family::big_e;
}

void require_turan_index(int n)
{
    if (n < 1) {
        throw IndexError("Turán expressions need n >= 1 (R_{n-1} must be a remainder), got n = "
                         + std::to_string(n));
    }
}

void require_tol(double tol)
{
    if (!(tol > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
}

// Both margins in absolute units, with N the normalized determinant, S the
// normalized tail, g = 1 - c the sharp gap, s = S - 1 and N1 = N - g:
//   upper = N / S^2
//   lower = (g s (2 + s) - N1) / S^2
// s and N1 are summed on their own, so lower keeps full relative accuracy even
// when it is many orders of magnitude below g.
struct Margins {
    double ratio;
    double ratio_err;
    double upper;
    double upper_err;
    double lower;
    double lower_err;
};

Margins margins(Family f, double q, double z, int n, double tol)
{
    auto const s = series::normalized_tail_excess(f, q, z, n, tol);
    auto const n1 = series::normalized_neg_determinant_excess(f, q, z, n, tol);
    double const gap = series::sharp_gap(f, q, n);
    double const gap_rel = 8.0 * kEps;

    double const s_rel = s.value > 0.0 ? s.abs_error() / s.value : 0.0;
    double const big_s = 1.0 + s.value;
    double const big_s_rel = s.abs_error() / big_s + kEps;
    double const big_n = gap + n1.value;
    double const big_n_rel = (gap * gap_rel + n1.abs_error()) / big_n + kEps;
    double const s2 = big_s * big_s;

    double const upper = big_n / s2;
    double const upper_err = upper * (big_n_rel + 2.0 * big_s_rel + 2.0 * kEps);

    double const a = gap * s.value * (2.0 + s.value);
    double const a_err = a * (gap_rel + 2.0 * s_rel + 3.0 * kEps);
    double const lower = (a - n1.value) / s2;
    double const lower_err = (a_err + n1.abs_error() + kEps * (a + n1.value)) / s2
                             + std::abs(lower) * (2.0 * big_s_rel + 2.0 * kEps);
    // Read the ratio off whichever side of it is the smaller number.
    if (upper <= 0.5) {
        return {1.0 - upper, upper_err + kEps, upper, upper_err, lower, lower_err};
    }
    double const c = 1.0 - gap;
    double const ratio = series::sharp_constant(f, q, n) + lower;
    return {ratio, lower_err + 4.0 * kEps * c + kEps * ratio, upper, upper_err, lower, lower_err};
}

TuranVerdict make_verdict(Margins const& m, double lower_constant)
{
    TuranVerdict v;
    v.ratio = m.ratio;
    v.lower_constant = lower_constant;
    v.upper_constant = 1.0;
    v.lower_margin = m.lower;
    v.upper_margin = m.upper;
    // A verdict must be visible in the reported doubles, so neither budget
    // drops below the rounding of the ratio itself.
    double const representation = kEps * std::max(m.ratio, lower_constant);
    v.error_budget = kVerdictSafety * (m.lower_err + representation);
    v.upper_error_budget = kVerdictSafety * (m.upper_err + representation);
    v.outcome = classify(v.lower_margin, v.error_budget, v.upper_margin, v.upper_error_budget);
    return v;
}

EvalResult classical_tail(double x, int n)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("classical remainder requires finite x > 0");
    }
    if (n < 0) {
        throw DomainError("index n must be >= 0");
    }
    auto const lead = series::leading_term(Family::classical, 0.0, x, n);
    if (!(lead.value > 0.0) || !std::isfinite(lead.value)) {
        throw ConsistencyError("classical remainder is not representable in double precision");
    }
    auto const tail = series::normalized_tail(Family::classical, 0.0, x, n, kDefaultTol);
    double const value = lead.value * tail.value;
    return {value, lead.value * tail.abs_error() + value * (lead.rel_error + 2.0 * kEps), Method::tail_series};
}

} // namespace

std::string_view to_string(Outcome outcome) noexcept
{
    switch (outcome) {
    case Outcome::certified: return "certified";
    case Outcome::violated: return "violated";
    case Outcome::indeterminate: return "indeterminate";
    }
    return "unknown";
}

Outcome classify(double lower_margin, double lower_budget, double upper_margin, double upper_budget) noexcept
{
    if (lower_margin < -lower_budget || upper_margin < -upper_budget) {
        return Outcome::violated;
    }
    if (lower_margin > lower_budget && upper_margin > upper_budget) {
        return Outcome::certified;
    }
    return Outcome::indeterminate;
}

EvalResult turan_ratio(RemainderKind kind, QDomain const& dom, double tol)
{
    require_turan_index(dom.n());
    require_remainder_domain(kind, dom);
    require_tol(tol);

    // Index shifts R_{n-1} = R_n + t_n and R_{n+1} = R_n - t_{n+1}, carried out
    // in units of t_{n+1} so nothing underflows for small z or large n.
    auto const f = family(kind);
    int const n = dom.n();
    auto const tail = series::normalized_tail(f, dom.q(), dom.z(), n, tol);
    double const s = tail.value;
    double const rho = 1.0 / series::tail_ratio(f, dom.q(), dom.z(), n); // t_n / t_{n+1}
    double const down = s + rho;
    double const up = s - 1.0;
    if (!(up > 0.0)) {
        throw ConsistencyError("up-shifted remainder lost all precision at z = " + std::to_string(dom.z()));
    }
    double const ratio = (down / s) * (up / s);

    double const es = tail.abs_error();
    double const erho = rho * (series::tail_step_error(f) + kEps);
    double const rel = (es + erho + kEps * down) / down + (es + kEps * s) / up + 2.0 * es / s + 4.0 * kEps;
    return {ratio, ratio * rel, Method::tail_series};
}

double best_constant(RemainderKind kind, double q, int n)
{
    require_q(q);
    require_turan_index(n);
    return series::sharp_constant(family(kind), q, n);
}

EvalResult turan_determinant_series(RemainderKind kind, QDomain const& dom, double tol)
{
    require_turan_index(dom.n());
    require_remainder_domain(kind, dom);
    require_tol(tol);
    auto const f = family(kind);
    auto const lead = series::leading_term(f, dom.q(), dom.z(), dom.n());
    auto const neg_det = series::normalized_neg_determinant(f, dom.q(), dom.z(), dom.n(), tol);
    double const value = -(neg_det.value * lead.value) * lead.value;
    double const abs_error = neg_det.abs_error() * lead.value * lead.value
                             + std::abs(value) * (2.0 * lead.rel_error + 3.0 * kEps);
    return {value, abs_error, Method::series};
}

TuranVerdict verify_turan(RemainderKind kind, QDomain const& dom, double tol)
{
    require_turan_index(dom.n());
    require_remainder_domain(kind, dom);
    require_tol(tol);

    auto const m = margins(family(kind), dom.q(), dom.z(), dom.n(), tol);
    if (!(m.upper > 0.0)) {
        throw ConsistencyError("determinant series is not negative at z = " + std::to_string(dom.z()));
    }

    // The shift route loses all digits once R_n - t_{n+1} rounds to zero; then
    // there is nothing to cross-check.
    std::optional<EvalResult> shifted;
    try {
        shifted = turan_ratio(kind, dom, tol);
    } catch (ConsistencyError const&) {
    }
    if (shifted) {
        double const allowed = shifted->abs_error + m.ratio_err + kEps;
        if (!(std::abs(shifted->value - m.ratio) <= allowed)) {
            throw ConsistencyError("shift-recurrence ratio " + std::to_string(shifted->value)
                                   + " disagrees with determinant ratio " + std::to_string(m.ratio));
        }
    }

    return make_verdict(m, best_constant(kind, dom.q(), dom.n()));
}

SharpnessReport sharpness_probe(RemainderKind kind, double q, int n, std::span<double const> z_sequence, double tol)
{
    require_q(q);
    require_turan_index(n);
    require_tol(tol);
    if (z_sequence.empty()) {
        throw ArgumentError("sharpness probe needs at least one z value");
    }
    for (std::size_t i = 0; i < z_sequence.size(); ++i) {
        require_remainder_domain(kind, QDomain(q, z_sequence[i], n));
        if (i > 0 && !(z_sequence[i] < z_sequence[i - 1])) {
            throw ArgumentError("sharpness probe z sequence must be strictly decreasing");
        }
    }

    SharpnessReport report;
    double const c = best_constant(kind, q, n);
    for (double z : z_sequence) {
        auto const m = margins(family(kind), q, z, n, tol);
        double const deviation = std::abs(m.lower);
        if (!report.points.empty() && !(deviation < report.points.back().deviation)) {
            report.monotone = false;
        }
        report.empirical_constant = std::max(report.empirical_constant, deviation / z);
        report.points.push_back({z, m.ratio, c, deviation});
    }
    return report;
}

double classical_remainder(double x, int n)
{
    return classical_tail(x, n).value;
}

TuranVerdict verify_alzer(double x, int n)
{
    require_turan_index(n);
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("Alzer check requires finite x > 0");
    }
    auto const m = margins(Family::classical, 0.0, x, n, kDefaultTol);

    auto const below = classical_tail(x, n - 1);
    auto const mid = classical_tail(x, n);
    auto const above = classical_tail(x, n + 1);
    double const direct = (below.value / mid.value) * (above.value / mid.value);
    double const direct_err = direct
                              * (below.abs_error / below.value + above.abs_error / above.value
                                 + 2.0 * mid.abs_error / mid.value + 4.0 * kEps);
    if (!(std::abs(direct - m.ratio) <= direct_err + m.ratio_err + kEps)) {
        throw ConsistencyError("classical ratio routes disagree at x = " + std::to_string(x));
    }

    double const lower_constant = static_cast<double>(n + 1) / static_cast<double>(n + 2);
    return make_verdict(m, lower_constant);
}

QLimitReport q_limit_check(double x, int n, std::span<double const> q_sequence, double tol)
{
    require_turan_index(n);
    require_tol(tol);
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("q-limit check requires finite x > 0");
    }
    if (q_sequence.empty()) {
        throw ArgumentError("q-limit check needs at least one q value");
    }
    for (std::size_t i = 0; i < q_sequence.size(); ++i) {
        require_q(q_sequence[i]);
        if (i > 0 && !(q_sequence[i] > q_sequence[i - 1])) {
            throw ArgumentError("q sequence must be strictly increasing");
        }
    }

    double const classical = margins(Family::classical, 0.0, x, n, tol).ratio;
    QLimitReport report;
    for (double q : q_sequence) {
        double const z = (1.0 - q) * x;
        double const qr = margins(Family::big_e, q, z, n, tol).ratio;
        double const deviation = std::abs(qr - classical);
        if (!report.points.empty() && !(deviation < report.points.back().deviation)) {
            report.monotone = false;
        }
        report.points.push_back({q, qr, classical, deviation});
    }
    return report;
}

} // namespace qturan
