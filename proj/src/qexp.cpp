#include "qturan/qexp.hpp"

#include "qturan/errors.hpp"
#include "qturan/series.hpp"

#include <cmath>
#include <string>

namespace qturan {

namespace {

// Near the unit circle the small-e series converges like z^k; a cross-check
// there runs the series at a looser tolerance than requested.
constexpr double kSlowSeriesThreshold = 0.9;
constexpr double kSlowSeriesWidening = 100.0;

series::Family family(QExpKind kind)
{
    return kind == QExpKind::small_e ? series::Family::small_e : series::Family::big_e;
}

void require_tol(double tol)
{
    if (!(tol > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
}

EvalResult by_series(QExpKind kind, QDomain const& dom, double tol)
{
    auto const s = series::full_series(family(kind), dom.q(), dom.z(), tol);
    return {s.value, s.abs_error(), Method::series};
}

EvalResult by_product(QExpKind kind, QDomain const& dom, double tol)
{
    if (kind == QExpKind::big_e) {
        auto r = qpoch_inf(-dom.z(), dom.q(), tol);
        return {r.value, r.abs_error, Method::product};
    }
    auto const p = qpoch_inf(dom.z(), dom.q(), tol);
    double const value = 1.0 / p.value;
    // |1/p - 1/p~| <= |p - p~| / (p (p - |p - p~|)) to first order, plus one rounding.
    double const rel = p.abs_error / (p.value - p.abs_error);
    return {value, value * (rel + kEps), Method::product};
}

} // namespace

void require_qexp_domain(QExpKind kind, QDomain const& dom)
{
    double const z = dom.z();
    if (kind == QExpKind::small_e) {
        if (!(z >= 0.0 && z < 1.0)) {
            throw DomainError("e(q;z) requires 0 <= z < 1, got z = " + std::to_string(z));
        }
    } else if (!(z >= 0.0)) {
        throw DomainError("E(q;z) requires z >= 0, got z = " + std::to_string(z));
    }
}

EvalResult eval_qexp(QExpKind kind, QDomain const& dom, double tol, QExpMethod method)
{
    require_qexp_domain(kind, dom);
    require_tol(tol);
    if (dom.z() == 0.0) {
        return {1.0, 0.0, method == QExpMethod::series ? Method::series : Method::product};
    }
    switch (method) {
    case QExpMethod::series: return by_series(kind, dom, tol);
    case QExpMethod::product: return by_product(kind, dom, tol);
    case QExpMethod::cross_checked: break;
    }

    double series_tol = tol;
    if (kind == QExpKind::small_e && dom.z() > kSlowSeriesThreshold) {
        series_tol *= kSlowSeriesWidening;
    }
    auto const s = by_series(kind, dom, series_tol);
    auto const p = by_product(kind, dom, tol);
    double const budget = s.abs_error + p.abs_error;
    if (!(std::abs(s.value - p.value) <= budget)) {
        throw ConsistencyError("series and product routes disagree: |" + std::to_string(s.value) + " - "
                               + std::to_string(p.value) + "| > " + std::to_string(budget));
    }
    return {p.value, p.abs_error, Method::cross_checked};
}

double euler_pair_residual(double q, double z, double tol)
{
    QDomain const dom(q, z, 0);
    if (!(z > 0.0 && z < 1.0)) {
        throw DomainError("euler_pair_residual requires 0 < z < 1");
    }
    require_tol(tol);
    auto const e = by_series(QExpKind::small_e, dom, tol);
    auto const big_at_minus_z = qpoch_inf(z, q, tol);
    double const residual = e.value * big_at_minus_z.value - 1.0;
    double const bound = e.abs_error * std::abs(big_at_minus_z.value)
                         + big_at_minus_z.abs_error * e.value
                         + e.abs_error * big_at_minus_z.abs_error + 2.0 * kEps;
    if (!(std::abs(residual) <= bound)) {
        throw ConsistencyError("Euler pairing residual " + std::to_string(residual)
                               + " exceeds its error bound " + std::to_string(bound));
    }
    return residual;
}

} // namespace qturan
