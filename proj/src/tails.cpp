#include "qturan/tails.hpp"

#include "qturan/errors.hpp"
#include "qturan/series.hpp"

#include <cmath>
#include <string>

namespace qturan {

namespace {

series::Family family(RemainderKind kind)
{
    return kind == RemainderKind::tail_i ? series::Family::small_e : series::Family::big_e;
}

} // namespace

char kind_letter(RemainderKind kind) noexcept
{
    return kind == RemainderKind::tail_i ? 'I' : 'E';
}

void require_remainder_domain(RemainderKind kind, QDomain const& dom)
{
    double const z = dom.z();
    if (kind == RemainderKind::tail_i) {
        if (!(z > 0.0 && z < 1.0)) {
            throw DomainError("I_n(q;z) requires 0 < z < 1, got z = " + std::to_string(z));
        }
    } else if (!(z > 0.0)) {
        throw DomainError("J_n(q;z) requires z > 0, got z = " + std::to_string(z));
    }
}

double series_term(RemainderKind kind, double q, double z, int k)
{
    if (k < 0) {
        throw DomainError("series term index must be >= 0");
    }
    if (k == 0) {
        return 1.0;
    }
    return series::leading_term(family(kind), q, z, k - 1).value;
}

EvalResult remainder(RemainderKind kind, QDomain const& dom, double tol)
{
    require_remainder_domain(kind, dom);
    if (!(tol > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    auto const f = family(kind);
    auto const lead = series::leading_term(f, dom.q(), dom.z(), dom.n());
    if (!(lead.value > 0.0) || !std::isfinite(lead.value)) {
        throw ConsistencyError("remainder leading term is not representable in double precision");
    }
    auto const tail = series::normalized_tail(f, dom.q(), dom.z(), dom.n(), tol);
    double const value = lead.value * tail.value;
    double const abs_error = lead.value * tail.abs_error() + value * (lead.rel_error + 2.0 * kEps);
    return {value, abs_error, Method::tail_series};
}

double shift_remainder(RemainderKind kind, QDomain const& dom, double value_at_n, ShiftDirection direction)
{
    require_remainder_domain(kind, dom);
    if (!std::isfinite(value_at_n)) {
        throw ArgumentError("remainder value must be finite");
    }
    int const n = dom.n();
    if (direction == ShiftDirection::down) {
        return value_at_n + series_term(kind, dom.q(), dom.z(), n);
    }
    double const next = value_at_n - series_term(kind, dom.q(), dom.z(), n + 1);
    if (!(next > 0.0)) {
        throw ConsistencyError("up-shifted remainder is not positive (" + std::to_string(next)
                               + "); the input value carries too much error");
    }
    return next;
}

} // namespace qturan
