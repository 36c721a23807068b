#include "qturan/qcore.hpp"

#include "qturan/accumulate.hpp"
#include "qturan/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace qturan {

namespace {

constexpr int kMaxProductFactors = 50'000'000;

std::vector<double> qfact_prefix(double q, int n)
{
    std::vector<double> table(static_cast<std::size_t>(n) + 1);
    double p = 1.0;
    table[0] = p;
    for (int k = 1; k <= n; ++k) {
        p *= one_minus_qpow(q, k);
        table[static_cast<std::size_t>(k)] = p;
    }
    return table;
}

// Prefix tables are immutable once published; growing one replaces the
// shared_ptr, so readers never observe a partially written table.
class QFactorialCache {
public:
    double get(double q, int n)
    {
        auto const key = std::bit_cast<std::uint64_t>(q);
        {
            std::shared_lock lock(mutex_);
            auto it = tables_.find(key);
            if (it != tables_.end() && static_cast<int>(it->second->size()) > n) {
                return (*it->second)[static_cast<std::size_t>(n)];
            }
        }
        int const want = std::max(n, 64);
        auto table = std::make_shared<std::vector<double> const>(qfact_prefix(q, want));
        std::unique_lock lock(mutex_);
        auto& slot = tables_[key];
        if (!slot || slot->size() < table->size()) {
            slot = table;
        }
        return (*slot)[static_cast<std::size_t>(n)];
    }

private:
    std::shared_mutex mutex_;
    std::unordered_map<std::uint64_t, std::shared_ptr<std::vector<double> const>> tables_;
};

QFactorialCache& cache()
{
    static QFactorialCache instance;
    return instance;
}

void require_index(int n)
{
    if (n < 0) {
        throw DomainError("index n must be >= 0, got " + std::to_string(n));
    }
}

} // namespace

std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::series: return "series";
    case Method::product: return "product";
    case Method::tail_series: return "tail_series";
    case Method::cross_checked: return "cross_checked";
    }
    return "unknown";
}

void require_q(double q)
{
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("q must lie in (0,1), got " + std::to_string(q));
    }
}

QDomain::QDomain(double q, double z, int n) : q_(q), z_(z), n_(n)
{
    require_q(q);
    require_index(n);
    if (!std::isfinite(z)) {
        throw DomainError("z must be finite");
    }
}

double one_minus_qpow(double q, int m)
{
    // -expm1(m log q): relative error stays a few ulps for every m and q.
    return -std::expm1(static_cast<double>(m) * std::log(q));
}

double qpoch(double a, double q, int n)
{
    require_q(q);
    require_index(n);
    CompensatedProduct prod;
    for (int k = 0; k < n; ++k) {
        prod *= 1.0 - a * std::pow(q, k);
    }
    return prod.value();
}

EvalResult qpoch_inf(double a, double q, double tol)
{
    require_q(q);
    if (!(tol > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    if (!std::isfinite(a)) {
        throw DomainError("a must be finite");
    }
    if (a == 0.0) {
        return {1.0, 0.0, Method::product};
    }

    // Once |a q^K| < cut <= (1-q)/2, every remaining factor satisfies |x| <= 1/2
    // and sum_k |log(1 - a q^k)| <= 2 |a| q^K / (1 - q) <= tol.
    double const one_minus_q = 1.0 - q;
    double const cut = std::min(tol, 1.0) * one_minus_q / 2.0;

    CompensatedProduct prod;
    double rel_round = 0.0;
    double residual = 0.0;
    for (int k = 0;; ++k) {
        if (k > kMaxProductFactors) {
            throw ConsistencyError("infinite product failed to reach its cut-off");
        }
        double const x = a * std::pow(q, k);
        if (std::abs(x) < cut) {
            residual = 2.0 * std::abs(x) * (1.0 + 4.0 * kEps) / one_minus_q * (1.0 + 2.0 * kEps);
            rel_round += static_cast<double>(k) * kEps;
            break;
        }
        double const f = 1.0 - x;
        if (f == 0.0) {
            return {0.0, 0.0, Method::product};
        }
        prod *= f;
        rel_round += (2.0 * kEps * std::abs(x)) / std::abs(f) + kEps;
    }
    double const value = prod.value();
    double const rel = std::expm1(rel_round) + std::expm1(residual);
    return {value, std::abs(value) * rel * (1.0 + 4.0 * kEps), Method::product};
}

double qfact(double q, int n)
{
    require_q(q);
    require_index(n);
    return cache().get(q, n);
}

double qfact_uncached(double q, int n)
{
    require_q(q);
    require_index(n);
    double p = 1.0;
    for (int k = 1; k <= n; ++k) {
        p *= one_minus_qpow(q, k);
    }
    return p;
}

double qpoch_multi(std::span<double const> a_list, double q, int n)
{
    if (a_list.empty()) {
        throw ArgumentError("qpoch_multi needs at least one base");
    }
    double p = 1.0;
    for (double a : a_list) {
        p *= qpoch(a, q, n);
    }
    return p;
}

} // namespace qturan
