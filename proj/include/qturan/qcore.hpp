#pragma once

#include <span>
#include <string_view>

namespace qturan {

/// How an EvalResult was produced.
enum class Method { series, product, tail_series, cross_checked };

std::string_view to_string(Method m) noexcept;

/// A numeric value together with a conservative bound on its absolute error.
struct EvalResult {
    double value = 0.0;
    double abs_error = 0.0;
    Method method = Method::series;
};

/// Validated (q, z, n) parameter bundle.
///
/// Construction enforces 0 < q < 1, finite z and n >= 0. The z range depends on
/// which function consumes the domain, so each module applies its own z rule.
class QDomain {
public:
    QDomain(double q, double z, int n);

    [[nodiscard]] double q() const noexcept { return q_; }
    [[nodiscard]] double z() const noexcept { return z_; }
    [[nodiscard]] int n() const noexcept { return n_; }

    [[nodiscard]] QDomain with_n(int n) const { return {q_, z_, n}; }
    [[nodiscard]] QDomain with_z(double z) const { return {q_, z, n_}; }

private:
    double q_;
    double z_;
    int n_;
};

/// Throws DomainError unless 0 < q < 1.
void require_q(double q);

/// 1 - q^m for m >= 0 without cancellation as q approaches 1.
double one_minus_qpow(double q, int m);

/// Finite q-shifted factorial (a;q)_n = prod_{k<n} (1 - a q^k).
double qpoch(double a, double q, int n);

/// (a;q)_inf. tol bounds the relative truncation error of the infinite tail.
EvalResult qpoch_inf(double a, double q, double tol);

/// (q;q)_n through the shared prefix-product cache.
double qfact(double q, int n);

/// (q;q)_n computed afresh; bit-identical to qfact().
double qfact_uncached(double q, int n);

/// (a_1, ..., a_p; q)_n = prod_i (a_i;q)_n.
double qpoch_multi(std::span<double const> a_list, double q, int n);

} // namespace qturan
