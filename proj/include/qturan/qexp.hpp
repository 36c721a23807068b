#pragma once

#include "qturan/qcore.hpp"

namespace qturan {

/// e(q;z) = sum z^n/(q;q)_n = 1/(z;q)_inf on 0 <= z < 1, and
/// E(q;z) = sum q^{n(n-1)/2} z^n/(q;q)_n = (-z;q)_inf on z >= 0.
enum class QExpKind { small_e, big_e };

enum class QExpMethod { series, product, cross_checked };

/// Throws DomainError if z is outside the range accepted for kind.
void require_qexp_domain(QExpKind kind, QDomain const& dom);

/// Evaluates e(q;z) or E(q;z) at (dom.q(), dom.z()); dom.n() is ignored.
///
/// tol is a relative truncation tolerance for whichever route runs. In
/// cross_checked mode both routes run and must agree within the sum of their
/// error bounds (ConsistencyError otherwise); the product value is returned.
EvalResult eval_qexp(QExpKind kind, QDomain const& dom, double tol, QExpMethod method);

/// e(q;z) E(q;-z) - 1 with e from its series and E(q;-z) = (z;q)_inf from the product.
/// Throws ConsistencyError if the residual exceeds the combined error bounds.
double euler_pair_residual(double q, double z, double tol);

} // namespace qturan
