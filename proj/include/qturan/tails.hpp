#pragma once

#include "qturan/qcore.hpp"

namespace qturan {

/// tail_i: I_n(q;z) = sum_{k>n} z^k/(q;q)_k,                 0 < z < 1
/// tail_j: J_n(q;z) = sum_{k>n} q^{k(k-1)/2} z^k/(q;q)_k,    z > 0
///
/// J_n is the remainder of E(q;z). With the empty partial sum, I_{-1} = e(q;z)
/// and J_{-1} = E(q;z); those are reachable through shift_remainder.
enum class RemainderKind { tail_i, tail_j };

enum class ShiftDirection { down, up };

char kind_letter(RemainderKind kind) noexcept;

/// Throws DomainError unless z lies in the open range of kind.
void require_remainder_domain(RemainderKind kind, QDomain const& dom);

/// k-th series term of the function whose remainder kind describes.
double series_term(RemainderKind kind, double q, double z, int k);

/// Remainder at dom.n(), summed directly from k = n+1 onward.
///
/// tol is the relative truncation tolerance. The result is strictly positive;
/// a remainder too small for double precision raises ConsistencyError.
EvalResult remainder(RemainderKind kind, QDomain const& dom, double tol);

/// Index shift of a remainder value known at dom.n().
///
/// down: R_{n-1} = R_n + t_n.  up: R_{n+1} = R_n - t_{n+1}.
/// An up-shift that is not strictly positive signals lost precision and throws
/// ConsistencyError rather than being clamped.
double shift_remainder(RemainderKind kind, QDomain const& dom, double value_at_n, ShiftDirection direction);

} // namespace qturan
