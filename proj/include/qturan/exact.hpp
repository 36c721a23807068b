#pragma once

// Exact-arithmetic counterparts of the qcore building blocks, generic over any
// ordered field type (e.g. boost::multiprecision::cpp_rational). Used where q
// and z are rational and a check must hold without rounding.

#include <vector>

namespace qturan::exact {

template <typename Field>
Field qpoch(Field const& a, Field const& q, int n)
{
    Field p{1};
    Field qk{1};
    for (int k = 0; k < n; ++k) {
        p *= Field{1} - a * qk;
        qk *= q;
    }
    return p;
}

template <typename Field>
Field qfact(Field const& q, int n)
{
    return qpoch(q, q, n);
}

/// q-integers [m]_q = (1 - q^m) / (1 - q) for m = 1 .. count.
template <typename Field>
std::vector<Field> q_integers(Field const& q, int count)
{
    std::vector<Field> out;
    out.reserve(static_cast<std::size_t>(count));
    Field const denom = Field{1} - q;
    Field qm = q;
    for (int m = 1; m <= count; ++m) {
        out.push_back((Field{1} - qm) / denom);
        qm *= q;
    }
    return out;
}

} // namespace qturan::exact
