#pragma once

#include <vector>

#include "logcalc/divisor.hpp"
#include "logcalc/ring.hpp"

namespace logcalc {

// Total Chern class of a formal bundle: c = 1 + c_1 + c_2 + ... with c_k in
// degree 2k, together with a rank. Virtual classes (rank 0, or c_k != 0 above
// the rank) are allowed; rank_violations reports where the input breaks the
// vanishing a genuine rank-r bundle would satisfy.
struct TotalChern {
    int rank = 0;
    CohClass c;

    CohClass chern_component(int k) const { return c.graded_part(2 * k); }

    std::vector<int> rank_violations() const {
        std::vector<int> out;
        for (const auto& [d, coords] : c.components()) {
            (void)coords;
            if (d / 2 > rank) out.push_back(d / 2);
        }
        return out;
    }
};

inline TotalChern make_total_chern(int rank, const CohClass& c) {
    if (rank < 0) throw std::invalid_argument("total chern: negative rank");
    if (c.scalar_part() != Rational(1))
        throw std::invalid_argument("total chern: degree-0 component must be 1");
    return TotalChern{rank, c};
}

namespace series {

// exact scalar power series, coefficient of t^j at index j
using Scalar = std::vector<Rational>;

inline Scalar mul(const Scalar& a, const Scalar& b, int upto) {
    Scalar r(upto + 1);
    for (int i = 0; i <= upto && i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= upto && j < static_cast<int>(b.size()); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

inline Scalar inverse(const Scalar& a, int upto) {
    if (a.empty() || a[0].is_zero())
        throw std::invalid_argument("series: inverse needs a unit constant term");
    Scalar r(upto + 1);
    r[0] = a[0].inverse();
    for (int k = 1; k <= upto; ++k) {
        Rational acc(0);
        for (int j = 1; j <= k; ++j)
            if (j < static_cast<int>(a.size())) acc += a[j] * r[k - j];
        r[k] = -r[0] * acc;
    }
    return r;
}

// log of a series with constant term 1, via integrating a'/a
inline Scalar log(const Scalar& a, int upto) {
    if (a.empty() || a[0] != Rational(1))
        throw std::invalid_argument("series: log needs constant term 1");
    Scalar da(upto + 1);
    for (int j = 1; j <= upto && j < static_cast<int>(a.size()); ++j)
        da[j - 1] = Rational(j) * a[j];
    Scalar q = mul(da, inverse(a, upto), upto);
    Scalar l(upto + 1);
    for (int k = 1; k <= upto; ++k) l[k] = q[k - 1] / Rational(k);
    return l;
}

// L(t) = log(t / (1 - e^{-t})) up to t^upto; the exponents of the Todd class.
inline Scalar todd_log(int upto) {
    Scalar a(upto + 1);  // (1 - e^{-t}) / t
    for (int j = 0; j <= upto; ++j) {
        Rational c(BigInt(1), BigInt::factorial(static_cast<unsigned>(j + 1)));
        a[j] = (j % 2 == 0) ? c : -c;
    }
    return log(inverse(a, upto), upto);
}

}  // namespace series

// Newton's identities: p_1 = c_1, p_k = c_1 p_{k-1} - c_2 p_{k-2} + ...
// + (-1)^{k-1} k c_k. Returned list holds p_1..p_upto; p_k sits in degree 2k.
inline std::vector<CohClass> power_sums(const TotalChern& tc, int upto) {
    const GradedRing& ring = tc.c.ring();
    std::vector<CohClass> p;
    p.reserve(upto);
    for (int k = 1; k <= upto; ++k) {
        CohClass acc = CohClass::zero(ring);
        for (int i = 1; i < k; ++i) {
            CohClass term = tc.chern_component(i) * p[k - i - 1];
            acc = acc + (i % 2 == 1 ? term : -term);
        }
        CohClass tail = Rational(k) * tc.chern_component(k);
        acc = acc + (k % 2 == 1 ? tail : -tail);
        p.push_back(acc);
    }
    return p;
}

// ch = rank + sum p_k / k!
inline CohClass chern_character(const TotalChern& tc) {
    const GradedRing& ring = tc.c.ring();
    const int n = ring.truncation() / 2;
    CohClass out = CohClass::unit(ring, Rational(tc.rank));
    auto p = power_sums(tc, n);
    for (int k = 1; k <= n; ++k)
        out = out + p[k - 1] * Rational(BigInt(1), BigInt::factorial(static_cast<unsigned>(k)));
    return out;
}

// td = exp(sum l_j p_j) with l_j the coefficients of log(t/(1-e^{-t})).
// Low terms: 1 + c_1/2 + (c_1^2 + c_2)/12 + c_1 c_2 / 24 + ...
inline CohClass todd_class(const TotalChern& tc) {
    const GradedRing& ring = tc.c.ring();
    const int n = ring.truncation() / 2;
    series::Scalar l = series::todd_log(n);
    auto p = power_sums(tc, n);
    CohClass arg = CohClass::zero(ring);
    for (int j = 1; j <= n; ++j) arg = arg + l[j] * p[j - 1];
    return exp_class(arg);
}

// s(N) with s(N) c(N) = 1 exactly
inline CohClass segre(const TotalChern& tc) { return invert(tc.c); }

// c(dual bundle): flips the sign of the odd Chern components
inline CohClass dual_chern(const CohClass& c) {
    CohClass out = CohClass::zero(c.ring());
    for (const auto& [d, coords] : c.components()) {
        (void)coords;
        CohClass part = c.graded_part(d);
        out = out + ((d / 2) % 2 == 1 ? -part : part);
    }
    return out;
}

// c of the structure-sheaf pushforward of an SC divisor: the exact sequences
// 0 -> O(-V_i) -> O -> O_{V_i} -> 0 give prod_i (1 - v_i)^{-1}.
inline CohClass sheaf_chern_of_divisor(const Space& s, const SCArrangement& arr) {
    if (arr.space.ring != s.ring)
        throw std::invalid_argument("sheaf chern: arrangement space mismatch");
    CohClass out = CohClass::unit(s.ring);
    for (const auto& v : arr.classes) out = out * invert(CohClass::unit(s.ring) - v);
    return out;
}

// Consistency of the log-cotangent route with the log-tangent route:
// dual(c(TX(-log V))) = dual(c(TX)) * c(pushforward of O_V), both sides exact.
inline Verdict omx_log_consistency(const Space& s, const SCArrangement& arr) {
    CohClass lhs = dual_chern(log_chern(s, strata(arr)));
    CohClass rhs = dual_chern(s.tangent_chern()) * sheaf_chern_of_divisor(s, arr);
    return Verdict::compare("log-cotangent-consistency", lhs, rhs);
}

}  // namespace logcalc
