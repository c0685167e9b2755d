#pragma once

#include <string>
#include <vector>

#include "logcalc/ring.hpp"

namespace logcalc {

// Outcome of an exact identity check. A pass is an exact-zero difference,
// never a tolerance.
struct Verdict {
    std::string name;
    bool pass = false;
    CohClass lhs;
    CohClass rhs;
    CohClass difference;
    std::string detail;

    static Verdict compare(std::string name, const CohClass& lhs, const CohClass& rhs,
                           std::string detail = {}) {
        Verdict v;
        v.name = std::move(name);
        v.lhs = lhs;
        v.rhs = rhs;
        v.difference = lhs - rhs;
        v.pass = v.difference.is_zero();
        v.detail = std::move(detail);
        return v;
    }

    // smallest degree with a nonzero difference component, -1 when equal
    int first_mismatch_degree() const {
        if (difference.is_zero() || !difference.valid()) return -1;
        return difference.components().begin()->first;
    }
};

// A simple-crossings divisor presented by the degree-2 classes of its smooth
// components. Empty intersections need no flags: if some V_I is empty the
// corresponding cup products vanish on their own.
struct SCArrangement {
    Space space;
    std::vector<std::string> labels;
    std::vector<CohClass> classes;

    std::size_t size() const { return classes.size(); }
};

inline SCArrangement make_arrangement(Space space, std::vector<std::string> labels,
                                      std::vector<CohClass> classes) {
    if (labels.size() != classes.size())
        throw std::invalid_argument("arrangement: one label per class required");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].ring() != space.ring)
            throw std::invalid_argument("arrangement: class ring mismatch for " + labels[i]);
        if (!classes[i].is_homogeneous(2))
            throw std::invalid_argument("arrangement: class for " + labels[i] +
                                        " is not homogeneous of degree 2");
        for (std::size_t j = 0; j < i; ++j)
            if (labels[j] == labels[i])
                throw std::invalid_argument("arrangement: duplicate label " + labels[i]);
    }
    SCArrangement a;
    a.space = std::move(space);
    a.labels = std::move(labels);
    a.classes = std::move(classes);
    return a;
}

// Stratum classes PD[V^(k)], k = 1..depth. For SC divisors these are derived
// as elementary symmetric polynomials; general normal-crossings input supplies
// them directly.
struct StrataData {
    Space space;
    int depth = 0;
    std::vector<CohClass> pd;  // pd[k-1] has degree 2k

    const CohClass& stratum(int k) const { return pd[static_cast<std::size_t>(k) - 1]; }
};

inline StrataData make_strata(Space space, std::vector<CohClass> pd) {
    for (std::size_t k = 1; k <= pd.size(); ++k) {
        const CohClass& c = pd[k - 1];
        if (c.ring() != space.ring)
            throw std::invalid_argument("strata: class ring mismatch at depth " +
                                        std::to_string(k));
        if (!c.is_homogeneous(2 * static_cast<int>(k)))
            throw std::invalid_argument("strata: PD[V^(" + std::to_string(k) +
                                        ")] is not homogeneous of degree " +
                                        std::to_string(2 * k));
    }
    StrataData d;
    d.space = std::move(space);
    d.depth = static_cast<int>(pd.size());
    d.pd = std::move(pd);
    return d;
}

// strata of V union a smooth V': pd'[k] = pd[k] + v' * pd[k-1], pd[0] = 1
inline StrataData sc_union_strata(const StrataData& d, const CohClass& v_prime) {
    if (!v_prime.is_homogeneous(2))
        throw std::invalid_argument("union strata: added class must be degree 2");
    if (v_prime.ring() != d.space.ring)
        throw std::invalid_argument("union strata: class ring mismatch");
    std::vector<CohClass> pd(d.depth + 1, CohClass::zero(d.space.ring));
    for (int k = 1; k <= d.depth + 1; ++k) {
        CohClass below = k == 1 ? CohClass::unit(d.space.ring) : d.stratum(k - 1);
        CohClass own = k <= d.depth ? d.stratum(k) : CohClass::zero(d.space.ring);
        pd[k - 1] = own + v_prime * below;
    }
    return make_strata(d.space, std::move(pd));
}

// pd[k] = e_k(v_1, ..., v_N): the stratum classes of an SC divisor are the
// elementary symmetric polynomials in the component classes.
inline StrataData strata(const SCArrangement& arr) {
    StrataData d = make_strata(arr.space, {});
    for (const auto& v : arr.classes) d = sc_union_strata(d, v);
    return d;
}

inline CohClass strata_total(const StrataData& d) {
    CohClass t = CohClass::unit(d.space.ring);
    for (const auto& c : d.pd) t = t + c;
    return t;
}

// c(TX(-log V)) = c(TX) / (1 + PD[V^(1)] + PD[V^(2)] + ...)
inline CohClass log_chern(const Space& s, const StrataData& d) {
    if (d.space.ring != s.ring) throw std::invalid_argument("log_chern: space mismatch");
    return s.tangent_chern() * invert(strata_total(d));
}

// c_1(O_X(V)) = PD_X[V]
inline CohClass line_bundle_c1(const SCArrangement& arr) {
    CohClass sum = CohClass::zero(arr.space.ring);
    for (const auto& v : arr.classes) sum = sum + v;
    return sum;
}

inline CohClass line_bundle_c1(const StrataData& d) {
    return d.depth >= 1 ? d.stratum(1) : CohClass::zero(d.space.ring);
}

inline SCArrangement arrangement_union(const SCArrangement& a, const SCArrangement& b) {
    if (a.space.ring != b.space.ring)
        throw std::invalid_argument("union: arrangements live on different spaces");
    for (const auto& la : a.labels)
        for (const auto& lb : b.labels)
            if (la == lb) throw std::invalid_argument("union: overlapping label " + la);
    std::vector<std::string> labels = a.labels;
    labels.insert(labels.end(), b.labels.begin(), b.labels.end());
    std::vector<CohClass> classes = a.classes;
    classes.insert(classes.end(), b.classes.begin(), b.classes.end());
    return make_arrangement(a.space, std::move(labels), std::move(classes));
}

// c_1(O(V u V')) = c_1(O(V)) + c_1(O(V'))
inline Verdict union_c1_additivity(const SCArrangement& a, const SCArrangement& b) {
    SCArrangement u = arrangement_union(a, b);
    return Verdict::compare("union-c1-additivity", line_bundle_c1(u),
                            line_bundle_c1(a) + line_bundle_c1(b));
}

// c(TX(-log(V u V'))) * (1 + v') = c(TX(-log V)) for smooth V'
inline Verdict smooth_split_check(const Space& s, const StrataData& d, const CohClass& v_prime) {
    StrataData u = sc_union_strata(d, v_prime);
    CohClass lhs = log_chern(s, u) * (CohClass::unit(s.ring) + v_prime);
    CohClass rhs = log_chern(s, d);
    return Verdict::compare("smooth-split", lhs, rhs);
}

}  // namespace logcalc
