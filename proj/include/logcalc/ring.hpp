#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logcalc/rational.hpp"

namespace logcalc {

// Exponent vector over the ring's generators, in declaration order.
// std::vector's lexicographic < doubles as the tie-break inside a fixed
// degree, so sorted exponent vectors are in ascending graded-lex order.
using Exponents = std::vector<int>;

// Polynomial in the free commutative algebra over the generators.
using Poly = std::map<Exponents, Rational>;

struct Generator {
    std::string name;
    int degree = 0;  // even, >= 2

    friend bool operator==(const Generator&, const Generator&) = default;
};

struct RingPresentation {
    std::vector<Generator> generators;
    std::vector<Poly> relations;  // homogeneous, even degree
    int truncation = 0;           // 2n; classes of degree > 2n vanish
};

namespace detail {

inline void add_term(Poly& p, const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

inline Exponents mul_expo(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

}  // namespace detail

class CohClass;

// Finitely presented, evenly graded, truncated commutative ring over Q with a
// fixed monomial basis per degree. Quotient bases are computed degreewise:
// enumerate the monomials of each degree, span the relation ideal's slice,
// row-reduce, and keep the non-pivot monomials. Pivots eliminate the
// graded-lex-smaller monomials, so each basis consists of the larger survivors
// (in Q[H,e]/(H^3, He, e^2+H^2) the degree-4 basis is {H^2} and e^2 -> -H^2).
class GradedRing {
public:
    GradedRing() = default;

    static GradedRing build(const RingPresentation& pres) {
        auto data = std::make_shared<Data>();
        data->pres = pres;
        validate(pres);
        const int n = pres.truncation / 2;
        data->monos.resize(n + 1);
        data->mono_index.resize(n + 1);
        data->rows.resize(n + 1);
        data->basis_cols.resize(n + 1);
        data->basis_monos.resize(n + 1);
        for (int k = 0; k <= n; ++k) {
            const int d = 2 * k;
            data->monos[k] = enumerate_monomials(pres, d);
            for (std::size_t i = 0; i < data->monos[k].size(); ++i)
                data->mono_index[k].emplace(data->monos[k][i], static_cast<int>(i));
            build_degree(*data, k);
        }
        if (data->basis_monos[0].size() != 1)
            throw std::invalid_argument("ring: degree-0 quotient is not spanned by 1 "
                                        "(a constant lies in the relation ideal)");
        GradedRing r;
        r.d_ = std::move(data);
        return r;
    }

    bool valid() const { return d_ != nullptr; }
    const RingPresentation& presentation() const { return data().pres; }
    int truncation() const { return data().pres.truncation; }
    int generator_count() const { return static_cast<int>(data().pres.generators.size()); }

    int basis_dim(int degree) const {
        if (degree < 0 || degree > truncation() || degree % 2 != 0) return 0;
        return static_cast<int>(data().basis_monos[degree / 2].size());
    }

    const std::vector<Exponents>& basis_monomials(int degree) const {
        return data().basis_monos[degree / 2];
    }

    int monomial_degree(const Exponents& e) const {
        const auto& gens = data().pres.generators;
        int d = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) d += e[i] * gens[i].degree;
        return d;
    }

    std::string monomial_name(const Exponents& e) const {
        const auto& gens = data().pres.generators;
        std::string s;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += gens[i].name;
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s.empty() ? "1" : s;
    }

    int generator_index(const std::string& name) const {
        const auto& gens = data().pres.generators;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == name) return static_cast<int>(i);
        return -1;
    }

    friend bool operator==(const GradedRing& a, const GradedRing& b) { return a.d_ == b.d_; }
    friend bool operator!=(const GradedRing& a, const GradedRing& b) { return a.d_ != b.d_; }

    // normal form of the degree-d slice of a polynomial, as basis coordinates
    std::vector<Rational> reduce_degree(int degree, const Poly& p) const {
        const auto& dat = data();
        const int k = degree / 2;
        std::vector<Rational> full(dat.monos[k].size());
        for (const auto& [e, c] : p) {
            auto it = dat.mono_index[k].find(e);
            if (it == dat.mono_index[k].end())
                throw std::invalid_argument("ring: monomial of unexpected degree");
            full[it->second] += c;
        }
        reduce_vector(k, full);
        std::vector<Rational> out;
        out.reserve(dat.basis_cols[k].size());
        for (int col : dat.basis_cols[k]) out.push_back(full[col]);
        return out;
    }

    // RREF rows of the relation ideal's degree-d slice (for diagnostics)
    std::vector<Poly> reduced_relations(int degree) const {
        const auto& dat = data();
        const int k = degree / 2;
        std::vector<Poly> out;
        for (const auto& row : dat.rows[k]) {
            Poly p;
            for (std::size_t i = 0; i < row.coeffs.size(); ++i)
                detail::add_term(p, dat.monos[k][i], row.coeffs[i]);
            out.push_back(std::move(p));
        }
        return out;
    }

private:
    struct Row {
        int pivot = -1;
        std::vector<Rational> coeffs;  // full width over monos[k], pivot entry 1
    };

    struct Data {
        RingPresentation pres;
        std::vector<std::vector<Exponents>> monos;       // per half-degree, ascending
        std::vector<std::map<Exponents, int>> mono_index;
        std::vector<std::vector<Row>> rows;              // RREF of the ideal slice
        std::vector<std::vector<int>> basis_cols;        // non-pivot columns
        std::vector<std::vector<Exponents>> basis_monos;
    };

    std::shared_ptr<const Data> d_;

    const Data& data() const {
        if (!d_) throw std::logic_error("ring: use of an empty GradedRing handle");
        return *d_;
    }

    static void validate(const RingPresentation& pres) {
        if (pres.truncation < 0 || pres.truncation % 2 != 0)
            throw std::invalid_argument("ring: truncation must be a nonnegative even integer");
        int max_gen_degree = 0;
        for (std::size_t i = 0; i < pres.generators.size(); ++i) {
            const auto& g = pres.generators[i];
            if (g.name.empty())
                throw std::invalid_argument("ring: generator with empty name");
            if (g.degree < 2 || g.degree % 2 != 0)
                throw std::invalid_argument("ring: generator " + g.name +
                                            " must have even degree >= 2");
            for (std::size_t j = 0; j < i; ++j)
                if (pres.generators[j].name == g.name)
                    throw std::invalid_argument("ring: duplicate generator name " + g.name);
            max_gen_degree = std::max(max_gen_degree, g.degree);
        }
        for (const auto& rel : pres.relations) {
            if (rel.empty()) continue;
            int deg = -1;
            for (const auto& [e, c] : rel) {
                (void)c;
                if (e.size() != pres.generators.size())
                    throw std::invalid_argument("ring: relation exponent arity mismatch");
                int d = 0;
                for (std::size_t i = 0; i < e.size(); ++i) {
                    if (e[i] < 0) throw std::invalid_argument("ring: negative exponent");
                    d += e[i] * pres.generators[i].degree;
                }
                if (deg == -1) deg = d;
                if (d != deg)
                    throw std::invalid_argument("ring: relation is not homogeneous");
            }
            if (deg > pres.truncation + max_gen_degree)
                throw std::invalid_argument("ring: relation degree exceeds truncation + "
                                            "max generator degree");
        }
    }

    static std::vector<Exponents> enumerate_monomials(const RingPresentation& pres, int degree) {
        std::vector<Exponents> out;
        Exponents cur(pres.generators.size(), 0);
        enumerate_rec(pres, 0, degree, cur, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    static void enumerate_rec(const RingPresentation& pres, std::size_t idx, int remaining,
                              Exponents& cur, std::vector<Exponents>& out) {
        if (idx == pres.generators.size()) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        const int gd = pres.generators[idx].degree;
        for (int e = 0; e * gd <= remaining; ++e) {
            cur[idx] = e;
            enumerate_rec(pres, idx + 1, remaining - e * gd, cur, out);
        }
        cur[idx] = 0;
    }

    static void build_degree(Data& data, int k) {
        const int degree = 2 * k;
        const auto& monos = data.monos[k];
        std::vector<std::vector<Rational>> raw;
        for (const auto& rel : data.pres.relations) {
            if (rel.empty()) continue;
            const int rel_deg = rel_degree(data.pres, rel);
            const int cof_deg = degree - rel_deg;
            if (cof_deg < 0 || cof_deg % 2 != 0) continue;
            for (const auto& m : data.monos[cof_deg / 2]) {
                std::vector<Rational> row(monos.size());
                for (const auto& [e, c] : rel) {
                    Exponents prod = detail::mul_expo(m, e);
                    row[data.mono_index[k].at(prod)] += c;
                }
                raw.push_back(std::move(row));
            }
        }
        // forward elimination, pivots on the leftmost (graded-lex smallest) column
        std::vector<Row> rows;
        for (auto& v : raw) {
            for (const auto& r : rows) {
                const Rational& c = v[r.pivot];
                if (c.is_zero()) continue;
                Rational f = c;
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (!r.coeffs[i].is_zero()) v[i] -= f * r.coeffs[i];
            }
            int pivot = -1;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) {
                    pivot = static_cast<int>(i);
                    break;
                }
            if (pivot < 0) continue;
            Rational inv = v[pivot].inverse();
            for (auto& c : v) c *= inv;
            rows.push_back(Row{pivot, std::move(v)});
        }
        std::sort(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
        // back-substitute to reduced echelon form
        for (std::size_t i = rows.size(); i-- > 0;) {
            for (std::size_t j = 0; j < i; ++j) {
                const Rational c = rows[j].coeffs[rows[i].pivot];
                if (c.is_zero()) continue;
                for (std::size_t t = 0; t < rows[j].coeffs.size(); ++t)
                    if (!rows[i].coeffs[t].is_zero())
                        rows[j].coeffs[t] -= c * rows[i].coeffs[t];
            }
        }
        std::vector<bool> is_pivot(monos.size(), false);
        for (const auto& r : rows) is_pivot[r.pivot] = true;
        for (std::size_t i = 0; i < monos.size(); ++i)
            if (!is_pivot[i]) {
                data.basis_cols[k].push_back(static_cast<int>(i));
                data.basis_monos[k].push_back(monos[i]);
            }
        data.rows[k] = std::move(rows);
    }

    static int rel_degree(const RingPresentation& pres, const Poly& rel) {
        const auto& e = rel.begin()->first;
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * pres.generators[i].degree;
        return d;
    }

    void reduce_vector(int k, std::vector<Rational>& v) const {
        for (const auto& r : data().rows[k]) {
            const Rational c = v[r.pivot];
            if (c.is_zero()) continue;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!r.coeffs[i].is_zero()) v[i] -= c * r.coeffs[i];
        }
    }
};

// A cohomology class in normal form: one exact-rational coordinate vector per
// even degree up to the truncation. Immutable in practice; two classes are
// equal iff all coordinate vectors agree.
class CohClass {
public:
    CohClass() = default;

    static CohClass zero(const GradedRing& ring) {
        CohClass c;
        c.ring_ = ring;
        return c;
    }

    static CohClass unit(const GradedRing& ring, const Rational& value = Rational(1)) {
        CohClass c = zero(ring);
        if (!value.is_zero()) c.comp_[0] = {value};
        return c;
    }

    static CohClass generator(const GradedRing& ring, int index) {
        Poly p;
        Exponents e(ring.generator_count(), 0);
        e[index] = 1;
        p.emplace(std::move(e), Rational(1));
        return from_poly(ring, p);
    }

    static CohClass from_poly(const GradedRing& ring, const Poly& p) {
        std::map<int, Poly> buckets;
        for (const auto& [e, c] : p) {
            if (c.is_zero()) continue;
            int d = ring.monomial_degree(e);
            if (d > ring.truncation()) continue;  // truncation kills it
            if (d % 2 != 0) throw std::invalid_argument("class: odd-degree monomial");
            detail::add_term(buckets[d], e, c);
        }
        CohClass out = zero(ring);
        for (const auto& [d, poly] : buckets) out.set_component(d, ring.reduce_degree(d, poly));
        return out;
    }

    bool valid() const { return ring_.valid(); }
    const GradedRing& ring() const { return ring_; }
    bool is_zero() const { return comp_.empty(); }

    // coordinates in basis[degree]; empty vector means zero
    std::vector<Rational> component(int degree) const {
        auto it = comp_.find(degree);
        if (it != comp_.end()) return it->second;
        return std::vector<Rational>(ring_.basis_dim(degree));
    }

    CohClass graded_part(int degree) const {
        CohClass out = zero(ring_);
        auto it = comp_.find(degree);
        if (it != comp_.end()) out.comp_[degree] = it->second;
        return out;
    }

    const std::map<int, std::vector<Rational>>& components() const { return comp_; }

    Rational scalar_part() const {
        auto it = comp_.find(0);
        return it == comp_.end() ? Rational(0) : it->second[0];
    }

    bool is_homogeneous(int degree) const {
        return comp_.empty() || (comp_.size() == 1 && comp_.begin()->first == degree);
    }

    int max_degree() const { return comp_.empty() ? 0 : comp_.rbegin()->first; }

    Poly to_poly() const {
        Poly p;
        for (const auto& [d, coords] : comp_) {
            const auto& monos = ring_.basis_monomials(d);
            for (std::size_t i = 0; i < coords.size(); ++i)
                detail::add_term(p, monos[i], coords[i]);
        }
        return p;
    }

    friend bool operator==(const CohClass& a, const CohClass& b) {
        return a.ring_ == b.ring_ && a.comp_ == b.comp_;
    }
    friend bool operator!=(const CohClass& a, const CohClass& b) { return !(a == b); }

    friend CohClass operator+(const CohClass& a, const CohClass& b) {
        check_same_ring(a, b);
        CohClass out = a;
        for (const auto& [d, coords] : b.comp_) {
            auto it = out.comp_.find(d);
            if (it == out.comp_.end()) {
                out.comp_[d] = coords;
            } else {
                for (std::size_t i = 0; i < coords.size(); ++i) it->second[i] += coords[i];
                if (all_zero(it->second)) out.comp_.erase(it);
            }
        }
        return out;
    }

    friend CohClass operator-(const CohClass& a, const CohClass& b) { return a + (-b); }

    CohClass operator-() const {
        CohClass out = *this;
        for (auto& [d, coords] : out.comp_) {
            (void)d;
            for (auto& c : coords) c = -c;
        }
        return out;
    }

    friend CohClass operator*(const CohClass& a, const CohClass& b) {
        check_same_ring(a, b);
        const GradedRing& ring = a.ring_;
        std::map<int, Poly> buckets;
        for (const auto& [d1, v1] : a.comp_) {
            const auto& m1 = ring.basis_monomials(d1);
            for (const auto& [d2, v2] : b.comp_) {
                const int d = d1 + d2;
                if (d > ring.truncation()) continue;
                const auto& m2 = ring.basis_monomials(d2);
                Poly& bucket = buckets[d];
                for (std::size_t i = 0; i < v1.size(); ++i) {
                    if (v1[i].is_zero()) continue;
                    for (std::size_t j = 0; j < v2.size(); ++j) {
                        if (v2[j].is_zero()) continue;
                        detail::add_term(bucket, detail::mul_expo(m1[i], m2[j]), v1[i] * v2[j]);
                    }
                }
            }
        }
        CohClass out = zero(ring);
        for (const auto& [d, poly] : buckets) out.set_component(d, ring.reduce_degree(d, poly));
        return out;
    }

    friend CohClass operator*(const Rational& s, const CohClass& a) {
        CohClass out = CohClass::zero(a.ring_);
        if (s.is_zero()) return out;
        out.comp_ = a.comp_;
        for (auto& [d, coords] : out.comp_) {
            (void)d;
            for (auto& c : coords) c *= s;
        }
        return out;
    }

    friend CohClass operator*(const CohClass& a, const Rational& s) { return s * a; }

    CohClass pow(int e) const {
        if (e < 0) throw std::invalid_argument("class: negative power");
        CohClass out = unit(ring_);
        for (int i = 0; i < e; ++i) out = out * *this;
        return out;
    }

private:
    GradedRing ring_;
    std::map<int, std::vector<Rational>> comp_;

    void set_component(int degree, std::vector<Rational> coords) {
        if (all_zero(coords)) return;
        comp_[degree] = std::move(coords);
    }

    static bool all_zero(const std::vector<Rational>& v) {
        for (const auto& c : v)
            if (!c.is_zero()) return false;
        return true;
    }

    static void check_same_ring(const CohClass& a, const CohClass& b) {
        if (a.ring_ != b.ring_)
            throw std::invalid_argument("class: operands belong to different rings");
    }
};

// Formal inverse of a class with invertible scalar part: a finite geometric
// series, exact on normal forms, x * invert(x) = 1.
inline CohClass invert(const CohClass& x) {
    const Rational c0 = x.scalar_part();
    if (c0.is_zero())
        throw std::invalid_argument("invert: class has zero degree-0 component");
    const GradedRing& ring = x.ring();
    const CohClass pos = x - CohClass::unit(ring, c0);
    const Rational inv0 = c0.inverse();
    CohClass sum = CohClass::unit(ring);
    CohClass power = CohClass::unit(ring);
    const int n = ring.truncation() / 2;
    for (int k = 1; k <= n; ++k) {
        power = power * pos * (-inv0);
        if (power.is_zero()) break;
        sum = sum + power;
    }
    return inv0 * sum;
}

// exp of a nilpotent class (zero scalar part), truncated at the ring's top degree.
inline CohClass exp_class(const CohClass& x) {
    if (!x.scalar_part().is_zero())
        throw std::invalid_argument("exp_class: class has nonzero degree-0 component");
    const GradedRing& ring = x.ring();
    CohClass sum = CohClass::unit(ring);
    CohClass power = CohClass::unit(ring);
    const int n = ring.truncation() / 2;
    for (int k = 1; k <= n; ++k) {
        power = power * x;
        if (power.is_zero()) break;
        sum = sum + power * Rational(BigInt(1), BigInt::factorial(static_cast<unsigned>(k)));
    }
    return sum;
}

// A closed-manifold model: graded ring with real dimension 2n, a point class
// spanning the (one-dimensional) top degree, and optionally the total Chern
// class of the tangent bundle.
struct Space {
    GradedRing ring;
    int n = 0;  // complex dimension; ring truncation is 2n
    CohClass point;
    std::optional<CohClass> ctx;

    const CohClass& tangent_chern() const {
        if (!ctx) throw std::invalid_argument("space: total tangent Chern class not set");
        return *ctx;
    }
};

inline Space make_space(GradedRing ring, CohClass point, std::optional<CohClass> ctx = {}) {
    Space s;
    s.ring = ring;
    s.n = ring.truncation() / 2;
    if (ring.basis_dim(2 * s.n) != 1)
        throw std::invalid_argument("space: top-degree quotient is not 1-dimensional");
    if (!point.is_homogeneous(2 * s.n) || point.is_zero())
        throw std::invalid_argument("space: point class must be nonzero of top degree");
    if (point.ring() != ring) throw std::invalid_argument("space: point class ring mismatch");
    if (ctx) {
        if (ctx->ring() != ring) throw std::invalid_argument("space: ctx ring mismatch");
        if (ctx->scalar_part() != Rational(1))
            throw std::invalid_argument("space: total Chern class must start with 1");
    }
    s.point = std::move(point);
    s.ctx = std::move(ctx);
    return s;
}

// Pairing with the fundamental class: the coefficient of the point class in
// the top-degree component. Linear, zero on everything below the top degree.
inline Rational integrate(const Space& s, const CohClass& x) {
    if (x.ring() != s.ring) throw std::invalid_argument("integrate: class ring mismatch");
    const int top = 2 * s.n;
    auto xs = x.component(top);
    auto ps = s.point.component(top);
    return xs[0] / ps[0];
}

// Coefficient-integrality report. A pass means all coordinates in the chosen
// monomial basis are integers; this is a proxy for (not a proof of) the class
// lying in the image of integral cohomology — torsion is invisible over Q.
struct IntegralityReport {
    struct Violation {
        int degree = 0;
        std::string monomial;
        Rational coefficient;
    };
    bool pass = true;
    std::vector<Violation> violations;
};

inline IntegralityReport integrality_check(const CohClass& x) {
    IntegralityReport rep;
    for (const auto& [d, coords] : x.components()) {
        const auto& monos = x.ring().basis_monomials(d);
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i].is_integer()) continue;
            rep.pass = false;
            rep.violations.push_back({d, x.ring().monomial_name(monos[i]), coords[i]});
        }
    }
    return rep;
}

// Graded ring homomorphism given by generator images (degree-preserving or zero).
class RingHom {
public:
    RingHom() = default;

    RingHom(GradedRing source, GradedRing target, std::vector<CohClass> images)
        : src_(std::move(source)), dst_(std::move(target)), images_(std::move(images)) {
        const auto& gens = src_.presentation().generators;
        if (images_.size() != gens.size())
            throw std::invalid_argument("hom: one image per source generator required");
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (images_[i].ring() != dst_)
                throw std::invalid_argument("hom: image of " + gens[i].name +
                                            " lies in the wrong ring");
            if (!images_[i].is_zero() && !images_[i].is_homogeneous(gens[i].degree))
                throw std::invalid_argument("hom: image of " + gens[i].name +
                                            " is not homogeneous of degree " +
                                            std::to_string(gens[i].degree));
        }
    }

    const GradedRing& source() const { return src_; }
    const GradedRing& target() const { return dst_; }

    CohClass apply(const CohClass& x) const {
        if (x.ring() != src_) throw std::invalid_argument("hom: class ring mismatch");
        CohClass out = CohClass::zero(dst_);
        for (const auto& [e, c] : x.to_poly()) {
            CohClass term = CohClass::unit(dst_, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int t = 0; t < e[i]; ++t) term = term * images_[i];
            out = out + term;
        }
        return out;
    }

private:
    GradedRing src_;
    GradedRing dst_;
    std::vector<CohClass> images_;
};

// Canonical rendering of one graded component, largest monomial first:
// "7*H^2 - 4*H*e", "3/2*H", "1". Empty component renders as "0".
inline std::string render_degree_terms(const CohClass& x, int degree) {
    const auto coords = x.component(degree);
    const auto& monos = x.ring().basis_monomials(degree);
    std::string out;
    for (std::size_t i = coords.size(); i-- > 0;) {
        const Rational& c = coords[i];
        if (c.is_zero()) continue;
        const std::string name = x.ring().monomial_name(monos[i]);
        const Rational mag = c.is_negative() ? -c : c;
        std::string term;
        if (name == "1")
            term = mag.to_string();
        else if (mag.is_one())
            term = name;
        else
            term = mag.to_string() + "*" + name;
        if (out.empty())
            out = (c.is_negative() ? "-" : "") + term;
        else
            out += (c.is_negative() ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

inline std::string render_class(const CohClass& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [d, coords] : x.components()) {
        (void)coords;
        if (!out.empty()) out += " + ";
        std::string terms = render_degree_terms(x, d);
        bool multi = terms.find(" + ") != std::string::npos ||
                     terms.find(" - ") != std::string::npos;
        out += multi ? "(" + terms + ")" : terms;
    }
    return out;
}

}  // namespace logcalc
