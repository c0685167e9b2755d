#pragma once

#include <string>
#include <vector>

#include "logcalc/blowup.hpp"
#include "logcalc/polyparse.hpp"

namespace logcalc {

// Built-in spaces, arrangements, and centers so every verifier has ready
// inputs. Entries are immutable, constructed once, and ordered for
// deterministic listings.
struct CatalogEntry {
    std::string name;
    Space space;
    long long euler = 0;  // recorded Euler characteristic, checked in tests
    std::vector<std::pair<std::string, SCArrangement>> arrangements;
    std::vector<std::pair<std::string, StrataData>> strata_inputs;
    std::vector<std::pair<std::string, CenterSpec>> centers;

    const SCArrangement* arrangement(const std::string& n) const {
        for (const auto& [k, v] : arrangements)
            if (k == n) return &v;
        return nullptr;
    }
    const StrataData* strata_input(const std::string& n) const {
        for (const auto& [k, v] : strata_inputs)
            if (k == n) return &v;
        return nullptr;
    }
    const CenterSpec* center(const std::string& n) const {
        for (const auto& [k, v] : centers)
            if (k == n) return &v;
        return nullptr;
    }
};

// ring Q[H]/(H^{n+1}), point H^n, c(TX) = (1+H)^{n+1}
inline Space projective_space(int n) {
    if (n < 1 || n > 6)
        throw std::invalid_argument("projective_space: n must be between 1 and 6");
    RingPresentation pres;
    pres.generators = {{"H", 2}};
    pres.relations.push_back(parse_poly("H^" + std::to_string(n + 1), pres.generators));
    pres.truncation = 2 * n;
    GradedRing ring = GradedRing::build(pres);
    auto cl = [&](const std::string& t) {
        return CohClass::from_poly(ring, parse_poly(t, pres.generators));
    };
    return make_space(ring, cl("H^" + std::to_string(n)),
                      cl("(1 + H)^" + std::to_string(n + 1)));
}

// Kuenneth product: generators and relations unioned (name collisions get a
// numeric suffix), point and tangent Chern classes multiply.
inline Space product_space(const Space& a, const Space& b) {
    if (a.n + b.n > 6)
        throw std::invalid_argument("product: combined complex dimension exceeds 6");
    RingPresentation pres;
    pres.truncation = 2 * (a.n + b.n);
    for (const auto& g : a.ring.presentation().generators) pres.generators.push_back(g);
    auto unique_name = [&](std::string name) {
        auto taken = [&](const std::string& s) {
            for (const auto& g : pres.generators)
                if (g.name == s) return true;
            return false;
        };
        int suffix = 2;
        std::string candidate = name;
        while (taken(candidate)) candidate = name + "_" + std::to_string(suffix++);
        return candidate;
    };
    for (const auto& g : b.ring.presentation().generators)
        pres.generators.push_back({unique_name(g.name), g.degree});

    const int na = a.ring.generator_count();
    const int nb = b.ring.generator_count();
    auto pad_left = [&](const Poly& p) {
        Poly out;
        for (const auto& [expo, c] : p) {
            Exponents ext(static_cast<std::size_t>(na), 0);
            ext.insert(ext.end(), expo.begin(), expo.end());
            out.emplace(std::move(ext), c);
        }
        return out;
    };
    auto pad_right = [&](const Poly& p) {
        Poly out;
        for (const auto& [expo, c] : p) {
            Exponents ext = expo;
            ext.resize(static_cast<std::size_t>(na + nb), 0);
            out.emplace(std::move(ext), c);
        }
        return out;
    };
    for (const auto& rel : a.ring.presentation().relations)
        pres.relations.push_back(pad_right(rel));
    for (const auto& rel : b.ring.presentation().relations)
        pres.relations.push_back(pad_left(rel));

    GradedRing ring = GradedRing::build(pres);
    std::vector<CohClass> img_a, img_b;
    for (int i = 0; i < na; ++i) img_a.push_back(CohClass::generator(ring, i));
    for (int i = 0; i < nb; ++i) img_b.push_back(CohClass::generator(ring, na + i));
    RingHom inc_a(a.ring, ring, img_a), inc_b(b.ring, ring, img_b);

    CohClass point = inc_a.apply(a.point) * inc_b.apply(b.point);
    std::optional<CohClass> ctx;
    if (a.ctx && b.ctx) ctx = inc_a.apply(*a.ctx) * inc_b.apply(*b.ctx);
    return make_space(ring, point, ctx);
}

// k coordinate hyperplanes in a projective space; k <= n+1 keeps the
// arrangement simple-crossings.
inline SCArrangement coordinate_arrangement(const Space& s, int k) {
    int h = s.ring.generator_index("H");
    if (h < 0 || s.ring.generator_count() != 1)
        throw std::invalid_argument(
            "coordinate_arrangement: space is not a projective space with generator H");
    if (k < 0 || k > s.n + 1)
        throw std::invalid_argument("coordinate_arrangement: at most n+1 = " +
                                    std::to_string(s.n + 1) +
                                    " coordinate hyperplanes stay simple-crossings");
    std::vector<std::string> labels;
    std::vector<CohClass> classes;
    for (int i = 0; i < k; ++i) {
        labels.push_back("L" + std::to_string(i + 1));
        classes.push_back(CohClass::generator(s.ring, h));
    }
    return make_arrangement(s, std::move(labels), std::move(classes));
}

namespace detail {

inline Space point_space() {
    RingPresentation pres;
    pres.truncation = 0;
    GradedRing ring = GradedRing::build(pres);
    return make_space(ring, CohClass::unit(ring), CohClass::unit(ring));
}

inline CohClass entry_class(const Space& s, const std::string& text) {
    return CohClass::from_poly(s.ring, parse_poly(text, s.ring.presentation().generators));
}

inline CatalogEntry projective_entry(int n, long long euler,
                                     const std::vector<std::pair<std::string, int>>& arrs) {
    CatalogEntry e;
    e.name = "P" + std::to_string(n);
    e.space = projective_space(n);
    e.euler = euler;
    for (const auto& [name, k] : arrs)
        e.arrangements.emplace_back(name, coordinate_arrangement(e.space, k));
    return e;
}

inline CenterSpec point_center(const Space& ambient, int r) {
    CenterSpec c;
    c.ambient = ambient;
    c.center = point_space();
    c.codim = r;
    c.restriction = RingHom(ambient.ring, c.center.ring,
                            {CohClass::zero(c.center.ring)});
    c.pd_center = entry_class(ambient, "H^" + std::to_string(r));
    c.normal_chern = make_total_chern(r, CohClass::unit(c.center.ring));
    for (int i = 1; i < r; ++i) c.normal_lifts.push_back(CohClass::zero(ambient.ring));
    return c;
}

inline CenterSpec line_in_p3_center(const Space& ambient) {
    RingPresentation pres;
    pres.generators = {{"h", 2}};
    pres.relations.push_back(parse_poly("h^2", pres.generators));
    pres.truncation = 2;
    GradedRing ring = GradedRing::build(pres);
    Space line = make_space(ring, CohClass::generator(ring, 0),
                            CohClass::from_poly(ring, parse_poly("1 + 2*h", pres.generators)));

    CenterSpec c;
    c.ambient = ambient;
    c.center = line;
    c.codim = 2;
    c.restriction = RingHom(ambient.ring, ring, {CohClass::generator(ring, 0)});
    c.pd_center = entry_class(ambient, "H^2");
    // N = O(1) + O(1) on the line
    c.normal_chern =
        make_total_chern(2, CohClass::from_poly(ring, parse_poly("1 + 2*h", pres.generators)));
    c.normal_lifts = {entry_class(ambient, "2*H")};
    return c;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> out;

        out.push_back(detail::projective_entry(1, 2, {{"onepoint", 1}, {"toric", 2}}));

        CatalogEntry p2 =
            detail::projective_entry(2, 3, {{"oneline", 1}, {"twolines", 2}, {"toric", 3}});
        p2.centers.emplace_back("pt_in_P2", detail::point_center(p2.space, 2));
        out.push_back(std::move(p2));

        CatalogEntry p3 = detail::projective_entry(
            3, 4, {{"oneplane", 1}, {"twoplanes", 2}, {"threeplanes", 3}, {"toric", 4}});
        p3.centers.emplace_back("pt_in_P3", detail::point_center(p3.space, 3));
        p3.centers.emplace_back("line_in_P3", detail::line_in_p3_center(p3.space));
        p3.strata_inputs.emplace_back(
            "nc_direct", make_strata(p3.space, {detail::entry_class(p3.space, "2*H"),
                                                detail::entry_class(p3.space, "H^2")}));
        out.push_back(std::move(p3));

        out.push_back(detail::projective_entry(4, 5, {{"twohyperplanes", 2}, {"toric", 5}}));

        {
            CatalogEntry e;
            e.name = "P1xP1";
            e.space = product_space(projective_space(1), projective_space(1));
            e.euler = 4;
            CohClass a = CohClass::generator(e.space.ring, 0);
            CohClass b = CohClass::generator(e.space.ring, 1);
            e.arrangements.emplace_back(
                "toric", make_arrangement(e.space, {"A1", "A2", "B1", "B2"}, {a, a, b, b}));
            e.arrangements.emplace_back("mixed",
                                        make_arrangement(e.space, {"A1", "B1"}, {a, b}));
            out.push_back(std::move(e));
        }
        {
            CatalogEntry e;
            e.name = "P1xP2";
            e.space = product_space(projective_space(1), projective_space(2));
            e.euler = 6;
            CohClass a = CohClass::generator(e.space.ring, 0);
            CohClass b = CohClass::generator(e.space.ring, 1);
            e.arrangements.emplace_back(
                "toric",
                make_arrangement(e.space, {"A1", "A2", "B1", "B2", "B3"}, {a, a, b, b, b}));
            out.push_back(std::move(e));
        }
        return out;
    }();
    return entries;
}

inline const CatalogEntry* find_catalog_entry(const std::string& name) {
    for (const auto& e : builtin_catalog())
        if (e.name == name) return &e;
    return nullptr;
}

// fully populated CenterSpec by name; pt_in_P2, pt_in_P3, line_in_P3
inline CenterSpec standard_center(const std::string& name) {
    for (const auto& e : builtin_catalog())
        for (const auto& [n, c] : e.centers)
            if (n == name) return c;
    throw std::invalid_argument("standard_center: unknown center " + name);
}

}  // namespace logcalc
