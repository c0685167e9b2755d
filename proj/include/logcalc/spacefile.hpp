#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "logcalc/catalog.hpp"
#include "logcalc/polyparse.hpp"

namespace logcalc {

// Abstract form of the line-oriented space document:
//   space NAME
//   dim N
//   gen NAME DEG
//   rel POLY
//   point POLY
//   ctx POLY
//   divisor NAME = POLY, POLY, ...
//   strata NAME = POLY; POLY; ...
//   center NAME { ring dim N; ring gen NAME DEG; ring rel POLY;
//                 ring point POLY; rho GEN -> POLY; pdY POLY; cN POLY;
//                 lift I POLY }
// '#' starts a comment; lines are whitespace-insensitive internally.
// Every polynomial is degree-checked against the declarations while parsing.
struct GenDecl {
    std::string name;
    int degree = 0;
    friend bool operator==(const GenDecl&, const GenDecl&) = default;
};

struct DivisorDecl {
    std::string name;
    std::vector<Poly> classes;
    friend bool operator==(const DivisorDecl&, const DivisorDecl&) = default;
};

struct StrataDecl {
    std::string name;
    std::vector<Poly> pd;
    friend bool operator==(const StrataDecl&, const StrataDecl&) = default;
};

struct CenterRingDecl {
    int dim = -1;
    std::vector<GenDecl> gens;
    std::vector<Poly> rels;
    Poly point;
    friend bool operator==(const CenterRingDecl&, const CenterRingDecl&) = default;
};

struct CenterDecl {
    std::string name;
    CenterRingDecl ring;
    std::vector<std::pair<std::string, Poly>> rho;  // ambient generator -> center poly
    Poly pd_center;
    Poly normal_chern;
    std::vector<std::pair<int, Poly>> lifts;
    friend bool operator==(const CenterDecl&, const CenterDecl&) = default;
};

struct SpaceDoc {
    std::string name;
    int dim = -1;
    std::vector<GenDecl> gens;
    std::vector<Poly> rels;
    Poly point;
    Poly ctx;
    std::vector<DivisorDecl> divisors;
    std::vector<StrataDecl> strata;
    std::vector<CenterDecl> centers;
    friend bool operator==(const SpaceDoc&, const SpaceDoc&) = default;
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<Generator> to_generators(const std::vector<GenDecl>& gens) {
    std::vector<Generator> out;
    for (const auto& g : gens) out.push_back({g.name, g.degree});
    return out;
}

class SpaceFileParser {
public:
    explicit SpaceFileParser(std::string_view text) : text_(text) {}

    SpaceDoc parse() {
        std::size_t pos = 0;
        int line_no = 0;
        while (pos <= text_.size()) {
            std::size_t nl = text_.find('\n', pos);
            std::string_view raw = text_.substr(
                pos, nl == std::string_view::npos ? text_.size() - pos : nl - pos);
            ++line_no;
            handle_line(raw, line_no);
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
        finish();
        return std::move(doc_);
    }

private:
    std::string_view text_;
    SpaceDoc doc_;
    bool saw_space_ = false;

    [[noreturn]] static void fail(const char* code, int line, int col,
                                  const std::string& msg) {
        throw ParseError(code, line, col, msg);
    }

    static std::string next_word(std::string& rest) {
        std::size_t b = rest.find_first_not_of(" \t");
        if (b == std::string::npos) {
            rest.clear();
            return {};
        }
        std::size_t e = rest.find_first_of(" \t", b);
        std::string word = rest.substr(b, e == std::string::npos ? std::string::npos : e - b);
        rest = e == std::string::npos ? std::string() : rest.substr(e);
        return word;
    }

    static int parse_int(const std::string& w, int line, const char* what) {
        if (w.empty()) fail(codes::syntax, line, 1, std::string("missing ") + what);
        for (char c : w)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(codes::bad_number, line, 1, std::string(what) + " must be an integer");
        return std::stoi(w);
    }

    Poly poly_here(const std::string& text, const std::vector<Generator>& gens, int line) {
        try {
            return parse_poly(trim(text), gens, line);
        } catch (const ParseError&) {
            throw;
        }
    }

    int checked_degree(const Poly& p, const std::vector<Generator>& gens, int line) {
        return homogeneous_degree(p, gens, line);
    }

    void require_dim(int line) {
        if (doc_.dim < 0)
            fail(codes::missing_field, line, 1, "dim must be declared before this line");
    }

    void handle_line(std::string_view raw, int line) {
        std::string s(raw);
        if (auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
        s = trim(s);
        if (s.empty()) return;
        std::string rest = s;
        std::string kw = next_word(rest);

        if (kw == "space") {
            if (saw_space_) fail(codes::duplicate_name, line, 1, "duplicate space line");
            std::string name = next_word(rest);
            if (name.empty()) fail(codes::syntax, line, 1, "space needs a name");
            doc_.name = name;
            saw_space_ = true;
            return;
        }
        if (!saw_space_) fail(codes::missing_field, line, 1, "file must start with 'space NAME'");

        if (kw == "dim") {
            doc_.dim = parse_int(next_word(rest), line, "dimension");
            return;
        }
        if (kw == "gen") {
            require_dim(line);
            std::string name = next_word(rest);
            if (name.empty()) fail(codes::syntax, line, 1, "gen needs a name and a degree");
            for (const auto& g : doc_.gens)
                if (g.name == name)
                    fail(codes::duplicate_name, line, 1, "duplicate generator " + name);
            int deg = parse_int(next_word(rest), line, "generator degree");
            doc_.gens.push_back({name, deg});
            return;
        }

        auto gens = to_generators(doc_.gens);
        if (kw == "rel") {
            require_dim(line);
            Poly p = poly_here(rest, gens, line);
            checked_degree(p, gens, line);  // homogeneity
            doc_.rels.push_back(std::move(p));
            return;
        }
        if (kw == "point") {
            require_dim(line);
            Poly p = poly_here(rest, gens, line);
            int d = checked_degree(p, gens, line);
            if (d != 2 * doc_.dim)
                fail(codes::degree_mismatch, line, 1,
                     "point class must have degree " + std::to_string(2 * doc_.dim));
            doc_.point = std::move(p);
            return;
        }
        if (kw == "ctx") {
            require_dim(line);
            Poly p = poly_here(rest, gens, line);
            for (const auto& [expo, c] : p) {
                (void)c;
                int d = 0;
                for (std::size_t i = 0; i < expo.size(); ++i)
                    d += expo[i] * gens[i].degree;
                if (d > 2 * doc_.dim)
                    fail(codes::degree_mismatch, line, 1,
                         "ctx term exceeds the truncation degree");
            }
            doc_.ctx = std::move(p);
            return;
        }
        if (kw == "divisor" || kw == "strata") {
            require_dim(line);
            std::string name = next_word(rest);
            if (name.empty()) fail(codes::syntax, line, 1, kw + " needs a name");
            std::string eq = next_word(rest);
            if (eq != "=") fail(codes::syntax, line, 1, "expected '=' after the name");
            if (kw == "divisor") {
                for (const auto& d : doc_.divisors)
                    if (d.name == name)
                        fail(codes::duplicate_name, line, 1, "duplicate divisor " + name);
                DivisorDecl d{name, {}};
                for (const auto& part : split_list(rest, ',')) {
                    Poly p = poly_here(part, gens, line);
                    int deg = checked_degree(p, gens, line);
                    if (deg != -1 && deg != 2)
                        fail(codes::degree_mismatch, line, 1,
                             "divisor classes must have degree 2");
                    d.classes.push_back(std::move(p));
                }
                doc_.divisors.push_back(std::move(d));
            } else {
                for (const auto& d : doc_.strata)
                    if (d.name == name)
                        fail(codes::duplicate_name, line, 1, "duplicate strata " + name);
                StrataDecl d{name, {}};
                int k = 0;
                for (const auto& part : split_list(rest, ';')) {
                    ++k;
                    Poly p = poly_here(part, gens, line);
                    int deg = checked_degree(p, gens, line);
                    if (deg != -1 && deg != 2 * k)
                        fail(codes::degree_mismatch, line, 1,
                             "stratum " + std::to_string(k) + " must have degree " +
                                 std::to_string(2 * k));
                    d.pd.push_back(std::move(p));
                }
                doc_.strata.push_back(std::move(d));
            }
            return;
        }
        if (kw == "center") {
            require_dim(line);
            handle_center(rest, line);
            return;
        }
        fail(codes::syntax, line, 1, "unknown directive '" + kw + "'");
    }

    static std::vector<std::string> split_list(const std::string& s, char sep) {
        std::vector<std::string> out;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t next = s.find(sep, pos);
            std::string part =
                trim(next == std::string::npos ? s.substr(pos) : s.substr(pos, next - pos));
            if (!part.empty()) out.push_back(part);
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return out;
    }

    void handle_center(std::string& rest, int line) {
        std::string name = next_word(rest);
        if (name.empty()) fail(codes::syntax, line, 1, "center needs a name");
        for (const auto& c : doc_.centers)
            if (c.name == name) fail(codes::duplicate_name, line, 1, "duplicate center " + name);
        std::size_t open = rest.find('{');
        std::size_t close = rest.rfind('}');
        if (open == std::string::npos || close == std::string::npos || close < open)
            fail(codes::syntax, line, 1, "center body must be '{ ...; ... }' on one line");
        std::string body = rest.substr(open + 1, close - open - 1);

        CenterDecl c;
        c.name = name;
        bool pd_seen = false, cn_seen = false, point_seen = false;
        auto ambient = to_generators(doc_.gens);

        for (const auto& stmt : split_list(body, ';')) {
            std::string srest = stmt;
            std::string skw = next_word(srest);
            if (skw == "ring") {
                std::string sub = next_word(srest);
                if (sub == "dim") {
                    c.ring.dim = parse_int(next_word(srest), line, "center dimension");
                    if (c.ring.dim >= doc_.dim)
                        fail(codes::range, line, 1,
                             "center dimension must be smaller than the ambient dimension");
                } else if (sub == "gen") {
                    std::string gname = next_word(srest);
                    if (gname.empty()) fail(codes::syntax, line, 1, "ring gen needs a name");
                    int deg = parse_int(next_word(srest), line, "generator degree");
                    c.ring.gens.push_back({gname, deg});
                } else if (sub == "rel") {
                    Poly p = poly_here(srest, to_generators(c.ring.gens), line);
                    checked_degree(p, to_generators(c.ring.gens), line);
                    c.ring.rels.push_back(std::move(p));
                } else if (sub == "point") {
                    if (c.ring.dim < 0)
                        fail(codes::missing_field, line, 1, "ring dim must come first");
                    Poly p = poly_here(srest, to_generators(c.ring.gens), line);
                    int d = checked_degree(p, to_generators(c.ring.gens), line);
                    if (d != 2 * c.ring.dim)
                        fail(codes::degree_mismatch, line, 1,
                             "center point class must have degree " +
                                 std::to_string(2 * c.ring.dim));
                    c.ring.point = std::move(p);
                    point_seen = true;
                } else {
                    fail(codes::syntax, line, 1, "unknown ring statement '" + sub + "'");
                }
            } else if (skw == "rho") {
                std::string gname = next_word(srest);
                int gi = -1;
                for (std::size_t i = 0; i < ambient.size(); ++i)
                    if (ambient[i].name == gname) gi = static_cast<int>(i);
                if (gi < 0)
                    fail(codes::unknown_generator, line, 1,
                         "rho: unknown ambient generator '" + gname + "'");
                std::string arrow = next_word(srest);
                if (arrow != "->") fail(codes::syntax, line, 1, "rho needs '->'");
                Poly p = poly_here(srest, to_generators(c.ring.gens), line);
                int d = checked_degree(p, to_generators(c.ring.gens), line);
                if (d != -1 && d != ambient[gi].degree)
                    fail(codes::degree_mismatch, line, 1,
                         "rho image of " + gname + " must have degree " +
                             std::to_string(ambient[gi].degree));
                c.rho.emplace_back(gname, std::move(p));
            } else if (skw == "pdY") {
                if (c.ring.dim < 0)
                    fail(codes::missing_field, line, 1, "ring dim must come before pdY");
                Poly p = poly_here(srest, ambient, line);
                int r = doc_.dim - c.ring.dim;
                int d = checked_degree(p, ambient, line);
                if (d != 2 * r)
                    fail(codes::degree_mismatch, line, 1,
                         "pdY must have degree " + std::to_string(2 * r));
                c.pd_center = std::move(p);
                pd_seen = true;
            } else if (skw == "cN") {
                Poly p = poly_here(srest, to_generators(c.ring.gens), line);
                c.normal_chern = std::move(p);
                cn_seen = true;
            } else if (skw == "lift") {
                if (c.ring.dim < 0)
                    fail(codes::missing_field, line, 1, "ring dim must come before lifts");
                int idx = parse_int(next_word(srest), line, "lift index");
                int r = doc_.dim - c.ring.dim;
                if (idx < 1 || idx > r - 1)
                    fail(codes::range, line, 1,
                         "lift index must be between 1 and " + std::to_string(r - 1));
                Poly p = poly_here(srest, ambient, line);
                int d = checked_degree(p, ambient, line);
                if (d != -1 && d != 2 * idx)
                    fail(codes::degree_mismatch, line, 1,
                         "lift " + std::to_string(idx) + " must have degree " +
                             std::to_string(2 * idx));
                c.lifts.emplace_back(idx, std::move(p));
            } else {
                fail(codes::syntax, line, 1, "unknown center statement '" + skw + "'");
            }
        }

        if (c.ring.dim < 0) fail(codes::missing_field, line, 1, "center lacks 'ring dim'");
        if (!pd_seen) fail(codes::missing_field, line, 1, "center lacks 'pdY'");
        if (!cn_seen) fail(codes::missing_field, line, 1, "center lacks 'cN'");
        if (!point_seen) {
            if (c.ring.dim == 0) {
                Poly one;
                one.emplace(Exponents(c.ring.gens.size(), 0), Rational(1));
                c.ring.point = std::move(one);
            } else {
                fail(codes::missing_field, line, 1, "center lacks 'ring point'");
            }
        }
        for (const auto& g : doc_.gens) {
            bool found = false;
            for (const auto& [gname, p] : c.rho) {
                (void)p;
                found = found || gname == g.name;
            }
            if (!found)
                fail(codes::missing_field, line, 1,
                     "center lacks 'rho " + g.name + " -> ...'");
        }
        doc_.centers.push_back(std::move(c));
    }

    void finish() const {
        if (!saw_space_) throw ParseError(codes::missing_field, 1, 1, "empty document");
        if (doc_.dim < 0) throw ParseError(codes::missing_field, 1, 1, "missing dim line");
        if (doc_.point.empty())
            throw ParseError(codes::missing_field, 1, 1, "missing point line");
        if (doc_.ctx.empty()) throw ParseError(codes::missing_field, 1, 1, "missing ctx line");
    }
};

}  // namespace detail

inline SpaceDoc parse_space(std::string_view text) {
    return detail::SpaceFileParser(text).parse();
}

// canonical serialization; parse(serialize(doc)) == doc and
// serialize(parse(s)) is a fixed point
inline std::string serialize_space(const SpaceDoc& doc) {
    auto gens = detail::to_generators(doc.gens);
    std::string out;
    out += "space " + doc.name + "\n";
    out += "dim " + std::to_string(doc.dim) + "\n";
    for (const auto& g : doc.gens)
        out += "gen " + g.name + " " + std::to_string(g.degree) + "\n";
    for (const auto& r : doc.rels) out += "rel " + render_poly(r, gens) + "\n";
    out += "point " + render_poly(doc.point, gens) + "\n";
    out += "ctx " + render_poly(doc.ctx, gens) + "\n";
    for (const auto& d : doc.divisors) {
        out += "divisor " + d.name + " =";
        for (std::size_t i = 0; i < d.classes.size(); ++i)
            out += std::string(i == 0 ? " " : ", ") + render_poly(d.classes[i], gens);
        out += "\n";
    }
    for (const auto& d : doc.strata) {
        out += "strata " + d.name + " =";
        for (std::size_t i = 0; i < d.pd.size(); ++i)
            out += std::string(i == 0 ? " " : "; ") + render_poly(d.pd[i], gens);
        out += "\n";
    }
    for (const auto& c : doc.centers) {
        auto cgens = detail::to_generators(c.ring.gens);
        out += "center " + c.name + " { ring dim " + std::to_string(c.ring.dim);
        for (const auto& g : c.ring.gens)
            out += "; ring gen " + g.name + " " + std::to_string(g.degree);
        for (const auto& r : c.ring.rels) out += "; ring rel " + render_poly(r, cgens);
        out += "; ring point " + render_poly(c.ring.point, cgens);
        for (const auto& [gname, p] : c.rho)
            out += "; rho " + gname + " -> " + render_poly(p, cgens);
        out += "; pdY " + render_poly(c.pd_center, gens);
        out += "; cN " + render_poly(c.normal_chern, cgens);
        for (const auto& [i, p] : c.lifts)
            out += "; lift " + std::to_string(i) + " " + render_poly(p, gens);
        out += " }\n";
    }
    return out;
}

// realize the document as a catalog entry (spaces, arrangements, centers)
inline CatalogEntry build_entry(const SpaceDoc& doc) {
    RingPresentation pres;
    pres.generators = detail::to_generators(doc.gens);
    pres.relations = doc.rels;
    pres.truncation = 2 * doc.dim;
    GradedRing ring = GradedRing::build(pres);

    CatalogEntry entry;
    entry.name = doc.name;
    entry.space = make_space(ring, CohClass::from_poly(ring, doc.point),
                             CohClass::from_poly(ring, doc.ctx));
    entry.euler = 0;  // filled below once integration exists

    Rational chi = integrate(entry.space, entry.space.tangent_chern());
    if (chi.is_integer() && chi.numerator().fits_long_long())
        entry.euler = chi.numerator().to_long_long();

    for (const auto& d : doc.divisors) {
        std::vector<std::string> labels;
        std::vector<CohClass> classes;
        for (std::size_t i = 0; i < d.classes.size(); ++i) {
            labels.push_back(d.name + std::to_string(i + 1));
            classes.push_back(CohClass::from_poly(ring, d.classes[i]));
        }
        entry.arrangements.emplace_back(
            d.name, make_arrangement(entry.space, std::move(labels), std::move(classes)));
    }
    for (const auto& d : doc.strata) {
        std::vector<CohClass> pd;
        for (const auto& p : d.pd) pd.push_back(CohClass::from_poly(ring, p));
        entry.strata_inputs.emplace_back(d.name, make_strata(entry.space, std::move(pd)));
    }
    for (const auto& c : doc.centers) {
        RingPresentation cpres;
        cpres.generators = detail::to_generators(c.ring.gens);
        cpres.relations = c.ring.rels;
        cpres.truncation = 2 * c.ring.dim;
        GradedRing cring = GradedRing::build(cpres);
        Space center = make_space(cring, CohClass::from_poly(cring, c.ring.point));

        std::vector<CohClass> images(doc.gens.size(), CohClass::zero(cring));
        for (const auto& [gname, p] : c.rho) {
            int gi = ring.generator_index(gname);
            images[gi] = CohClass::from_poly(cring, p);
        }
        const int r = doc.dim - c.ring.dim;
        CenterSpec spec;
        spec.ambient = entry.space;
        spec.center = center;
        spec.codim = r;
        spec.restriction = RingHom(ring, cring, std::move(images));
        spec.pd_center = CohClass::from_poly(ring, c.pd_center);
        spec.normal_chern = make_total_chern(r, CohClass::from_poly(cring, c.normal_chern));
        spec.normal_lifts.assign(r - 1, CohClass::zero(ring));
        for (const auto& [i, p] : c.lifts)
            spec.normal_lifts[i - 1] = CohClass::from_poly(ring, p);
        entry.centers.emplace_back(c.name, std::move(spec));
    }
    return entry;
}

}  // namespace logcalc
