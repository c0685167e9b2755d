#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "logcalc/blowup.hpp"
#include "logcalc/catalog.hpp"
#include "logcalc/report.hpp"
#include "logcalc/spacefile.hpp"

namespace logcalc {

inline constexpr const char* kIntegralityCaveat =
    "integer coefficients in the chosen monomial basis are necessary but not "
    "sufficient for a class to lie in integral cohomology; torsion is invisible "
    "over Q, so this report is a proxy, not a certificate";

struct CliOptions {
    bool json = false;
    bool emit_ring = false;
    bool timing = false;
    int max_degree = -1;
    std::string catalog_dir;
    std::vector<std::string> positional;
};

struct CliResult {
    Report report;
    std::string output;
    int exit_code = 0;
};

namespace cli_detail {

struct UsageError : std::runtime_error {
    std::string code;
    UsageError(std::string code_, const std::string& msg)
        : std::runtime_error(msg), code(std::move(code_)) {}
};

inline CliOptions parse_options(const std::vector<std::string>& args) {
    CliOptions o;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--json") {
            o.json = true;
        } else if (a == "--emit-ring") {
            o.emit_ring = true;
        } else if (a == "--timing") {
            o.timing = true;
        } else if (a == "--max-degree" || a.rfind("--max-degree=", 0) == 0) {
            std::string v;
            if (a.size() > 12 && a[12] == '=') {
                v = a.substr(13);
            } else {
                if (i + 1 >= args.size())
                    throw UsageError(codes::syntax, "--max-degree needs a value");
                v = args[++i];
            }
            try {
                o.max_degree = std::stoi(v);
            } catch (...) {
                throw UsageError(codes::bad_number, "--max-degree needs an integer");
            }
            if (o.max_degree < 0)
                throw UsageError(codes::range, "--max-degree must be nonnegative");
        } else if (a == "--catalog-dir" || a.rfind("--catalog-dir=", 0) == 0) {
            if (a.size() > 13 && a[13] == '=') {
                o.catalog_dir = a.substr(14);
            } else {
                if (i + 1 >= args.size())
                    throw UsageError(codes::syntax, "--catalog-dir needs a path");
                o.catalog_dir = args[++i];
            }
        } else if (!a.empty() && a[0] == '-') {
            throw UsageError(codes::syntax, "unknown flag '" + a + "'");
        } else {
            o.positional.push_back(a);
        }
    }
    if (o.catalog_dir.empty()) {
        if (const char* env = std::getenv("LOGCHERN_CATALOG")) o.catalog_dir = env;
    }
    return o;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError(codes::unknown_name, "cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Context {
    CliOptions opts;
    std::vector<CatalogEntry> extra;  // loaded space files, load order

    void load_catalog_dir() {
        if (opts.catalog_dir.empty()) return;
        namespace fs = std::filesystem;
        if (!fs::is_directory(opts.catalog_dir))
            throw UsageError(codes::unknown_name,
                             "catalog dir '" + opts.catalog_dir + "' is not a directory");
        std::vector<std::string> files;
        for (const auto& de : fs::directory_iterator(opts.catalog_dir))
            if (de.is_regular_file() && de.path().extension() == ".space")
                files.push_back(de.path().string());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) add_entry(build_entry(parse_space(read_file(f))));
    }

    void add_entry(CatalogEntry entry) {
        if (find_catalog_entry(entry.name) != nullptr)
            throw UsageError(codes::duplicate_name,
                             "space '" + entry.name + "' collides with a catalog entry");
        for (const auto& e : extra)
            if (e.name == entry.name)
                throw UsageError(codes::duplicate_name,
                                 "space '" + entry.name + "' loaded twice");
        extra.push_back(std::move(entry));
    }

    // "catalog:NAME" or a path to a .space file
    const CatalogEntry& resolve_space(const std::string& spec) {
        if (spec.rfind("catalog:", 0) == 0) {
            std::string name = spec.substr(8);
            if (const CatalogEntry* e = find_catalog_entry(name)) return *e;
            for (const auto& e : extra)
                if (e.name == name) return e;
            throw UsageError(codes::unknown_name, "no catalog entry named '" + name + "'");
        }
        add_entry(build_entry(parse_space(read_file(spec))));
        return extra.back();
    }
};

// divisor data: an SC arrangement or directly supplied strata
struct DivisorRef {
    const SCArrangement* arrangement = nullptr;
    const StrataData* strata_input = nullptr;
};

inline DivisorRef resolve_divisor(const CatalogEntry& entry, const std::string& name) {
    DivisorRef ref;
    ref.arrangement = entry.arrangement(name);
    if (!ref.arrangement) ref.strata_input = entry.strata_input(name);
    if (!ref.arrangement && !ref.strata_input)
        throw UsageError(codes::unknown_name,
                         "no divisor or strata named '" + name + "' in " + entry.name);
    return ref;
}

inline const SCArrangement& require_sc(const DivisorRef& ref, const std::string& name) {
    if (!ref.arrangement)
        throw UsageError("E_NOT_SC", "'" + name +
                                         "' supplies strata only; this command needs the "
                                         "component classes of an SC divisor");
    return *ref.arrangement;
}

inline StrataData divisor_strata(const DivisorRef& ref) {
    return ref.arrangement ? strata(*ref.arrangement) : *ref.strata_input;
}

inline const CenterSpec& resolve_center(const CatalogEntry& entry, const std::string& name) {
    if (const CenterSpec* c = entry.center(name)) return *c;
    throw UsageError(codes::unknown_name,
                     "no center named '" + name + "' in " + entry.name);
}

inline void require_args(const CliOptions& o, std::size_t count, const char* usage) {
    if (o.positional.size() != count + 1)
        throw UsageError(codes::syntax, std::string("usage: ") + usage);
}

inline void finish_verdicts(Report& r) {
    bool pass = true;
    for (const auto& v : r.verdicts) pass = pass && v.pass;
    for (const auto& i : r.integrality) pass = pass && i.pass;
    r.status = pass ? "pass" : "fail";
    r.exit_code = pass ? 0 : 1;
}

}  // namespace cli_detail

inline CliResult run_cli(const std::vector<std::string>& args) {
    using namespace cli_detail;
    auto started = std::chrono::steady_clock::now();
    Report r;
    bool json = false, timing = false;
    try {
        CliOptions opts = parse_options(args);
        json = opts.json;
        timing = opts.timing;
        if (opts.positional.empty())
            throw UsageError(codes::syntax,
                             "usage: logchern COMMAND ... with COMMAND one of logchern, "
                             "strata, blowup, verify-cor15, verify-logpullback, verify-split, "
                             "verify-grr, catalog, check-integrality");
        Context ctx;
        ctx.opts = opts;
        ctx.load_catalog_dir();
        const std::string& cmd = opts.positional[0];
        r.command = cmd;
        const int md = opts.max_degree;

        if (cmd == "catalog") {
            require_args(opts, 0, "catalog");
            auto describe = [&](const CatalogEntry& e) {
                std::string v = "dim " + std::to_string(e.space.n) + ", chi " +
                                std::to_string(e.euler) + ", divisors [";
                for (std::size_t i = 0; i < e.arrangements.size(); ++i)
                    v += (i ? " " : "") + e.arrangements[i].first;
                v += "], strata [";
                for (std::size_t i = 0; i < e.strata_inputs.size(); ++i)
                    v += (i ? " " : "") + e.strata_inputs[i].first;
                v += "], centers [";
                for (std::size_t i = 0; i < e.centers.size(); ++i)
                    v += (i ? " " : "") + e.centers[i].first;
                v += "]";
                r.tables.emplace_back(e.name, v);
            };
            for (const auto& e : builtin_catalog()) describe(e);
            for (const auto& e : ctx.extra) describe(e);
            r.status = "ok";
        } else if (cmd == "logchern") {
            require_args(opts, 2, "logchern SPACE DIVISOR");
            const CatalogEntry& entry = ctx.resolve_space(opts.positional[1]);
            r.inputs = {{"space", opts.positional[1]}, {"divisor", opts.positional[2]}};
            DivisorRef ref = resolve_divisor(entry, opts.positional[2]);
            CohClass lc = log_chern(entry.space, divisor_strata(ref));
            r.classes.push_back(class_entry("log-chern", lc, md));
            r.integrality.push_back(integrality_entry("log-chern", integrality_check(lc)));
            r.notes.push_back(kIntegralityCaveat);
            r.status = "ok";
        } else if (cmd == "strata") {
            require_args(opts, 2, "strata SPACE DIVISOR");
            const CatalogEntry& entry = ctx.resolve_space(opts.positional[1]);
            r.inputs = {{"space", opts.positional[1]}, {"divisor", opts.positional[2]}};
            StrataData d = divisor_strata(resolve_divisor(entry, opts.positional[2]));
            for (int k = 1; k <= d.depth; ++k)
                r.classes.push_back(
                    class_entry("pd[" + std::to_string(k) + "]", d.stratum(k), md));
            r.status = "ok";
        } else if (cmd == "blowup") {
            require_args(opts, 2, "blowup SPACE CENTER [--emit-ring]");
            const CatalogEntry& entry = ctx.resolve_space(opts.positional[1]);
            r.inputs = {{"space", opts.positional[1]}, {"center", opts.positional[2]}};
            BlownUpSpace b = blow_up(resolve_center(entry, opts.positional[2]));
            BettiCheck betti = betti_check(b);
            std::string row, expect;
            for (std::size_t i = 0; i < betti.actual.size(); ++i) {
                row += (i ? " " : "") + std::to_string(betti.actual[i]);
                expect += (i ? " " : "") + std::to_string(betti.expected[i]);
            }
            r.tables.emplace_back("betti", row);
            r.tables.emplace_back("betti-expected", expect);
            r.classes.push_back(class_entry("exceptional", b.e, md));
            if (ctx.opts.emit_ring) {
                std::string gens;
                for (const auto& g : b.space.ring.presentation().generators)
                    gens += (gens.empty() ? "" : " ") + g.name + ":" +
                            std::to_string(g.degree);
                r.tables.emplace_back("generators", gens);
                auto rels = rendered_relations(b);
                for (std::size_t i = 0; i < rels.size(); ++i)
                    r.tables.emplace_back("rel" + std::to_string(i + 1), rels[i]);
            }
            r.status = betti.pass ? "ok" : "fail";
            r.exit_code = betti.pass ? 0 : 1;
        } else if (cmd == "verify-cor15") {
            require_args(opts, 3, "verify-cor15 SPACE DIVISOR CENTER");
            const CatalogEntry& entry = ctx.resolve_space(opts.positional[1]);
            r.inputs = {{"space", opts.positional[1]},
                        {"divisor", opts.positional[2]},
                        {"center", opts.positional[3]}};
            const SCArrangement& arr =
                require_sc(resolve_divisor(entry, opts.positional[2]), opts.positional[2]);
            BlownUpSpace b = blow_up(resolve_center(entry, opts.positional[3]));
            BlowupVerification v = verify_blowup_formula(b, arr);
            for (const auto& verdict : v.verdicts) r.verdicts.push_back(verdict_entry(verdict));
            for (const auto& verdict : v.verdicts) {
                if (verdict.name == "blowup-formula") {
                    r.classes.push_back(class_entry("lhs", verdict.lhs, md));
                    r.classes.push_back(class_entry("rhs", verdict.rhs, md));
                }
            }
            r.integrality.push_back(integrality_entry("lhs", v.lhs_integrality));
            r.integrality.push_back(integrality_entry("rhs", v.rhs_integrality));
            finish_verdicts(r);
        } else if (cmd == "verify-logpullback") {
            require_args(opts, 3, "verify-logpullback SPACE DIVISOR CENTER");
            const CatalogEntry& entry = ctx.resolve_space(opts.positional[1]);
            r.inputs = {{"space", opts.positional[1]},
                        {"divisor", opts.positional[2]},
                        {"center", opts.positional[3]}};
            const SCArrangement& arr =
                require_sc(resolve_divisor(entry, opts.positional[2]), opts.positional[2]);
            BlownUpSpace b = blow_up(resolve_center(entry, opts.positional[3]));
            Verdict v = log_pullback_check(b, arr);
            r.verdicts.push_back(verdict_entry(v));
            r.classes.push_back(class_entry("lhs", v.lhs, md));
            r.classes.push_back(class_entry("rhs", v.rhs, md));
            finish_verdicts(r);
        } else if (cmd == "verify-split") {
            require_args(opts, 3, "verify-split SPACE DIVISOR SMOOTH_DIVISOR");
            const CatalogEntry& entry = ctx.resolve_space(opts.positional[1]);
            r.inputs = {{"space", opts.positional[1]},
                        {"divisor", opts.positional[2]},
                        {"smooth", opts.positional[3]}};
            StrataData d = divisor_strata(resolve_divisor(entry, opts.positional[2]));
            const SCArrangement& smooth =
                require_sc(resolve_divisor(entry, opts.positional[3]), opts.positional[3]);
            if (smooth.size() != 1)
                throw UsageError(codes::range,
                                 "the second divisor must have exactly one smooth component");
            Verdict v = smooth_split_check(entry.space, d, smooth.classes[0]);
            r.verdicts.push_back(verdict_entry(v));
            r.classes.push_back(class_entry("lhs", v.lhs, md));
            r.classes.push_back(class_entry("rhs", v.rhs, md));
            finish_verdicts(r);
        } else if (cmd == "verify-grr") {
            require_args(opts, 2, "verify-grr SPACE DIVISOR");
            const CatalogEntry& entry = ctx.resolve_space(opts.positional[1]);
            r.inputs = {{"space", opts.positional[1]}, {"divisor", opts.positional[2]}};
            const SCArrangement& arr =
                require_sc(resolve_divisor(entry, opts.positional[2]), opts.positional[2]);
            Verdict v = omx_log_consistency(entry.space, arr);
            r.verdicts.push_back(verdict_entry(v));
            r.classes.push_back(class_entry("lhs", v.lhs, md));
            r.classes.push_back(class_entry("rhs", v.rhs, md));
            finish_verdicts(r);
        } else if (cmd == "check-integrality") {
            require_args(opts, 2, "check-integrality SPACE DIVISOR");
            const CatalogEntry& entry = ctx.resolve_space(opts.positional[1]);
            r.inputs = {{"space", opts.positional[1]}, {"divisor", opts.positional[2]}};
            CohClass lc =
                log_chern(entry.space, divisor_strata(resolve_divisor(entry, opts.positional[2])));
            r.classes.push_back(class_entry("log-chern", lc, md));
            r.integrality.push_back(integrality_entry("log-chern", integrality_check(lc)));
            r.notes.push_back(kIntegralityCaveat);
            finish_verdicts(r);
        } else {
            throw UsageError(codes::syntax, "unknown command '" + cmd + "'");
        }
    } catch (const UsageError& e) {
        r.status = "error";
        r.error_code = e.code;
        r.error_message = e.what();
        r.exit_code = 2;
    } catch (const ParseError& e) {
        r.status = "error";
        r.error_code = e.code;
        r.error_message = e.what();
        r.exit_code = 2;
    } catch (const std::exception& e) {
        r.status = "error";
        r.error_code = "E_INVALID";
        r.error_message = e.what();
        r.exit_code = 2;
    }
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            started)
                      .count();
    CliResult out;
    out.output = json ? emit_json(r, timing) : emit_text(r, timing);
    out.exit_code = r.exit_code;
    out.report = std::move(r);
    return out;
}

}  // namespace logcalc
