#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "logcalc/divisor.hpp"
#include "logcalc/ring.hpp"

namespace logcalc {

// Machine-readable command result. Serialization is deterministic: identical
// inputs produce byte-identical reports. Coefficients render canonically as
// "p" or "p/q" with q > 0 and gcd 1; class terms are keyed by basis
// monomials, largest first within each degree. Wall-clock timing is kept out
// of the serialized forms unless explicitly requested, so it cannot break
// the determinism contract.
struct ReportTerm {
    std::string monomial;
    std::string coeff;  // signed canonical rational
    friend bool operator==(const ReportTerm&, const ReportTerm&) = default;
};

struct ReportDegree {
    int degree = 0;
    std::vector<ReportTerm> terms;
    friend bool operator==(const ReportDegree&, const ReportDegree&) = default;
};

struct ClassEntry {
    std::string label;
    std::vector<ReportDegree> degrees;
    friend bool operator==(const ClassEntry&, const ClassEntry&) = default;
};

struct VerdictEntry {
    std::string name;
    bool pass = false;
    std::string detail;
    int first_mismatch_degree = -1;
    std::vector<ReportDegree> difference;
    friend bool operator==(const VerdictEntry&, const VerdictEntry&) = default;
};

struct IntegralityViolation {
    int degree = 0;
    std::string monomial;
    std::string coeff;
    friend bool operator==(const IntegralityViolation&, const IntegralityViolation&) = default;
};

struct IntegralityEntry {
    std::string label;
    bool pass = true;
    std::vector<IntegralityViolation> violations;
    friend bool operator==(const IntegralityEntry&, const IntegralityEntry&) = default;
};

struct Report {
    std::string command;
    std::string status = "ok";  // ok | pass | fail | error
    int exit_code = 0;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<ClassEntry> classes;
    std::vector<VerdictEntry> verdicts;
    std::vector<IntegralityEntry> integrality;
    std::vector<std::pair<std::string, std::string>> tables;
    std::vector<std::string> notes;
    std::string error_code;
    std::string error_message;
    double timing_ms = 0;  // not serialized by default

    friend bool operator==(const Report& a, const Report& b) {
        return a.command == b.command && a.status == b.status && a.exit_code == b.exit_code &&
               a.inputs == b.inputs && a.classes == b.classes && a.verdicts == b.verdicts &&
               a.integrality == b.integrality && a.tables == b.tables && a.notes == b.notes &&
               a.error_code == b.error_code && a.error_message == b.error_message;
    }
};

inline std::vector<ReportDegree> degrees_of(const CohClass& x, int max_degree = -1) {
    std::vector<ReportDegree> out;
    for (const auto& [d, coords] : x.components()) {
        if (max_degree >= 0 && d > max_degree) continue;
        const auto& monos = x.ring().basis_monomials(d);
        ReportDegree rd;
        rd.degree = d;
        for (std::size_t i = coords.size(); i-- > 0;) {
            if (coords[i].is_zero()) continue;
            rd.terms.push_back({x.ring().monomial_name(monos[i]), coords[i].to_string()});
        }
        out.push_back(std::move(rd));
    }
    return out;
}

inline ClassEntry class_entry(std::string label, const CohClass& x, int max_degree = -1) {
    return ClassEntry{std::move(label), degrees_of(x, max_degree)};
}

inline VerdictEntry verdict_entry(const Verdict& v) {
    VerdictEntry e;
    e.name = v.name;
    e.pass = v.pass;
    e.detail = v.detail;
    e.first_mismatch_degree = v.first_mismatch_degree();
    if (!v.pass) e.difference = degrees_of(v.difference);
    return e;
}

inline IntegralityEntry integrality_entry(std::string label, const IntegralityReport& rep) {
    IntegralityEntry e;
    e.label = std::move(label);
    e.pass = rep.pass;
    for (const auto& v : rep.violations)
        e.violations.push_back({v.degree, v.monomial, v.coefficient.to_string()});
    return e;
}

namespace detail {

// "deg 4: 7*H^2 - 4*H*e" from stored signed terms
inline std::string degree_line(const ReportDegree& rd) {
    std::string s = "deg " + std::to_string(rd.degree) + ": ";
    bool first = true;
    for (const auto& t : rd.terms) {
        bool neg = !t.coeff.empty() && t.coeff[0] == '-';
        std::string mag = neg ? t.coeff.substr(1) : t.coeff;
        std::string body =
            t.monomial == "1" ? mag : (mag == "1" ? t.monomial : mag + "*" + t.monomial);
        if (first)
            s += (neg ? "-" : "") + body;
        else
            s += (neg ? " - " : " + ") + body;
        first = false;
    }
    if (first) s += "0";
    return s;
}

}  // namespace detail

inline std::string emit_text(const Report& r, bool include_timing = false) {
    std::string out;
    out += "command: " + r.command + "\n";
    for (const auto& [k, v] : r.inputs) out += k + ": " + v + "\n";
    for (const auto& c : r.classes) {
        out += "class " + c.label + ":\n";
        if (c.degrees.empty()) out += "  0\n";
        for (const auto& d : c.degrees) out += "  " + detail::degree_line(d) + "\n";
    }
    for (const auto& v : r.verdicts) {
        if (v.pass) {
            out += "verdict " + v.name + ": pass\n";
        } else {
            out += "verdict " + v.name + ": FAIL (first mismatch at deg " +
                   std::to_string(v.first_mismatch_degree) + ")\n";
            out += "  difference:\n";
            for (const auto& d : v.difference) out += "    " + detail::degree_line(d) + "\n";
        }
        if (!v.detail.empty()) out += "  detail: " + v.detail + "\n";
    }
    for (const auto& i : r.integrality) {
        out += "integrality " + i.label + ": " + (i.pass ? "pass" : "FAIL") + "\n";
        for (const auto& v : i.violations)
            out += "  deg " + std::to_string(v.degree) + ": " + v.monomial + " has " +
                   v.coeff + "\n";
    }
    for (const auto& [k, v] : r.tables) out += "table " + k + ": " + v + "\n";
    for (const auto& n : r.notes) out += "note: " + n + "\n";
    if (r.status == "error")
        out += "error: " + r.error_code + ": " + r.error_message + "\n";
    if (include_timing) out += "timing_ms: " + std::to_string(r.timing_ms) + "\n";
    out += "status: " + r.status + "\n";
    out += "exit: " + std::to_string(r.exit_code) + "\n";
    return out;
}

namespace detail {

inline nlohmann::ordered_json degrees_json(const std::vector<ReportDegree>& degrees) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : degrees) {
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const auto& t : d.terms)
            terms.push_back(nlohmann::ordered_json{{"mono", t.monomial}, {"coeff", t.coeff}});
        arr.push_back(nlohmann::ordered_json{{"deg", d.degree}, {"terms", terms}});
    }
    return arr;
}

inline std::vector<ReportDegree> degrees_from_json(const nlohmann::json& arr) {
    std::vector<ReportDegree> out;
    for (const auto& d : arr) {
        ReportDegree rd;
        rd.degree = d.at("deg").get<int>();
        for (const auto& t : d.at("terms"))
            rd.terms.push_back(
                {t.at("mono").get<std::string>(), t.at("coeff").get<std::string>()});
        out.push_back(std::move(rd));
    }
    return out;
}

}  // namespace detail

inline std::string emit_json(const Report& r, bool include_timing = false) {
    nlohmann::ordered_json j;
    j["schema"] = "logchern-report/1";
    j["command"] = r.command;
    j["status"] = r.status;
    j["exit_code"] = r.exit_code;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const auto& [k, v] : r.inputs)
        inputs.push_back(nlohmann::ordered_json{{"key", k}, {"value", v}});
    j["inputs"] = inputs;
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (const auto& c : r.classes)
        classes.push_back(nlohmann::ordered_json{{"label", c.label},
                                                 {"degrees", detail::degrees_json(c.degrees)}});
    j["classes"] = classes;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back(nlohmann::ordered_json{
            {"name", v.name},
            {"pass", v.pass},
            {"detail", v.detail},
            {"first_mismatch_degree", v.first_mismatch_degree},
            {"difference", detail::degrees_json(v.difference)}});
    j["verdicts"] = verdicts;
    nlohmann::ordered_json integrality = nlohmann::ordered_json::array();
    for (const auto& i : r.integrality) {
        nlohmann::ordered_json viol = nlohmann::ordered_json::array();
        for (const auto& v : i.violations)
            viol.push_back(nlohmann::ordered_json{
                {"deg", v.degree}, {"mono", v.monomial}, {"coeff", v.coeff}});
        integrality.push_back(nlohmann::ordered_json{
            {"label", i.label}, {"pass", i.pass}, {"violations", viol}});
    }
    j["integrality"] = integrality;
    nlohmann::ordered_json tables = nlohmann::ordered_json::array();
    for (const auto& [k, v] : r.tables)
        tables.push_back(nlohmann::ordered_json{{"name", k}, {"value", v}});
    j["tables"] = tables;
    j["notes"] = r.notes;
    if (r.status == "error")
        j["error"] = nlohmann::ordered_json{{"code", r.error_code},
                                            {"message", r.error_message}};
    if (include_timing) j["timing_ms"] = r.timing_ms;
    return j.dump(2) + "\n";
}

inline Report parse_report_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Report r;
    r.command = j.at("command").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    for (const auto& i : j.at("inputs"))
        r.inputs.emplace_back(i.at("key").get<std::string>(), i.at("value").get<std::string>());
    for (const auto& c : j.at("classes"))
        r.classes.push_back(ClassEntry{c.at("label").get<std::string>(),
                                       detail::degrees_from_json(c.at("degrees"))});
    for (const auto& v : j.at("verdicts")) {
        VerdictEntry e;
        e.name = v.at("name").get<std::string>();
        e.pass = v.at("pass").get<bool>();
        e.detail = v.at("detail").get<std::string>();
        e.first_mismatch_degree = v.at("first_mismatch_degree").get<int>();
        e.difference = detail::degrees_from_json(v.at("difference"));
        r.verdicts.push_back(std::move(e));
    }
    for (const auto& i : j.at("integrality")) {
        IntegralityEntry e;
        e.label = i.at("label").get<std::string>();
        e.pass = i.at("pass").get<bool>();
        for (const auto& v : i.at("violations"))
            e.violations.push_back({v.at("deg").get<int>(), v.at("mono").get<std::string>(),
                                    v.at("coeff").get<std::string>()});
        r.integrality.push_back(std::move(e));
    }
    for (const auto& t : j.at("tables"))
        r.tables.emplace_back(t.at("name").get<std::string>(),
                              t.at("value").get<std::string>());
    for (const auto& n : j.at("notes")) r.notes.push_back(n.get<std::string>());
    if (j.contains("error")) {
        r.error_code = j["error"].at("code").get<std::string>();
        r.error_message = j["error"].at("message").get<std::string>();
    }
    return r;
}

}  // namespace logcalc
