#include <doctest.h>

#include "logcalc/report.hpp"
#include "test_util.hpp"

using namespace logcalc;
using testutil::cls;
using testutil::pn_ring;

namespace {

Report sample_report() {
    GradedRing bl = GradedRing::build(testutil::presentation(
        {{"H", 2}, {"e", 2}}, {"H^4", "H^2*e", "e^2 - 2*H*e + H^2"}, 6));
    Report r;
    r.command = "demo";
    r.inputs = {{"space", "catalog:P3"}, {"divisor", "twoplanes"}};
    r.classes.push_back(class_entry("c", cls(bl, "1 + 4*H - e + 7*H^2 - 4*H*e")));
    r.verdicts.push_back(
        verdict_entry(Verdict::compare("exactness", cls(bl, "H"), cls(bl, "H"))));
    r.verdicts.push_back(
        verdict_entry(Verdict::compare("broken", cls(bl, "1 + H"), cls(bl, "1 + H^2"))));
    r.integrality.push_back(integrality_entry("c", integrality_check(cls(bl, "3/2*H"))));
    r.tables = {{"betti", "1 2 2 1"}};
    r.notes = {"demo note"};
    r.status = "fail";
    r.exit_code = 1;
    r.timing_ms = 12.34;
    return r;
}

}  // namespace

TEST_CASE("text rendering of classes and verdicts") {
    Report r = sample_report();
    std::string text = emit_text(r);
    CHECK(text.find("deg 4: 7*H^2 - 4*H*e") != std::string::npos);
    CHECK(text.find("deg 2: 4*H - e") != std::string::npos);
    CHECK(text.find("verdict exactness: pass") != std::string::npos);
    CHECK(text.find("verdict broken: FAIL (first mismatch at deg 2)") != std::string::npos);
    CHECK(text.find("integrality c: FAIL") != std::string::npos);
    CHECK(text.find("deg 2: H has 3/2") != std::string::npos);
    CHECK(text.find("table betti: 1 2 2 1") != std::string::npos);
    CHECK(text.find("exit: 1") != std::string::npos);
    // timing is excluded unless requested, keeping output deterministic
    CHECK(text.find("timing") == std::string::npos);
    CHECK(emit_text(r, true).find("timing_ms:") != std::string::npos);
}

TEST_CASE("class rendering follows the canonical term layout") {
    GradedRing r2 = pn_ring(2);
    Report r;
    r.command = "x";
    r.classes.push_back(class_entry("k", cls(r2, "1 + 2*H + H^2")));
    std::string text = emit_text(r);
    CHECK(text.find("  deg 0: 1\n  deg 2: 2*H\n  deg 4: H^2\n") != std::string::npos);
}

TEST_CASE("max-degree display filter") {
    GradedRing r2 = pn_ring(2);
    ClassEntry e = class_entry("k", cls(r2, "1 + 2*H + H^2"), 2);
    REQUIRE(e.degrees.size() == 2);
    CHECK(e.degrees.back().degree == 2);
}

TEST_CASE("reports serialize deterministically") {
    Report r = sample_report();
    CHECK(emit_text(r) == emit_text(r));
    CHECK(emit_json(r) == emit_json(r));
    Report r2 = sample_report();
    r2.timing_ms = 999.0;  // timing must not affect serialized bytes
    CHECK(emit_json(r) == emit_json(r2));
    CHECK(emit_text(r) == emit_text(r2));
}

TEST_CASE("json round trip") {
    Report r = sample_report();
    std::string j = emit_json(r);
    Report back = parse_report_json(j);
    CHECK(back == r);
    CHECK(emit_json(back) == j);

    // error reports round-trip too
    Report err;
    err.command = "logchern";
    err.status = "error";
    err.error_code = "E_UNKNOWN_NAME";
    err.error_message = "no divisor named 'x'";
    err.exit_code = 2;
    CHECK(parse_report_json(emit_json(err)) == err);
}
