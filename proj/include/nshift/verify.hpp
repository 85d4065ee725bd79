#pragma once

#include <string>
#include <vector>

#include "nshift/qshift.hpp"
#include "nshift/shiftdiff.hpp"

namespace nshift {

struct CheckResult {
    std::string identity;
    bool pass = true;
    std::string counterexample;  // JSON text; empty when passing
};

struct CaseResult {
    std::string descriptor;
    std::vector<CheckResult> checks;
    bool pass = true;
    long wall_ms = 0;

    void add(const std::string& identity, bool ok, const std::string& counter = "");
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseResult> cases;
    bool pass = true;
    std::string selected_variant;  // q-transmutation records the symmetrizer reading
};

struct VerifyOptions {
    int window_rank1 = 6;
    int window_rank2 = 4;
    int window_q = 3;
    bool symbolic = true;
    std::vector<Rat> assignment;  // rational multiplicities when !symbolic
    std::string only;             // restrict to a type ("BC1") or pair ("case1:A1")
    int jobs = 1;
    bool with_timing = true;
};

std::vector<std::string> suite_names();
bool is_q_suite(const std::string& suite);
SuiteReport run_suite(const std::string& suite, const VerifyOptions& opt);

std::string report_to_json_text(const SuiteReport& report, bool with_timing);

// Group-algebra JSON: {"weights": [[..],..], "coeffs": ["..",..]}.
std::string galg_to_json_text(const GAElem& f, const ScalarCtx& ctx);
GAElem galg_from_json_text(const std::string& text, int rank, const ScalarCtx& ctx);

}  // namespace nshift
