// Acceptance run: one pass/fail line per criterion, optional JSON report.
#include "lgq/suites.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

using namespace lgq;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::function<std::vector<CheckResult>()> run;
};

std::string summarize(const CheckResult& c) {
    const auto& d = c.detail;
    if (c.name == "associativity")
        return "N=" + d["N"].dump() + " triples=" + d["triples"].dump() + " failures=" + d["failures"].dump();
    if (c.name == "koszul_window")
        return "homotopy " + d["homotopy"]["checked"].dump() + " samples, failures=" + d["homotopy"]["failures"].dump() +
               "; syzygies deg<=" + d["syzygies"]["degree"].dump() + ": " + d["syzygies"]["total"].dump() + " total, " +
               d["syzygies"]["non_koszul"].dump() + " outside the Koszul span";
    if (c.name == "hypotheses" || c.name == "reduction") return c.pass ? "all samples pass" : "see report";
    long checked = 0, failures = 0;
    if (d.contains("identities"))
        for (const auto& [k, v] : d["identities"].items()) {
            checked += v["checked"].get<long>();
            failures += v["failures"].get<long>();
        }
    std::string s = d.contains("N") ? "N=" + d["N"].dump() + " " : "";
    return s + std::to_string(checked) + " checks, " + std::to_string(failures) + " failures";
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "B-operator fidelity", [] { return std::vector{check_bm_fidelity(1), check_bm_fidelity(2)}; }},
        {2, "associativity mod lambda^4",
         [] { return std::vector{check_associativity(1, 3), check_associativity(2, 3)}; }},
        {3, "covariance of moment components", [] { return std::vector{check_covariance(1, 4), check_covariance(2, 4)}; }},
        {4, "invariance under the group action mod lambda^4",
         [] { return std::vector{check_invariance(1, 3, 10, 41), check_invariance(2, 3, 10, 42)}; }},
        {5, "standard-order representation is a homomorphism mod lambda^4",
         [] { return std::vector{check_rho_homomorphism(1, 3), check_rho_homomorphism(2, 3)}; }},
        {6, "BRST identities", [] { return std::vector{check_brst_identities(1, 61), check_brst_identities(2, 62)}; }},
        {7, "quantized representation mod lambda^2",
         [] { return std::vector{check_quantized_rep(1, 20, 71), check_quantized_rep(2, 20, 72)}; }},
        {8, "perturbation engine mod lambda^3", [] { return std::vector{check_perturbation(60, 2, 81)}; }},
        {9, "Koszul homotopy window and syzygies (N=1, cap 6)",
         [] { return std::vector{check_koszul_window(6, 100, 4, 91)}; }},
        {10, "hypotheses suite", [] { return std::vector{check_hypotheses(100, 101)}; }},
        {11, "reduction pipeline (N=1, K=2)", [] { return std::vector{check_reduction(2, 21)}; }},
    };

    nlohmann::json report = nlohmann::json::array();
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<CheckResult> rs = c.run();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = true;
        std::string detail;
        nlohmann::json entry = {{"criterion", c.id}, {"title", c.title}, {"seconds", secs}, {"checks", nlohmann::json::array()}};
        for (const auto& r : rs) {
            pass = pass && r.pass;
            if (!detail.empty()) detail += "; ";
            detail += summarize(r);
            entry["checks"].push_back(r.to_json());
        }
        entry["pass"] = pass;
        report.push_back(entry);
        if (!pass) ++failed;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1fs", secs);
        std::cout << (pass ? "PASS" : "FAIL") << "  #" << c.id << " " << c.title << " [" << detail << "] (" << buf << ")"
                  << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
    if (argc > 1) std::ofstream(argv[1]) << report.dump(2) << "\n";
    return failed ? 1 : 0;
}
