// Identity checks over the whole pipeline, grouped into named suites with
// deterministic JSON reports.
#pragma once

#include "lgq/brst.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lgq {

struct CheckResult {
    std::string name;
    bool pass = true;
    nlohmann::json detail = nlohmann::json::object();
    nlohmann::json to_json() const;
};

struct SuiteConfig {
    int K = 3;
    int N = 1;
    int deg_cap = 6;
    uint64_t seed = 1;
    int samples = 100;
};

// Monomials of total degree <= 2 reduced modulo det - 1; they span every
// polynomial of entry degree <= 2 and fiber degree <= 2 with total degree <= 2.
std::vector<PhasePoly> degree_two_generators(int N);

CheckResult check_bm_fidelity(int N, int max_fiber_degree = 3);
CheckResult check_associativity(int N, int K);
CheckResult check_covariance(int N, int K);
CheckResult check_invariance(int N, int K, int elements, uint64_t seed);
CheckResult check_rho_homomorphism(int N, int K);
CheckResult check_brst_identities(int N, uint64_t seed);
CheckResult check_quantized_rep(int N, int samples, uint64_t seed);
CheckResult check_perturbation(int retracts, int K, uint64_t seed);
CheckResult check_koszul_window(int degree_cap, int samples, int syzygy_degree, uint64_t seed);
CheckResult check_hypotheses(int samples, uint64_t seed);
CheckResult check_reduction(int K, int pairs);

// name in {star-identities, brst-identities, hpt, koszul, hypotheses, reduce}.
// Throws std::invalid_argument for an unknown name.
nlohmann::json run_suite(const std::string& name, const SuiteConfig& cfg);
const std::vector<std::string>& suite_names();

}  // namespace lgq
