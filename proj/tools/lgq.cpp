// Command-line front end.
//
// Exit codes: 0 success, 1 a checked identity failed, 2 usage or input error.
#include "CLI11.hpp"

#include "lgq/hpt.hpp"
#include "lgq/hypotheses.hpp"
#include "lgq/io.hpp"
#include "lgq/polyengine.hpp"
#include "lgq/reduce.hpp"
#include "lgq/suites.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace lgq;
using json = nlohmann::json;

namespace {

struct Options {
    int K = 2;
    int N = 1;
    int deg_cap = 6;
    uint64_t seed = 1;
    int samples = 100;
    bool text = false;
};

struct Output {
    json data;
    std::string text;
    bool ok = true;
};

json poly_json(const PhasePoly& f) { return {{"terms", phasepoly_to_json(f)}, {"text", f.str()}}; }

std::optional<std::filesystem::path> cache_dir() {
    const char* d = std::getenv("LGQ_CACHE_DIR");
    if (!d || !*d) return std::nullopt;
    return std::filesystem::path(d);
}

// Groebner basis, read from and written to the cache directory when set.
ConstraintIdeal load_ideal(int N, int cap) {
    auto dir = cache_dir();
    std::filesystem::path file;
    if (dir) {
        file = *dir / ("ideal_N" + std::to_string(N) + "_cap" + std::to_string(cap) + ".json");
        std::ifstream in(file);
        if (in) {
            try {
                return ConstraintIdeal(N, GroebnerBasis::from_json(json::parse(in)));
            } catch (const std::exception& e) {
                std::cerr << "ignoring cache entry " << file << ": " << e.what() << "\n";
            }
        }
    }
    ConstraintIdeal I(N, cap);
    if (dir) {
        std::filesystem::create_directories(*dir);
        std::ofstream(file) << I.basis().to_json(N).dump() << "\n";
    }
    return I;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

Output star_mul(const Options& o, const std::vector<std::string>& ex) {
    Phase ph(o.N);
    StarProduct sp(ph, o.K);
    PhasePoly r = sp.star(parse_expression(ex.at(0), o.N), parse_expression(ex.at(1), o.N));
    return {{{"K", o.K}, {"N", o.N}, {"result", poly_json(r)}}, r.str()};
}

Output star_bm(const Options& o, int m, bool closed) {
    BiDiffOp B = closed ? closed_form_bm(o.N, m) : build_bm(o.N, m);
    json j = B.to_json();
    return {{{"N", o.N}, {"m", m}, {"closed_form", closed}, {"terms", j}},
            std::to_string(B.terms.size()) + " terms\n" + j.dump(1)};
}

Output hpt_perturb(const Options& o, const std::string& file, bool random) {
    Retract r;
    Matrix t;
    if (random) {
        std::mt19937_64 eng(o.seed);
        auto gen = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(eng); };
        r = random_retract(gen);
        t = random_perturbation(r, gen, o.K);
    } else {
        json in = read_json_file(file);
        r = Retract::from_json(in.at("retract"));
        t = Matrix::from_json(in.at("perturbation"));
    }
    Retract out = perturb(r, t, o.K);
    Report rep = validate_retract(out, o.K);
    Output res{{{"K", o.K}, {"input", r.to_json()}, {"perturbation", t.to_json()}, {"retract", out.to_json()},
                {"validation", rep.to_json()}},
               std::string("perturbed retract ") + (rep.pass ? "valid" : "INVALID"), rep.pass};
    return res;
}

Output ideal_nf(const Options& o, const std::string& ex) {
    ConstraintIdeal I = load_ideal(o.N, o.deg_cap);
    PhasePoly f = parse_expression(ex, o.N);
    bool win = false;
    auto q = I.h0(f, &win);
    PhasePoly r = I.rest(f);
    json qs = json::array();
    std::string text = "normal form: " + r.str();
    for (int l = 0; l < 3; ++l) {
        qs.push_back(poly_json(q[l]));
        text += "\nq" + std::to_string(l + 1) + ": " + q[l].str();
    }
    return {{{"N", o.N},
             {"degree_cap", o.deg_cap},
             {"basis_complete", I.basis().complete},
             {"normal_form", poly_json(r)},
             {"quotients", qs},
             {"in_window", win}},
            text};
}

Output ideal_basis(const Options& o) {
    ConstraintIdeal I = load_ideal(o.N, o.deg_cap);
    json j = I.basis().to_json(o.N);
    std::string text = std::string("complete: ") + (I.basis().complete ? "yes" : "no");
    for (const auto& b : I.basis().basis) text += "\n" + b.to_phase(o.N).str();
    return {j, text};
}

Output ideal_syz(const Options& o, int degree, int window) {
    SyzygyReport rep = moment_syzygies(o.N, degree, window);
    json nk = json::array();
    for (const auto& s : rep.non_koszul) nk.push_back({poly_json(s[0]), poly_json(s[1]), poly_json(s[2])});
    std::string text = std::to_string(rep.syzygies.size()) + " syzygies of degree <= " + std::to_string(degree) + ", " +
                       std::to_string(rep.non_koszul.size()) + " outside the Koszul span";
    return {{{"N", o.N},
             {"degree", degree},
             {"koszul_window", rep.koszul_window},
             {"total", rep.syzygies.size()},
             {"non_koszul_count", rep.non_koszul.size()},
             {"non_koszul", nk}},
            text};
}

Output hypotheses_check(const Options& o, const std::string& kind) {
    json j = hypotheses_suite(kind, o.samples, o.seed);
    bool pass = j.at("pass").get<bool>();
    return {j, std::string(pass ? "PASS" : "FAIL") + " hypotheses " + kind, pass};
}

Output reduce_star(const Options& o, const std::vector<std::string>& ex) {
    Reducer R(o.N, o.K, std::max(o.deg_cap, 12));
    PhasePoly f = parse_expression(ex.at(0), o.N), g = parse_expression(ex.at(1), o.N);
    json j = R.reduced_star_report(f, g);
    PhasePoly r = phasepoly_from_json(j["result"]);
    j["result"] = poly_json(r);
    return {j, r.str()};
}

Output reduce_poisson(const Options& o, const std::vector<std::string>& ex) {
    Reducer R(o.N, o.K, std::max(o.deg_cap, 12));
    PhasePoly r = R.reduced_poisson(parse_expression(ex.at(0), o.N), parse_expression(ex.at(1), o.N));
    return {{{"result", poly_json(r)}}, r.str()};
}

Output suite(const Options& o, const std::string& name) {
    SuiteConfig cfg{o.K, o.N, o.deg_cap, o.seed, o.samples};
    json j = run_suite(name, cfg);
    std::string text;
    for (const auto& c : j["checks"]) text += std::string(c["pass"].get<bool>() ? "PASS " : "FAIL ") + c["name"].get<std::string>() + "\n";
    text += std::string(j["pass"].get<bool>() ? "PASS" : "FAIL") + " suite " + name;
    return {j, text, j["pass"].get<bool>()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for deformation quantization and reduction on T*SU(2)^N"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("-K", o.K, "lambda order")->check(CLI::Range(0, 8));
    app.add_option("-N", o.N, "number of copies")->check(CLI::Range(1, 4));
    app.add_option("--deg-cap", o.deg_cap, "Groebner degree cap")->check(CLI::Range(1, 40));
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
    auto* fmt = app.add_option_group("format");
    fmt->add_flag("--json", [&](int64_t) { o.text = false; }, "JSON output (default)");
    fmt->add_flag("--text", [&](int64_t) { o.text = true; }, "plain text output");

    std::function<Output()> action;
    std::vector<std::string> exprs;
    std::string name, file, kind = "all";
    int m = 0, degree = 4, window = 7;
    bool closed = false, random = false;

    auto* star = app.add_subcommand("star", "star product")->require_subcommand(1);
    auto* mul = star->add_subcommand("mul", "f * g");
    mul->add_option("exprs", exprs, "two expressions")->required()->expected(2);
    mul->callback([&] { action = [&] { return star_mul(o, exprs); }; });
    auto* bm = star->add_subcommand("bm", "bidifferential operator B_m");
    bm->add_option("m", m)->required()->check(CLI::Range(0, 6));
    bm->add_flag("--closed", closed, "closed form from structure constants (m <= 2)");
    bm->callback([&] { action = [&] { return star_bm(o, m, closed); }; });

    auto* hpt = app.add_subcommand("hpt", "homological perturbation")->require_subcommand(1);
    auto* pert = hpt->add_subcommand("perturb", "perturb a retract");
    pert->add_option("file", file, "JSON with 'retract' and 'perturbation'");
    pert->add_flag("--random", random, "random retract and perturbation from --seed");
    pert->callback([&] {
        if (file.empty() && !random) throw CLI::ValidationError("perturb", "give a file or --random");
        action = [&] { return hpt_perturb(o, file, random); };
    });

    auto* ideal = app.add_subcommand("ideal", "constraint ideal")->require_subcommand(1);
    auto* nf = ideal->add_subcommand("nf", "normal form and J-quotients");
    nf->add_option("expr", name)->required();
    nf->callback([&] { action = [&] { return ideal_nf(o, name); }; });
    auto* basis = ideal->add_subcommand("basis", "Groebner basis with certificates");
    basis->callback([&] { action = [&] { return ideal_basis(o); }; });
    auto* syz = ideal->add_subcommand("syz", "syzygies of the moment components");
    syz->add_option("--degree", degree)->check(CLI::Range(0, 8));
    syz->add_option("--window", window, "degree window of the Koszul span")->check(CLI::Range(3, 16));
    syz->callback([&] { action = [&] { return ideal_syz(o, degree, window); }; });

    auto* hyp = app.add_subcommand("hypotheses", "generating and acyclicity hypotheses")->require_subcommand(1);
    auto* check = hyp->add_subcommand("check", "sampled checks");
    check->add_option("--case", kind)->check(CLI::IsMember({"T", "G", "acyclic", "complement", "torus_pair", "all"}));
    check->callback([&] { action = [&] { return hypotheses_check(o, kind); }; });

    auto* red = app.add_subcommand("reduce", "reduction")->require_subcommand(1);
    auto* rstar = red->add_subcommand("star", "reduced star product");
    rstar->add_option("exprs", exprs)->required()->expected(2);
    rstar->callback([&] { action = [&] { return reduce_star(o, exprs); }; });
    auto* rpb = red->add_subcommand("poisson", "reduced Poisson bracket");
    rpb->add_option("exprs", exprs)->required()->expected(2);
    rpb->callback([&] { action = [&] { return reduce_poisson(o, exprs); }; });

    auto* su = app.add_subcommand("suite", "identity suites");
    su->add_option("name", name)->required()->check(CLI::IsMember(suite_names()));
    su->callback([&] { action = [&] { return suite(o, name); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Output out = action();
        if (o.text)
            std::cout << out.text << "\n";
        else
            std::cout << out.data.dump(2) << "\n";
        return out.ok ? 0 : 1;
    } catch (const ParseError& e) {
        json err = {{"error", "parse error"}, {"message", e.what()}, {"position", e.position}};
        if (o.text)
            std::cerr << e.what() << "\n";
        else
            std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        if (o.text)
            std::cerr << "error: " << e.what() << "\n";
        else
            std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 2;
    }
}
