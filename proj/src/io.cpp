#include "lgq/io.hpp"

#include <cctype>

namespace lgq {

namespace {

class Parser {
public:
    Parser(const std::string& s, int N) : s_(s), N_(N), ph_(N) {}

    PhasePoly parse() {
        PhasePoly r = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("trailing input", pos_);
        return r;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    long long integer() {
        size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("expected integer", start);
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (v > (INT64_MAX - 9) / 10) throw ParseError("integer too large", start);
            v = v * 10 + (s_[pos_++] - '0');
        }
        return neg ? -v : v;
    }

    int index(int lo, int hi) {
        if (pos_ >= s_.size() || s_[pos_] != '[') throw ParseError("expected '['", pos_);
        ++pos_;
        size_t at = pos_;
        long long v = integer();
        if (v < lo || v > hi) throw ParseError("index out of range", at);
        if (pos_ >= s_.size() || s_[pos_] != ']') throw ParseError("expected ']'", pos_);
        ++pos_;
        return static_cast<int>(v);
    }

    PhasePoly expr() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            skip();
            if (pos_ >= s_.size()) throw ParseError("expected operator", pos_);
            char op = s_[pos_];
            size_t op_pos = pos_;
            if (op != '+' && op != '-' && op != '*' && op != '^') throw ParseError("unknown operator", op_pos);
            ++pos_;
            std::vector<PhasePoly> args;
            if (op == '^') {
                args.push_back(expr());
                skip();
                size_t at = pos_;
                long long e = integer();
                if (e < 0 || e > 64) throw ParseError("exponent out of range", at);
                skip();
                if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
                ++pos_;
                return args[0].pow(static_cast<int>(e));
            }
            for (;;) {
                skip();
                if (pos_ >= s_.size()) throw ParseError("expected ')'", pos_);
                if (s_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                args.push_back(expr());
            }
            if (args.empty()) throw ParseError("operator needs arguments", op_pos);
            PhasePoly r = args[0];
            if (op == '-' && args.size() == 1) return -r;
            for (size_t k = 1; k < args.size(); ++k) {
                if (op == '+') r += args[k];
                if (op == '-') r -= args[k];
                if (op == '*') r *= args[k];
            }
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            size_t at = pos_;
            long long n = integer();
            long long d = 1;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                d = integer();
                if (d == 0) throw ParseError("zero denominator", at);
            }
            return PhasePoly(N_, Series(GQ(Q(n, d))));
        }
        size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (name == "a") {
            int n = index(1, N_), i = index(1, 2), j = index(1, 2);
            return ph_.entry(n - 1, i - 1, j - 1);
        }
        if (name == "p") {
            int n = index(1, N_), k = index(1, 3);
            return ph_.p(3 * (n - 1) + k - 1);
        }
        if (name == "J") return ph_.moment(index(1, 3) - 1);
        if (name == "lambda") return PhasePoly::lambda(N_);
        if (name == "i") return PhasePoly(N_, Series(GQ::I()));
        throw ParseError("unknown symbol '" + name + "'", start);
    }

    const std::string& s_;
    size_t pos_ = 0;
    int N_;
    Phase ph_;
};

nlohmann::json gq_to_json(const GQ& c) { return nlohmann::json::array({c.re.str(), c.im.str()}); }

GQ gq_from_json(const nlohmann::json& j) {
    return GQ(Q::parse(j.at(0).get<std::string>()), Q::parse(j.at(1).get<std::string>()));
}

}  // namespace

PhasePoly parse_expression(const std::string& text, int N) { return Parser(text, N).parse(); }

nlohmann::json series_to_json(const Series& s) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : s.coeffs()) c.push_back(gq_to_json(x));
    nlohmann::json j = {{"lambda", c}};
    j["prec"] = s.prec() == Series::kExact ? nlohmann::json(nullptr) : nlohmann::json(s.prec());
    return j;
}

Series series_from_json(const nlohmann::json& j) {
    std::vector<GQ> c;
    for (const auto& x : j.at("lambda")) c.push_back(gq_from_json(x));
    int prec = j.contains("prec") && !j.at("prec").is_null() ? j.at("prec").get<int>() : Series::kExact;
    return Series(c, prec);
}

nlohmann::json phasepoly_to_json(const PhasePoly& f) {
    const int N = f.N();
    Layout L{N};
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, s] : f.terms()) {
        nlohmann::json a = nlohmann::json::array(), p = nlohmann::json::array();
        for (int v = 0; v < L.nvars(); ++v) (L.is_entry(v) ? a : p).push_back(m.exp(v));
        nlohmann::json t = series_to_json(s);
        t["a"] = a;
        t["p"] = p;
        terms.push_back(t);
    }
    return {{"N", N}, {"terms", terms}};
}

PhasePoly phasepoly_from_json(const nlohmann::json& j) {
    const int N = j.at("N").get<int>();
    if (N < 1 || N > 3) throw std::invalid_argument("N must be in 1..3");
    Layout L{N};
    std::vector<Term> t;
    for (const auto& x : j.at("terms")) {
        Mono m;
        const auto& a = x.at("a");
        const auto& p = x.at("p");
        if (a.size() != static_cast<size_t>(4 * N) || p.size() != static_cast<size_t>(3 * N))
            throw std::invalid_argument("exponent vector has wrong length");
        for (int v = 0; v < 4 * N; ++v) m.set(v, a.at(v).get<int>());
        for (int v = 0; v < 3 * N; ++v) m.set(4 * N + v, p.at(v).get<int>());
        t.emplace_back(m, series_from_json(x));
    }
    return PhasePoly::from_terms(N, std::move(t));
}

nlohmann::json vec_to_json(const Vec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(gq_to_json(x));
    return a;
}

nlohmann::json GhostPoly::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, c] : t_) {
        nlohmann::json g = nlohmann::json::array(), a = nlohmann::json::array();
        for (int l = 0; l < 8; ++l) {
            if (ghost_mask(k) & (1 << l)) g.push_back(l + 1);
            if (antighost_mask(k) & (1 << l)) a.push_back(l + 1);
        }
        arr.push_back({{"coefficient", phasepoly_to_json(c)}, {"ghosts", g}, {"antighosts", a}});
    }
    return arr;
}

GhostPoly GhostPoly::from_json(int N, const nlohmann::json& j) {
    GhostPoly r(N);
    for (const auto& t : j) {
        std::vector<int> g, a;
        for (const auto& x : t.at("ghosts")) g.push_back(x.get<int>() - 1);
        for (const auto& x : t.at("antighosts")) a.push_back(x.get<int>() - 1);
        r += GhostPoly::word(phasepoly_from_json(t.at("coefficient")), g, a);
    }
    return r;
}

}  // namespace lgq
