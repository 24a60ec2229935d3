#include "bsos/bench.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include <json.hpp>

#include "bsos/rng.hpp"

namespace bsos {

namespace {

// ---- catalog helpers ----------------------------------------------------

// c * x_i^p   (1-based variable index)
void add1(Polynomial& poly, int n, int i, int p, double c) {
    std::vector<int> e(n, 0);
    e[i - 1] = p;
    poly.add_term(e, c);
}

// c * x_i^pi * x_j^pj
void add2(Polynomial& poly, int n, int i, int pi, int j, int pj, double c) {
    std::vector<int> e(n, 0);
    e[i - 1] += pi;
    e[j - 1] += pj;
    poly.add_term(e, c);
}

void addconst(Polynomial& poly, int n, double c) { poly.add_term(std::vector<int>(n, 0), c); }

// a x_i^p + b x_j^q + c x_i x_j over consecutive pairs (1,2), (3,4), ...
Polynomial pair_form(int n, int p, double a, int q, double b, double c) {
    Polynomial g(n);
    for (int i = 1; i + 1 <= n; i += 2) {
        add1(g, n, i, p, a);
        add1(g, n, i + 1, q, b);
        add2(g, n, i, 1, i + 1, 1, c);
    }
    return g.canonicalized();
}

// alternating diagonal form: -(a x_1^p + b x_2^p + a x_3^p + ...) + c0
Polynomial alt_diag(int n, int p, double a, double b, double c0) {
    Polynomial g(n);
    for (int i = 1; i <= n; ++i) add1(g, n, i, p, -(i % 2 ? a : b));
    addconst(g, n, c0);
    return g.canonicalized();
}

// f = x_1^p - x_2^p + x_3^p - ... + x_1 - x_2
Polynomial alternating_objective(int n, int p) {
    Polynomial f(n);
    for (int i = 1; i <= n; ++i) add1(f, n, i, p, i % 2 ? 1.0 : -1.0);
    add1(f, n, 1, 1, 1.0);
    add1(f, n, 2, 1, -1.0);
    return f.canonicalized();
}

SemialgebraicProblem make(const std::string& name, Polynomial f, std::vector<Polynomial> gs) {
    SemialgebraicProblem p;
    p.name = name;
    p.objective = f.canonicalized();
    const int n = p.objective.num_vars();
    for (auto& g : gs) p.generators.push_back(g.canonicalized());
    for (int i = 1; i <= n; ++i) {             // bound generators x_i >= 0
        Polynomial b(n);
        add1(b, n, i, 1, 1.0);
        p.generators.push_back(b.canonicalized());
    }
    p.validate();
    return p;
}

// standard constraint block shared by the Pn_2 instances
std::vector<Polynomial> p2_constraints(int n) {
    return {pair_form(n, 2, 2, 2, 3, 2), pair_form(n, 2, 3, 2, 2, -4),
            pair_form(n, 2, 1, 2, 6, -4), pair_form(n, 2, 1, 2, 4, -3),
            pair_form(n, 2, 2, 2, 5, 3)};
}

SemialgebraicProblem make_Pn2(const std::string& name, int n) {
    return make(name, alternating_objective(n, 2), p2_constraints(n));
}

// Pn_4 / Pn_6 / Pn_8 share the shape: g1 and g4 carry the high power
SemialgebraicProblem make_Pn_high(const std::string& name, int n, int p, double g1a, double g1b,
                                  double g4b) {
    std::vector<Polynomial> gs = {pair_form(n, p, g1a, 2, g1b, 2), pair_form(n, 2, 3, 2, 2, -4),
                                  pair_form(n, 2, 1, 2, 6, -4), pair_form(n, 2, 1, p, g4b, -3),
                                  pair_form(n, 2, 2, 2, 5, 3)};
    return make(name, alternating_objective(n, p), gs);
}

Polynomial sextic_objective_pairs(int n) {
    // sum over pairs: x^4 y^2 + x^2 y^4 - x^2 y^2
    Polynomial f(n);
    for (int i = 1; i + 1 <= n; i += 2) {
        add2(f, n, i, 4, i + 1, 2, 1.0);
        add2(f, n, i, 2, i + 1, 4, 1.0);
        add2(f, n, i, 2, i + 1, 2, -1.0);
    }
    return f.canonicalized();
}

std::vector<Polynomial> p46_constraints(int n) {
    Polynomial g1(n);
    for (int i = 1; i <= n; ++i) add1(g1, n, i, 2, 1.0);
    Polynomial g3(n);
    for (int i = 1; i + 1 <= n; i += 2) {
        add1(g3, n, i, 2, 1.0);
        add1(g3, n, i + 1, 4, 6.0);
        add2(g3, n, i, 1, i + 1, 1, -8.0);
    }
    addconst(g3, n, 2.5);
    Polynomial g4(n);
    for (int i = 1; i <= n; ++i) add1(g4, n, i, 4, i % 2 ? 1.0 : 3.0);
    Polynomial g5(n);
    for (int i = 1; i <= n; ++i) add1(g5, n, i, i % 2 ? 2 : 3, 1.0);
    return {g1, pair_form(n, 2, 3, 2, 2, -4), g3, g4, g5};
}

SemialgebraicProblem make_P2() {
    const int n = 2;
    Polynomial f(n);
    add2(f, n, 1, 4, 2, 2, 1.0);
    add2(f, n, 1, 2, 2, 4, 1.0);
    add2(f, n, 1, 2, 2, 2, -1.0);
    Polynomial g1(n);
    add1(g1, n, 1, 2, 1.0); add1(g1, n, 2, 2, 1.0);
    Polynomial g2(n);
    add1(g2, n, 1, 2, 3.0); add1(g2, n, 2, 2, 2.0); add2(g2, n, 1, 1, 2, 1, -4.0);
    Polynomial g3(n);
    add1(g3, n, 1, 2, 1.0); add1(g3, n, 2, 4, 6.0); add2(g3, n, 1, 1, 2, 1, -8.0);
    addconst(g3, n, 2.5);
    Polynomial g4(n);
    add1(g4, n, 1, 4, 1.0); add1(g4, n, 2, 4, 3.0);
    Polynomial g5(n);
    add1(g5, n, 1, 2, 1.0); add1(g5, n, 2, 3, 1.0);
    return make("P2", f, {g1, g2, g3, g4, g5});
}

SemialgebraicProblem make_P48() {
    const int n = 4;
    Polynomial f(n);
    for (int i = 1; i + 1 <= n; i += 2) {
        add2(f, n, i, 4, i + 1, 2, 1.0);
        add2(f, n, i, 2, i + 1, 6, 1.0);
        add2(f, n, i, 2, i + 1, 2, -1.0);
    }
    return make("P4_8", f, p46_constraints(n));
}

// P20_2 constraint set, transcribed literally including its irregular terms.
std::vector<Polynomial> p20_constraints() {
    const int n = 20;
    Polynomial g1(n);
    for (int i = 1; i + 1 <= 18; i += 2) {
        add1(g1, n, i, 2, 2.0); add1(g1, n, i + 1, 2, 3.0); add2(g1, n, i, 1, i + 1, 1, 2.0);
    }
    add1(g1, n, 19, 2, 2.0); add1(g1, n, 10, 2, 3.0); add1(g1, n, 20, 2, 2.0);

    Polynomial g2(n);
    for (int i = 1; i + 1 <= 16; i += 2) {
        add1(g2, n, i, 2, 3.0); add1(g2, n, i + 1, 2, 2.0); add2(g2, n, i, 1, i + 1, 1, -4.0);
    }
    add1(g2, n, 17, 2, 3.0); add1(g2, n, 19, 2, 2.0); add1(g2, n, 18, 2, -4.0);
    add1(g2, n, 19, 2, 3.0); add1(g2, n, 20, 2, 2.0); add2(g2, n, 19, 1, 20, 1, -4.0);

    Polynomial g3(n);
    for (int i = 1; i + 1 <= 14; i += 2) {
        add1(g3, n, i, 2, 1.0); add1(g3, n, i + 1, 2, 6.0); add2(g3, n, i, 1, i + 1, 1, -4.0);
    }
    add1(g3, n, 15, 2, 1.0); add1(g3, n, 17, 2, 6.0); add1(g3, n, 16, 2, -4.0);
    add1(g3, n, 17, 2, 1.0); add1(g3, n, 18, 2, 6.0); add2(g3, n, 17, 1, 18, 1, -4.0);
    add1(g3, n, 19, 2, 1.0); add1(g3, n, 20, 2, 6.0); add2(g3, n, 19, 1, 20, 1, -4.0);

    Polynomial g4(n);
    for (int i = 1; i + 1 <= 10; i += 2) {
        add1(g4, n, i, 2, 1.0); add1(g4, n, i + 1, 2, 4.0); add2(g4, n, i, 1, i + 1, 1, -3.0);
    }
    add1(g4, n, 1, 2, 1.0); add1(g4, n, 12, 2, 4.0); add2(g4, n, 11, 1, 12, 1, -3.0);
    add1(g4, n, 13, 2, 1.0); add1(g4, n, 14, 2, 4.0); add2(g4, n, 15, 1, 14, 1, -3.0);
    for (int i = 15; i + 1 <= 20; i += 2) {
        add1(g4, n, i, 2, 1.0); add1(g4, n, i + 1, 2, 4.0); add2(g4, n, i, 1, i + 1, 1, -3.0);
    }

    Polynomial g5(n);
    for (int i = 1; i + 1 <= 10; i += 2) {
        add1(g5, n, i, 2, 2.0); add1(g5, n, i + 1, 2, 5.0); add2(g5, n, i, 1, i + 1, 1, 3.0);
    }
    add1(g5, n, 11, 2, 2.0); add1(g5, n, 13, 2, 5.0); add1(g5, n, 12, 2, 3.0);
    for (int i = 13; i + 1 <= 20; i += 2) {
        add1(g5, n, i, 2, 2.0); add1(g5, n, i + 1, 2, 5.0); add2(g5, n, i, 1, i + 1, 1, 3.0);
    }
    return {g1, g2, g3, g4, g5};
}

SemialgebraicProblem make_P20(const std::string& name, bool quartic_head) {
    const int n = 20;
    Polynomial f(n);
    for (int i = 1; i <= n; ++i) {
        const int p = quartic_head && i <= 2 ? 4 : 2;
        add1(f, n, i, p, i % 2 ? 1.0 : -1.0);
    }
    add1(f, n, 1, 1, 1.0);
    add1(f, n, 2, 1, -1.0);
    return make(name, f, p20_constraints());
}

// ---- convex family ------------------------------------------------------

Polynomial convex_objective(int n, int p, double cross) {
    // sum x_i^p + cross * x1^{p/2} x2^{p/2} - x1 - x2
    Polynomial f(n);
    for (int i = 1; i <= n; ++i) add1(f, n, i, p, 1.0);
    add2(f, n, 1, p / 2, 2, p / 2, cross);
    add1(f, n, 1, 1, -1.0);
    add1(f, n, 2, 1, -1.0);
    return f.canonicalized();
}

// g5 of the Cn_4 instances: -(2 x_odd^4 + 3 x_even^2) + 1.1
Polynomial c4_g5(int n) {
    Polynomial g(n);
    for (int i = 1; i <= n; ++i) {
        if (i % 2) add1(g, n, i, 4, -2.0);
        else add1(g, n, i, 2, -3.0);
    }
    addconst(g, n, 1.1);
    return g.canonicalized();
}

SemialgebraicProblem make_Cn2(const std::string& name, int n) {
    return make(name, convex_objective(n, 2, 2.0),
                {alt_diag(n, 2, 1, 2, 1.0), alt_diag(n, 2, 2, 1, 1.0), alt_diag(n, 2, 1, 4, 1.25),
                 alt_diag(n, 2, 4, 1, 1.25), alt_diag(n, 2, 2, 3, 1.1)});
}

SemialgebraicProblem make_Cn4(const std::string& name, int n) {
    return make(name, convex_objective(n, 4, 3.0),
                {alt_diag(n, 4, 1, 2, 1.0), alt_diag(n, 4, 2, 1, 1.0), alt_diag(n, 4, 1, 4, 1.25),
                 alt_diag(n, 4, 4, 1, 1.25), c4_g5(n)});
}

SemialgebraicProblem make_C84() {
    const int n = 8;
    // g1 and g2 carry a literal quadratic x5 term
    Polynomial g1(n);
    for (int i = 1; i <= n; ++i) add1(g1, n, i, i == 5 ? 2 : 4, -(i % 2 ? 1.0 : 2.0));
    addconst(g1, n, 1.0);
    Polynomial g2(n);
    for (int i = 1; i <= n; ++i) add1(g2, n, i, i == 5 ? 2 : 4, -(i % 2 ? 2.0 : 1.0));
    addconst(g2, n, 1.0);
    return make("C8_4", convex_objective(n, 4, 3.0),
                {g1, g2, alt_diag(n, 4, 1, 4, 1.25), alt_diag(n, 4, 4, 1, 1.25), c4_g5(n)});
}

// mixed-degree constraints shared by C4_6 / C6_6
std::vector<Polynomial> c6_constraints(int n) {
    Polynomial g3(n), g4(n), g5(n);
    for (int i = 1; i <= n; ++i) {
        if (i % 2) { add1(g3, n, i, 6, -1.0); add1(g4, n, i, 6, -4.0); add1(g5, n, i, 2, -2.0); }
        else { add1(g3, n, i, 2, -4.0); add1(g4, n, i, 2, -1.0); add1(g5, n, i, 6, -3.0); }
    }
    addconst(g3, n, 1.25);
    addconst(g4, n, 1.25);
    addconst(g5, n, 1.1);
    return {alt_diag(n, 6, 1, 2, 1.0), alt_diag(n, 6, 2, 1, 1.0), g3, g4, g5};
}

SemialgebraicProblem make_C46() {
    const int n = 4;
    Polynomial f(n);
    for (int i = 1; i <= n; ++i) add1(f, n, i, 6, 1.0);
    add2(f, n, 1, 3, 2, 3, 10.0 / 3.0);
    add1(f, n, 1, 1, -1.0);
    add1(f, n, 2, 1, -1.0);
    return make("C4_6", f, c6_constraints(n));
}

SemialgebraicProblem make_C66() {
    const int n = 6;
    Polynomial f(n);
    for (int i = 1; i <= n; ++i) add1(f, n, i, 6, 1.0);
    add2(f, n, 1, 2, 2, 3, 10.0 / 3.0);   // x1^2 x2^3, as printed
    add1(f, n, 1, 1, -1.0);
    add1(f, n, 2, 1, -1.0);
    return make("C6_6", f, c6_constraints(n));
}

SemialgebraicProblem make_C1() {
    const int n = 2;
    Polynomial f(n);
    add1(f, n, 1, 4, 1.0); add1(f, n, 2, 4, 1.0);
    add2(f, n, 1, 2, 2, 2, 2.0);
    add1(f, n, 1, 1, -1.0); add1(f, n, 2, 1, -1.0);
    Polynomial g1(n), g2(n), g3(n), g4(n), g5(n);
    add1(g1, n, 1, 4, -1.0); add1(g1, n, 2, 4, -2.0); addconst(g1, n, 1.0);
    add1(g2, n, 1, 4, -2.0); add1(g2, n, 2, 4, -1.0); addconst(g2, n, 1.0);
    add1(g3, n, 1, 4, -1.0); add1(g3, n, 2, 2, -4.0); addconst(g3, n, 1.25);
    add1(g4, n, 1, 4, -4.0); add1(g4, n, 2, 4, -1.0); addconst(g4, n, 1.25);
    add1(g5, n, 1, 4, -2.0); add1(g5, n, 2, 2, -3.0); addconst(g5, n, 1.1);
    return make("C1", f, {g1, g2, g3, g4, g5});
}

}  // namespace

std::vector<std::string> builtin_names() {
    return {"P1",    "P2",    "C1",    "P4_2",  "P4_4",  "P4_6",  "P4_8",  "P6_2",
            "P6_4",  "P6_6",  "P6_8",  "P8_2",  "P8_4",  "P8_6",  "P10_2", "P10_4",
            "P20_2", "P20_4", "C4_2",  "C4_4",  "C4_6",  "C6_2",  "C6_4",  "C6_6",
            "C8_2",  "C8_4",  "C10_2", "C10_4", "C20_2"};
}

SemialgebraicProblem builtin(const std::string& name) {
    if (name == "P1") { auto p = make_Pn2("P1", 4); return p; }
    if (name == "P2") return make_P2();
    if (name == "C1") return make_C1();
    if (name == "P4_2") return make_Pn2("P4_2", 4);
    if (name == "P6_2") return make_Pn2("P6_2", 6);
    if (name == "P8_2") return make_Pn2("P8_2", 8);
    if (name == "P10_2") return make_Pn2("P10_2", 10);
    if (name == "P4_4") {
        Polynomial f(4);
        for (int i = 1; i <= 4; ++i) add1(f, 4, i, 4, i % 2 ? 1.0 : -1.0);  // no linear tail
        std::vector<Polynomial> gs = {pair_form(4, 4, 2, 2, 3, 2), pair_form(4, 2, 3, 2, 2, -4),
                                      pair_form(4, 2, 1, 2, 6, -4), pair_form(4, 2, 1, 4, 4, -3),
                                      pair_form(4, 2, 2, 2, 5, 3)};
        return make("P4_4", f, gs);
    }
    if (name == "P6_4") {
        // objective x1^4 - x2^2 + ... + x1 - x2; g1/g2/g4 differ from the larger sizes
        const int n = 6;
        Polynomial f(n);
        for (int i = 1; i <= n; ++i) add1(f, n, i, i % 2 ? 4 : 2, i % 2 ? 1.0 : -1.0);
        add1(f, n, 1, 1, 1.0); add1(f, n, 2, 1, -1.0);
        std::vector<Polynomial> gs = {pair_form(n, 4, 2, 2, 1, 2), pair_form(n, 2, 3, 2, 1, -4),
                                      pair_form(n, 2, 1, 2, 6, -4), pair_form(n, 2, 1, 4, 3, -3),
                                      pair_form(n, 2, 2, 2, 5, 3)};
        return make("P6_4", f, gs);
    }
    if (name == "P8_4") return make_Pn_high("P8_4", 8, 4, 2, 3, 4);
    if (name == "P10_4") return make_Pn_high("P10_4", 10, 4, 2, 3, 4);
    if (name == "P6_6") return make_Pn_high("P6_6", 6, 6, 2, 3, 4);
    if (name == "P8_6") return make_Pn_high("P8_6", 8, 6, 2, 3, 4);
    if (name == "P6_8") return make_Pn_high("P6_8", 6, 8, 2, 3, 4);
    if (name == "P4_6") return make("P4_6", sextic_objective_pairs(4), p46_constraints(4));
    if (name == "P4_8") return make_P48();
    if (name == "P20_2") return make_P20("P20_2", false);
    if (name == "P20_4") return make_P20("P20_4", true);
    if (name == "C4_2") return make_Cn2("C4_2", 4);
    if (name == "C6_2") return make_Cn2("C6_2", 6);
    if (name == "C8_2") return make_Cn2("C8_2", 8);
    if (name == "C10_2") return make_Cn2("C10_2", 10);
    if (name == "C20_2") return make_Cn2("C20_2", 20);
    if (name == "C4_4") return make_Cn4("C4_4", 4);
    if (name == "C6_4") return make_Cn4("C6_4", 6);
    if (name == "C8_4") return make_C84();
    if (name == "C10_4") return make_Cn4("C10_4", 10);
    if (name == "C4_6") return make_C46();
    if (name == "C6_6") return make_C66();

    std::ostringstream os;
    os << "unknown builtin '" << name << "'; catalog:";
    for (const auto& s : builtin_names()) os << ' ' << s;
    throw std::invalid_argument(os.str());
}

SemialgebraicProblem generate(const GeneratorSpec& spec) {
    const int n = spec.n;
    if (n < 1) throw std::invalid_argument("generate: n >= 1");
    SplitMix64 rng(spec.seed);

    if (spec.family == GeneratorFamily::QuadraticSimplex) {
        if (spec.r < 1 || spec.r > n) throw std::invalid_argument("generate: need 1 <= r <= n");
        // Gaussian factor -> psd matrix -> negate r eigenvalues picked by a
        // seeded permutation
        Eigen::MatrixXd B(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double u1 = 1.0 - rng.next_unit();
                const double u2 = rng.next_unit();
                B(i, j) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
            }
        const Eigen::MatrixXd psd = B * B.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(psd);
        Eigen::VectorXd ev = es.eigenvalues();
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_u64() % static_cast<std::uint64_t>(i + 1)]);
        for (int i = 0; i < spec.r; ++i) ev[perm[i]] = -ev[perm[i]];
        const Eigen::MatrixXd A =
            es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();

        Polynomial f(n);
        for (int i = 1; i <= n; ++i) {
            add1(f, n, i, 2, A(i - 1, i - 1));
            for (int j = i + 1; j <= n; ++j) add2(f, n, i, 1, j, 1, 2.0 * A(i - 1, j - 1));
        }
        Polynomial g1(n);
        addconst(g1, n, 1.0);
        for (int i = 1; i <= n; ++i) add1(g1, n, i, 1, -1.0);
        std::ostringstream nm;
        nm << "Qn" << n << "_r" << spec.r << "_s" << spec.seed;
        return make(nm.str(), f, {g1});
    }

    if (spec.degree != 2 && spec.degree != 4)
        throw std::invalid_argument("generate: RandomBall degree must be 2 or 4");
    const MonomialBasis basis = monomial_basis(n, spec.degree);
    Polynomial f(n);
    for (const auto& e : basis.exponents) f.add_term(e, rng.next_symmetric());
    Polynomial g1(n);
    addconst(g1, n, 1.0);
    for (int i = 1; i <= n; ++i) add1(g1, n, i, 2, -1.0);
    std::ostringstream nm;
    nm << "Hn" << n << "_" << spec.degree << "_s" << spec.seed;
    return make(nm.str(), f, {g1});
}

RunRecord run(const SemialgebraicProblem& problem, const RunConfig& cfg) {
    RunRecord rec;
    rec.problem_name = problem.name;
    rec.n = problem.num_vars();
    rec.m = problem.num_generators();
    rec.d = cfg.d;
    rec.k = cfg.mode == Mode::Lp ? 0 : cfg.k;
    rec.mode = cfg.mode;

    RelaxationConfig rc;
    rc.d = cfg.d;
    rc.k = rec.k;
    rc.seed = cfg.seed;
    rc.mode = cfg.mode;

    const auto start = std::chrono::steady_clock::now();
    try {
        const SdpInstance inst = assemble(problem, rc);
        const SolveResult sol =
            cfg.mode == Mode::Lp ? solve_lp(inst, cfg.solver) : solve(inst, cfg.solver);
        rec.status = sol.status;
        rec.iterations = sol.iterations;
        rec.primal_residual = sol.primal_residual;
        rec.dual_residual = sol.dual_residual;
        rec.gap = sol.gap;
        if (sol.has_bound()) rec.bound = sol.bound;
        if (cfg.certify && sol.status == SolveStatus::Optimal) {
            const CertificateReport cert = verify(problem, sol, inst);
            if (cert.available) {
                rec.rank_ms = cert.rank_ms;
                rec.certified = cert.rank_one ? cert.candidate_feasible : cert.flat_extension;
            }
        }
    } catch (const std::exception&) {
        rec.status = SolveStatus::NumericalFailure;
    }
    rec.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<RunRecord> sweep(const SemialgebraicProblem& problem, int d_max, RunConfig cfg) {
    std::vector<RunRecord> out;
    for (int d = 1; d <= d_max; ++d) {
        cfg.d = d;
        out.push_back(run(problem, cfg));
    }
    return out;
}

std::string RunRecord::to_json() const {
    nlohmann::ordered_json j;
    j["problem_name"] = problem_name;
    j["n"] = n;
    j["m"] = m;
    j["d"] = d;
    j["k"] = k;
    j["mode"] = mode == Mode::Lp ? "lp" : "bsos";
    if (bound) j["bound"] = *bound;
    j["status"] = to_string(status);
    j["wall_time_seconds"] = wall_time_seconds;
    j["iterations"] = iterations;
    if (rank_ms) j["rank_ms"] = *rank_ms;
    j["certified"] = certified;
    j["primal_residual"] = primal_residual;
    j["dual_residual"] = dual_residual;
    j["gap"] = gap;
    return j.dump();
}

RunRecord RunRecord::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    RunRecord r;
    r.problem_name = j.at("problem_name").get<std::string>();
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<int>();
    r.d = j.at("d").get<int>();
    r.k = j.at("k").get<int>();
    r.mode = j.at("mode").get<std::string>() == "lp" ? Mode::Lp : Mode::Bsos;
    if (j.contains("bound")) r.bound = j.at("bound").get<double>();
    const std::string st = j.at("status").get<std::string>();
    for (auto s : {SolveStatus::Optimal, SolveStatus::Infeasible, SolveStatus::Unbounded,
                   SolveStatus::MaxIter, SolveStatus::NumericalFailure})
        if (st == to_string(s)) r.status = s;
    r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    r.iterations = j.at("iterations").get<int>();
    if (j.contains("rank_ms")) r.rank_ms = j.at("rank_ms").get<int>();
    r.certified = j.at("certified").get<bool>();
    r.primal_residual = j.at("primal_residual").get<double>();
    r.dual_residual = j.at("dual_residual").get<double>();
    r.gap = j.at("gap").get<double>();
    return r;
}

std::string format_table(const std::vector<RunRecord>& records) {
    std::ostringstream os;
    os << "problem        d  k  mode  status            bound          time(s)  iters  rank\n";
    for (const auto& r : records) {
        char buf[256];
        char bound[32] = "-";
        if (r.bound) std::snprintf(bound, sizeof bound, "%.6e", *r.bound);
        char rank[16] = "-";
        if (r.rank_ms) std::snprintf(rank, sizeof rank, "%d", *r.rank_ms);
        std::snprintf(buf, sizeof buf, "%-13s %2d %2d  %-4s  %-16s %14s %8.2f %6d  %s\n",
                      r.problem_name.c_str(), r.d, r.k, r.mode == Mode::Lp ? "lp" : "bsos",
                      to_string(r.status), bound, r.wall_time_seconds, r.iterations, rank);
        os << buf;
    }
    return os.str();
}

}  // namespace bsos
