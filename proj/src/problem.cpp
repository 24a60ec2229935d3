#include "bsos/problem.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bsos/rng.hpp"

namespace bsos {

void SemialgebraicProblem::validate() const {
    if (generators.empty())
        throw std::invalid_argument("problem needs at least one generator");
    for (const auto& g : generators)
        if (g.num_vars() != objective.num_vars())
            throw std::invalid_argument("generator num_vars != objective num_vars");
}

namespace {

// strips comments, returns the next non-empty payload line
bool next_payload(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
}

Polynomial parse_terms(std::istream& in, int n, int count) {
    Polynomial p(n);
    std::string line;
    int got = 0;
    while (got < count) {
        if (!next_payload(in, line)) throw std::runtime_error("problem file: truncated term list");
        std::istringstream ls(line);
        std::vector<int> exp(n);
        for (int j = 0; j < n; ++j)
            if (!(ls >> exp[j])) throw std::runtime_error("problem file: bad exponent");
        double c;
        if (!(ls >> c)) throw std::runtime_error("problem file: bad coefficient");
        p.add_term(exp, c);
        ++got;
    }
    return p.canonicalized();
}

}  // namespace

SemialgebraicProblem read_problem(std::istream& in, const std::string& name) {
    std::string line;
    if (!next_payload(in, line)) throw std::runtime_error("problem file: empty");
    std::istringstream hs(line);
    int n = 0, m = 0;
    if (!(hs >> n >> m) || n < 1 || m < 1)
        throw std::runtime_error("problem file: bad header (want: n m)");

    SemialgebraicProblem prob;
    prob.name = name;

    if (!next_payload(in, line)) throw std::runtime_error("problem file: missing obj");
    {
        std::istringstream ls(line);
        std::string kw; int t = 0;
        if (!(ls >> kw >> t) || kw != "obj")
            throw std::runtime_error("problem file: expected 'obj T'");
        prob.objective = parse_terms(in, n, t);
    }
    for (int j = 0; j < m; ++j) {
        if (!next_payload(in, line)) throw std::runtime_error("problem file: missing con");
        std::istringstream ls(line);
        std::string kw; int t = 0;
        if (!(ls >> kw >> t) || kw != "con")
            throw std::runtime_error("problem file: expected 'con T'");
        prob.generators.push_back(parse_terms(in, n, t));
    }
    prob.validate();
    return prob;
}

SemialgebraicProblem read_problem_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open problem file: " + path);
    auto p = read_problem(f, path);
    return p;
}

void write_problem(std::ostream& out, const SemialgebraicProblem& p) {
    out << p.num_vars() << ' ' << p.num_generators() << '\n';
    out << "obj " << p.objective.terms().size() << '\n' << p.objective.format();
    for (const auto& g : p.generators)
        out << "con " << g.terms().size() << '\n' << g.format();
}

void write_problem_file(const std::string& path, const SemialgebraicProblem& p) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    write_problem(f, p);
}

ScalingReport check_scaling(const SemialgebraicProblem& p, int num_samples, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const int n = p.num_vars();
    ScalingReport rep;
    Eigen::VectorXd z(n);
    std::vector<double> gv(p.generators.size());
    for (int s = 0; s < num_samples; ++s) {
        for (int i = 0; i < n; ++i) z[i] = rng.next_symmetric();
        bool feasible = true;
        for (std::size_t j = 0; j < p.generators.size(); ++j) {
            gv[j] = p.generators[j].evaluate(z);
            if (gv[j] < 0.0) { feasible = false; break; }
        }
        if (!feasible) continue;
        ++rep.feasible_samples;
        for (std::size_t j = 0; j < p.generators.size(); ++j) {
            if (gv[j] > 1.0) {
                ++rep.violations;
                if (gv[j] - 1.0 > std::abs(rep.worst_value - 1.0) || rep.worst_generator < 0) {
                    rep.worst_value = gv[j];
                    rep.worst_generator = static_cast<int>(j);
                }
            }
        }
    }
    return rep;
}

}  // namespace bsos
