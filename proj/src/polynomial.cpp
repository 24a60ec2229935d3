#include "bsos/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bsos {

bool grlex_less(const std::vector<int>& a, const std::vector<int>& b) {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial::Polynomial(int num_vars, std::vector<Term> terms)
    : num_vars_(num_vars), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (static_cast<int>(t.exp.size()) != num_vars_)
            throw std::invalid_argument("term exponent length != num_vars");
    }
    *this = canonicalized();
}

void Polynomial::add_term(const std::vector<int>& exp, double coeff) {
    if (static_cast<int>(exp.size()) != num_vars_)
        throw std::invalid_argument("term exponent length != num_vars");
    terms_.push_back({exp, coeff});
}

Polynomial Polynomial::canonicalized() const {
    std::vector<Term> ts = terms_;
    std::sort(ts.begin(), ts.end(),
              [](const Term& x, const Term& y) { return grlex_less(x.exp, y.exp); });
    std::vector<Term> out;
    for (const auto& t : ts) {
        if (!out.empty() && out.back().exp == t.exp)
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0.0; });
    Polynomial p(num_vars_);
    p.terms_ = std::move(out);
    return p;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& t : terms_)
        d = std::max(d, std::accumulate(t.exp.begin(), t.exp.end(), 0));
    return d;
}

namespace {

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

double eval_monomial(const std::vector<int>& exp, const Eigen::VectorXd& z) {
    double r = 1.0;
    for (std::size_t i = 0; i < exp.size(); ++i)
        if (exp[i]) r *= ipow(z[static_cast<Eigen::Index>(i)], exp[i]);
    return r;
}

double Polynomial::evaluate(const Eigen::VectorXd& z) const {
    if (z.size() != num_vars_)
        throw std::invalid_argument("evaluate: dimension mismatch");
    if (!z.allFinite())
        throw std::invalid_argument("evaluate: non-finite point");
    bool has_zero = false;
    for (int i = 0; i < num_vars_; ++i)
        if (z[i] == 0.0) { has_zero = true; break; }

    if (has_zero) {
        double pos = 0.0, neg = 0.0;
        for (const auto& t : terms_) {
            const double v = t.coeff * eval_monomial(t.exp, z);
            if (v >= 0.0) pos += v; else neg -= v;
        }
        return pos - neg;
    }

    // sign vector and log magnitudes
    Eigen::VectorXd logz(num_vars_);
    std::vector<int> sgn(num_vars_);
    for (int i = 0; i < num_vars_; ++i) {
        sgn[i] = z[i] < 0.0 ? 1 : 0;
        logz[i] = std::log(std::abs(z[i]));
    }
    double pos = 0.0, neg = 0.0;
    for (const auto& t : terms_) {
        int parity = 0;
        double lm = 0.0;
        for (int i = 0; i < num_vars_; ++i) {
            if (!t.exp[i]) continue;
            parity += t.exp[i] * sgn[i];
            lm += t.exp[i] * logz[i];
        }
        double v = t.coeff * std::exp(lm);
        if (parity & 1) v = -v;
        if (v >= 0.0) pos += v; else neg -= v;
    }
    return pos - neg;
}

Eigen::VectorXd Polynomial::eval_batch(const Eigen::MatrixXd& points) const {
    Eigen::VectorXd out(points.rows());
    for (Eigen::Index p = 0; p < points.rows(); ++p)
        out[p] = evaluate(points.row(p).transpose());
    return out;
}

std::string Polynomial::format() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& t : terms_) {
        for (int e : t.exp) os << e << ' ';
        os << t.coeff << '\n';
    }
    return os.str();
}

Polynomial Polynomial::parse(int num_vars, std::istream& in, int num_terms) {
    Polynomial p(num_vars);
    for (int i = 0; i < num_terms; ++i) {
        std::vector<int> exp(num_vars);
        for (int j = 0; j < num_vars; ++j)
            if (!(in >> exp[j])) throw std::runtime_error("polynomial parse: bad exponent");
        double c;
        if (!(in >> c)) throw std::runtime_error("polynomial parse: bad coefficient");
        p.add_term(exp, c);
    }
    return p.canonicalized();
}

Polynomial Polynomial::parse_text(int num_vars, const std::string& text) {
    std::istringstream is(text);
    Polynomial p(num_vars);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<int> exp(num_vars);
        if (!(ls >> exp[0])) continue;  // blank line
        for (int j = 1; j < num_vars; ++j)
            if (!(ls >> exp[j])) throw std::runtime_error("polynomial parse: bad exponent");
        double c;
        if (!(ls >> c)) throw std::runtime_error("polynomial parse: bad coefficient");
        p.add_term(exp, c);
    }
    return p.canonicalized();
}

namespace {

void enumerate_degree(int n, int deg, std::vector<int>& cur, int pos,
                      std::vector<std::vector<int>>& out) {
    if (pos == n - 1) {
        cur[pos] = deg;
        out.push_back(cur);
        cur[pos] = 0;
        return;
    }
    for (int e = deg; e >= 0; --e) {
        cur[pos] = e;
        enumerate_degree(n, deg - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

}  // namespace

MonomialBasis monomial_basis(int n, int k) {
    if (n < 1 || k < 0) throw std::invalid_argument("monomial_basis: need n >= 1, k >= 0");
    MonomialBasis b;
    b.num_vars = n;
    b.max_degree = k;
    std::vector<int> cur(n, 0);
    for (int deg = 0; deg <= k; ++deg)
        enumerate_degree(n, deg, cur, 0, b.exponents);
    return b;
}

Eigen::VectorXd eval_monomial_vector(const MonomialBasis& basis, const Eigen::VectorXd& z) {
    if (z.size() != basis.num_vars)
        throw std::invalid_argument("eval_monomial_vector: dimension mismatch");
    // power table: pw(i, e) = z_i^e
    Eigen::MatrixXd pw(basis.num_vars, basis.max_degree + 1);
    pw.col(0).setOnes();
    for (int e = 1; e <= basis.max_degree; ++e)
        pw.col(e) = pw.col(e - 1).cwiseProduct(z);
    Eigen::VectorXd out(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        double v = 1.0;
        const auto& exp = basis.exponents[i];
        for (int j = 0; j < basis.num_vars; ++j)
            if (exp[j]) v *= pw(j, exp[j]);
        out[static_cast<Eigen::Index>(i)] = v;
    }
    return out;
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace bsos
