#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace bsos {

// One monomial term: exponent vector (length num_vars) and a coefficient.
struct Term {
    std::vector<int> exp;
    double coeff = 0.0;
};

// Graded lexicographic order on exponent vectors: lower total degree first,
// lexicographically larger exponents first within a degree (x1 before x2).
bool grlex_less(const std::vector<int>& a, const std::vector<int>& b);

// Sparse multivariate polynomial over dense exponent rows.
// Canonical form: terms sorted in graded lex order, exponents pairwise
// distinct, no zero coefficients.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(int num_vars) : num_vars_(num_vars) {}
    Polynomial(int num_vars, std::vector<Term> terms);

    int num_vars() const { return num_vars_; }
    const std::vector<Term>& terms() const { return terms_; }

    void add_term(const std::vector<int>& exp, double coeff);

    // Merge duplicates, drop zeros, sort in graded lex order.
    Polynomial canonicalized() const;

    // Max |alpha| over canonical terms; 0 for the zero polynomial.
    int degree() const;

    // f(z).  With every z_i nonzero this follows the sign-split procedure:
    // parities from the exponent matrix, magnitudes via exp(E log|z|),
    // positive and negative contributions accumulated separately.  Any zero
    // coordinate falls back to direct per-term powers with 0^0 = 1.
    double evaluate(const Eigen::VectorXd& z) const;

    Eigen::VectorXd eval_batch(const Eigen::MatrixXd& points) const;  // points: rows

    bool is_zero() const { return terms_.empty(); }

    // Text term format, one term per line: n exponents then the coefficient.
    std::string format() const;
    static Polynomial parse(int num_vars, std::istream& in, int num_terms);
    static Polynomial parse_text(int num_vars, const std::string& text);

  private:
    int num_vars_ = 0;
    std::vector<Term> terms_;
};

// All alpha in N^n with |alpha| <= max_degree, graded lex order; the first
// element is the constant monomial.
struct MonomialBasis {
    int num_vars = 0;
    int max_degree = 0;
    std::vector<std::vector<int>> exponents;

    std::size_t size() const { return exponents.size(); }
};

MonomialBasis monomial_basis(int n, int k);

// Component i equals z^{alpha_i}; the constant component is exactly 1.
Eigen::VectorXd eval_monomial_vector(const MonomialBasis& basis, const Eigen::VectorXd& z);

// z^alpha by repeated multiplication (0^0 = 1).
double eval_monomial(const std::vector<int>& exp, const Eigen::VectorXd& z);

std::int64_t binomial(int n, int k);

}  // namespace bsos
