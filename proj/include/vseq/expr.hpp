#ifndef VSEQ_EXPR_HPP
#define VSEQ_EXPR_HPP

#include "vseq/jetspace.hpp"
#include "vseq/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace vseq {

class Expr;

enum class KernelFn : std::uint8_t { Sin, Cos, Exp };

/// One elementary-function factor sin(u)^p, cos(u), exp(u). Arguments are
/// polynomial (kernel depth one); cos carries power one and exp factors are
/// merged, so equal expressions have equal factor lists.
struct KernelFactor {
    KernelFn fn;
    std::shared_ptr<const Expr> arg;
    int power = 1;
};

struct Monomial {
    Rational coeff;
    std::vector<std::pair<Coord, int>> vars; // sorted by coord, powers >= 1
    std::vector<KernelFactor> kernels;       // sorted by (fn, arg)
};

/// Canonical sum of monomials over jet coordinates, symbolic constants and a
/// sin/cos/exp kernel with polynomial arguments.
///
/// Every construction path normalizes, so structural equality is expression
/// equality for this class (kernel factors with distinct canonical arguments
/// are treated as independent; cos^2(u) is rewritten as 1 - sin^2(u), trig
/// arguments are reduced modulo pi-shifts and argument sign).
class Expr {
public:
    Expr() = default; // zero

    static Expr constant(Rational q);
    static Expr integer(long v) { return constant(rat(v)); }
    static Expr coord(Coord c);
    static Expr base(int mu) { return coord(Coord::base(mu)); }
    static Expr field(int a, MultiIndex I = {}) { return coord(Coord::field(a, std::move(I))); }
    static Expr test_field(int a, MultiIndex I = {}) { return coord(Coord::test_field(a, std::move(I))); }
    static Expr param(int id) { return coord(Coord::param(id)); }
    static Expr pi() { return coord(Coord::pi()); }
    static Expr homotopy() { return coord(Coord::homotopy()); }

    /// Canonicalizes an arbitrary monomial soup; the single entry point of
    /// the normal form.
    static Expr from_monomials(std::vector<Monomial> raw);

    static Expr sin(const Expr& u);
    static Expr cos(const Expr& u);
    static Expr exp(const Expr& u);
    static Expr pow(const Expr& e, int k);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rational rational_value() const; // requires is_rational()
    bool has_kernels() const;
    int jet_order() const;
    bool depends_on(const Coord& c) const;
    std::vector<Coord> coords() const; // distinct, sorted

    const std::vector<Monomial>& monomials() const { return terms_; }

    Expr operator-() const;
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator*(const Rational& q, const Expr& e);
    /// Division by an expression that normalizes to a nonzero rational;
    /// anything else falls outside the expression class.
    friend Expr operator/(const Expr& a, const Expr& b);

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    std::vector<Monomial> terms_;
};

/// Three-way comparison inducing the fixed total order of the normal form.
int expr_cmp(const Expr& a, const Expr& b);

/// Compares two canonical monomials by everything except the coefficient;
/// the merge key of the normal form.
int monomial_key_cmp(const Monomial& a, const Monomial& b);

/// Re-runs the canonicalization pipeline. Idempotent on every Expr.
Expr normalize(const Expr& e);

/// Formal partial derivative; all coordinates are treated as independent.
Expr partial(const Expr& e, const Coord& c);

/// Total derivative D_mu = d/dx^mu + sum y^a_{I mu} d/dy^a_I (test fields
/// prolong the same way). Raises jet order by one; checked against the
/// space's cap.
Expr total_derivative(const JetSpace& space, const Expr& e, int mu);

/// Iterated total derivative over a multi-index.
Expr total_derivative(const JetSpace& space, const Expr& e, const MultiIndex& I);

/// Simultaneous substitution followed by normalization. Coordinates not in
/// sigma are left alone. Substituting a kernel-bearing value into a kernel
/// argument throws KernelDepthExceeded.
Expr substitute(const Expr& e, const std::map<Coord, Expr>& sigma);

/// Exact definite integral over the homotopy parameter on [0,1]. Supports
/// polynomials in the parameter and t^k sin(t u) / t^k cos(t u) monomials
/// whose u is a nonzero rational; everything else is NonIntegrableKernel.
Expr integrate_homotopy(const Expr& e);

/// Numeric evaluation. Parameters fall back to the values declared in the
/// space; a coordinate without a binding is an error.
double evaluate(const JetSpace& space, const Expr& e, const std::map<Coord, double>& bindings);

std::string to_string(const JetSpace& space, const Expr& e);

} // namespace vseq

#endif
