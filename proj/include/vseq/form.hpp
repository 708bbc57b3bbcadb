#ifndef VSEQ_FORM_HPP
#define VSEQ_FORM_HPP

#include "vseq/expr.hpp"

#include <string>
#include <vector>

namespace vseq {

/// Basis covector in the contact splitting: dx^mu or theta^a_I, with
/// theta^a_I = dy^a_I - y^a_{I mu} dx^mu understood. Canonical order puts
/// every dx before every theta.
struct BasisCovector {
    bool is_dx = true;
    int id = 0;
    MultiIndex index;

    static BasisCovector dx(int mu) { return {true, mu, {}}; }
    static BasisCovector theta(int a, MultiIndex I = {}) { return {false, a, std::move(I)}; }

    friend auto operator<=>(const BasisCovector& a, const BasisCovector& b) {
        // dx < theta
        if (a.is_dx != b.is_dx) return a.is_dx ? std::strong_ordering::less : std::strong_ordering::greater;
        if (auto c = a.id <=> b.id; c != 0) return c;
        return a.index <=> b.index;
    }
    friend bool operator==(const BasisCovector&, const BasisCovector&) = default;
};

struct FormTerm {
    Expr coeff;
    std::vector<BasisCovector> factors; // strictly increasing
};

/// Exterior form on a jet space in the contact basis, with Expr coefficients.
/// Terms are kept canonical: factors strictly sorted, equal factor sets
/// merged, zero coefficients dropped.
class Form {
public:
    Form() = default;
    Form(int n, int m, int degree) : n_(n), m_(m), degree_(degree) {}

    static Form scalar(const JetSpace& s, Expr c);
    static Form covector(const JetSpace& s, const BasisCovector& b);
    /// dy^a_I expanded into the contact basis: theta^a_I + y^a_{I mu} dx^mu.
    static Form dy(const JetSpace& s, int a, const MultiIndex& I = {});
    static Form from_terms(const JetSpace& s, int degree, std::vector<FormTerm> raw);

    int degree() const { return degree_; }
    int base_dim() const { return n_; }
    int fiber_dim() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    int jet_order() const { return order_; }
    int min_contact_degree() const { return min_contact_; }
    int max_contact_degree() const { return max_contact_; }
    bool is_horizontal() const { return max_contact_ == 0; }
    const std::vector<FormTerm>& terms() const { return terms_; }

    /// Coefficient of the given (sorted) factor list; zero if absent.
    Expr coefficient(const std::vector<BasisCovector>& factors) const;

    Form operator-() const;
    friend Form operator+(const Form& a, const Form& b);
    friend Form operator-(const Form& a, const Form& b);
    friend Form operator*(const Expr& c, const Form& f);
    friend bool operator==(const Form& a, const Form& b);
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

private:
    friend Form wedge(const Form&, const Form&);
    void recompute_cache();

    int n_ = 0;
    int m_ = 0;
    int degree_ = 0;
    int order_ = 0;
    int min_contact_ = 0;
    int max_contact_ = 0;
    std::vector<FormTerm> terms_;
};

/// Graded-commutative product in canonical form.
Form wedge(const Form& a, const Form& b);

/// Horizontal differential: total derivatives on coefficients plus the
/// structure rule d_H theta^a_I = dx^mu wedge theta^a_{I mu}.
Form d_H(const JetSpace& s, const Form& f);

/// Vertical differential: d_V c = (dc/dy^a_I) theta^a_I; annihilates the
/// basis covectors.
Form d_V(const JetSpace& s, const Form& f);

/// Projection onto the horizontal part: terms with contact factors vanish.
Form horizontalize(const Form& f);

/// Base volume dx^0 ^ ... ^ dx^{n-1} and its contractions omega_mu.
Form volume(const JetSpace& s);
Form volume_mu(const JetSpace& s, int mu);

std::string to_string(const JetSpace& s, const Form& f);

} // namespace vseq

#endif
