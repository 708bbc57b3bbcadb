#include "vseq/form.hpp"

#include <algorithm>
#include <sstream>

namespace vseq {

namespace {

// Sorts factors in place; returns the permutation sign, or 0 when a factor
// repeats.
int sort_factors(std::vector<BasisCovector>& v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j] < v[j - 1]; --j) {
            std::swap(v[j], v[j - 1]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) return 0;
    return sign;
}

int factors_cmp(const std::vector<BasisCovector>& a, const std::vector<BasisCovector>& b) {
    const std::size_t k = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < k; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

int covector_order(const BasisCovector& b) { return b.is_dx ? 0 : b.index.order() + 1; }

} // namespace

void Form::recompute_cache() {
    order_ = 0;
    min_contact_ = 0;
    max_contact_ = 0;
    bool first = true;
    for (const auto& t : terms_) {
        int contact = 0;
        int ord = t.coeff.jet_order();
        for (const auto& b : t.factors) {
            ord = std::max(ord, covector_order(b));
            if (!b.is_dx) ++contact;
        }
        order_ = std::max(order_, ord);
        if (first) {
            min_contact_ = max_contact_ = contact;
            first = false;
        } else {
            min_contact_ = std::min(min_contact_, contact);
            max_contact_ = std::max(max_contact_, contact);
        }
    }
}

Form Form::from_terms(const JetSpace& s, int degree, std::vector<FormTerm> raw) {
    Form f(s.base_dim(), s.fiber_dim(), degree);
    std::vector<FormTerm> flat;
    for (auto& t : raw) {
        if (t.coeff.is_zero()) continue;
        if (static_cast<int>(t.factors.size()) != degree)
            throw DimensionMismatch("form term degree mismatch");
        for (const auto& b : t.factors) {
            if (b.is_dx && (b.id < 0 || b.id >= s.base_dim()))
                throw DimensionMismatch("dx index out of range");
            if (!b.is_dx && (b.id < 0 || b.id >= s.fiber_dim()))
                throw DimensionMismatch("theta field index out of range");
        }
        int sign = sort_factors(t.factors);
        if (sign == 0) continue;
        if (sign < 0) t.coeff = -t.coeff;
        flat.push_back(std::move(t));
    }
    std::sort(flat.begin(), flat.end(), [](const FormTerm& a, const FormTerm& b) {
        return factors_cmp(a.factors, b.factors) < 0;
    });
    for (auto& t : flat) {
        if (!f.terms_.empty() && factors_cmp(f.terms_.back().factors, t.factors) == 0)
            f.terms_.back().coeff = f.terms_.back().coeff + t.coeff;
        else
            f.terms_.push_back(std::move(t));
    }
    std::erase_if(f.terms_, [](const FormTerm& t) { return t.coeff.is_zero(); });
    f.recompute_cache();
    return f;
}

Form Form::scalar(const JetSpace& s, Expr c) {
    return from_terms(s, 0, {{std::move(c), {}}});
}

Form Form::covector(const JetSpace& s, const BasisCovector& b) {
    return from_terms(s, 1, {{Expr::integer(1), {b}}});
}

Form Form::dy(const JetSpace& s, int a, const MultiIndex& I) {
    std::vector<FormTerm> ts;
    ts.push_back({Expr::integer(1), {BasisCovector::theta(a, I)}});
    for (int mu = 0; mu < s.base_dim(); ++mu) {
        MultiIndex up = I.extended(mu);
        if (up.order() > s.max_order())
            throw MaxOrderExceeded("dy expansion exceeds jet order cap");
        ts.push_back({Expr::field(a, up), {BasisCovector::dx(mu)}});
    }
    return from_terms(s, 1, std::move(ts));
}

Expr Form::coefficient(const std::vector<BasisCovector>& factors) const {
    for (const auto& t : terms_)
        if (factors_cmp(t.factors, factors) == 0) return t.coeff;
    return {};
}

Form Form::operator-() const {
    Form f = *this;
    for (auto& t : f.terms_) t.coeff = -t.coeff;
    return f;
}

Form operator+(const Form& a, const Form& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.n_ != b.n_ || a.m_ != b.m_ || a.degree_ != b.degree_)
        throw DimensionMismatch("form addition shape mismatch");
    JetSpace s(a.n_, a.m_, std::max(a.order_, b.order_) + 1);
    std::vector<FormTerm> raw = a.terms_;
    raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
    return Form::from_terms(s, a.degree_, std::move(raw));
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form operator*(const Expr& c, const Form& f) {
    if (f.is_zero() || c.is_zero()) return Form(f.n_, f.m_, f.degree_);
    JetSpace s(f.n_, f.m_, std::max(f.order_, c.jet_order()) + 1);
    std::vector<FormTerm> raw;
    for (const auto& t : f.terms_) raw.push_back({c * t.coeff, t.factors});
    return Form::from_terms(s, f.degree_, std::move(raw));
}

bool operator==(const Form& a, const Form& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return (a - b).is_zero();
}

Form wedge(const Form& a, const Form& b) {
    if (a.n_ != b.n_ || a.m_ != b.m_) {
        if (!a.is_zero() && !b.is_zero()) throw DimensionMismatch("wedge over different spaces");
    }
    const int n = a.is_zero() ? b.n_ : a.n_;
    const int m = a.is_zero() ? b.m_ : a.m_;
    const int degree = a.degree_ + b.degree_;
    if (a.is_zero() || b.is_zero()) return Form(n, m, degree);
    JetSpace s(n, m, std::max(a.order_, b.order_) + 1);
    std::vector<FormTerm> raw;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            FormTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.factors = ta.factors;
            t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
            raw.push_back(std::move(t));
        }
    return Form::from_terms(s, degree, std::move(raw));
}

Form d_H(const JetSpace& s, const Form& f) {
    std::vector<FormTerm> raw;
    for (const auto& t : f.terms()) {
        for (int mu = 0; mu < s.base_dim(); ++mu) {
            Expr dc = total_derivative(s, t.coeff, mu);
            if (!dc.is_zero()) {
                FormTerm nt;
                nt.coeff = std::move(dc);
                nt.factors.push_back(BasisCovector::dx(mu));
                nt.factors.insert(nt.factors.end(), t.factors.begin(), t.factors.end());
                raw.push_back(std::move(nt));
            }
        }
        // d_H theta^a_I = dx^mu ^ theta^a_{I mu}
        for (std::size_t j = 0; j < t.factors.size(); ++j) {
            const auto& b = t.factors[j];
            if (b.is_dx) continue;
            for (int mu = 0; mu < s.base_dim(); ++mu) {
                MultiIndex up = b.index.extended(mu);
                if (up.order() > s.max_order())
                    throw MaxOrderExceeded("d_H raises contact order past cap");
                FormTerm nt;
                nt.coeff = (j % 2 ? -Expr::integer(1) : Expr::integer(1)) * t.coeff;
                nt.factors.assign(t.factors.begin(), t.factors.begin() + j);
                nt.factors.push_back(BasisCovector::dx(mu));
                nt.factors.push_back(BasisCovector::theta(b.id, up));
                nt.factors.insert(nt.factors.end(), t.factors.begin() + j + 1, t.factors.end());
                raw.push_back(std::move(nt));
            }
        }
    }
    return Form::from_terms(s, f.degree() + 1, std::move(raw));
}

Form d_V(const JetSpace& s, const Form& f) {
    std::vector<FormTerm> raw;
    for (const auto& t : f.terms()) {
        for (const auto& c : t.coeff.coords()) {
            if (c.kind != CoordKind::Field) continue;
            Expr dc = partial(t.coeff, c);
            if (dc.is_zero()) continue;
            FormTerm nt;
            nt.coeff = std::move(dc);
            nt.factors.push_back(BasisCovector::theta(c.id, c.index));
            nt.factors.insert(nt.factors.end(), t.factors.begin(), t.factors.end());
            raw.push_back(std::move(nt));
        }
    }
    return Form::from_terms(s, f.degree() + 1, std::move(raw));
}

Form horizontalize(const Form& f) {
    if (f.is_zero()) return f;
    JetSpace s(f.base_dim(), f.fiber_dim(), f.jet_order() + 1);
    std::vector<FormTerm> raw;
    for (const auto& t : f.terms()) {
        bool contact = false;
        for (const auto& b : t.factors) contact = contact || !b.is_dx;
        if (!contact) raw.push_back(t);
    }
    return Form::from_terms(s, f.degree(), std::move(raw));
}

Form volume(const JetSpace& s) {
    FormTerm t;
    t.coeff = Expr::integer(1);
    for (int mu = 0; mu < s.base_dim(); ++mu) t.factors.push_back(BasisCovector::dx(mu));
    return Form::from_terms(s, s.base_dim(), {t});
}

Form volume_mu(const JetSpace& s, int mu) {
    // d/dx^mu contracted into the volume: sign (-1)^mu on the remaining wedge
    FormTerm t;
    t.coeff = (mu % 2 ? -Expr::integer(1) : Expr::integer(1));
    for (int nu = 0; nu < s.base_dim(); ++nu)
        if (nu != mu) t.factors.push_back(BasisCovector::dx(nu));
    return Form::from_terms(s, s.base_dim() - 1, {t});
}

std::string to_string(const JetSpace& s, const Form& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : f.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(s, t.coeff) << ")";
        for (const auto& b : t.factors) {
            os << "^";
            if (b.is_dx) {
                os << "dx" << b.id;
            } else {
                os << "theta[" << s.field_name(b.id) << ";";
                for (auto d : b.index.dirs()) os << s.base_name(d);
                os << "]";
            }
        }
    }
    return os.str();
}

} // namespace vseq
