#include "vseq/expr.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace vseq {

namespace {

int rat_cmp(const Rational& a, const Rational& b) { return cmp(a, b); }

int vars_cmp(const std::vector<std::pair<Coord, int>>& a,
             const std::vector<std::pair<Coord, int>>& b) {
    const std::size_t k = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < k; ++i) {
        if (a[i].first != b[i].first) return a[i].first < b[i].first ? -1 : 1;
        if (a[i].second != b[i].second) return a[i].second < b[i].second ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

int kernel_cmp(const KernelFactor& x, const KernelFactor& y) {
    if (x.fn != y.fn) return x.fn < y.fn ? -1 : 1;
    if (int c = expr_cmp(*x.arg, *y.arg)) return c;
    if (x.power != y.power) return x.power < y.power ? -1 : 1;
    return 0;
}

int kernels_cmp(const std::vector<KernelFactor>& a, const std::vector<KernelFactor>& b) {
    const std::size_t k = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < k; ++i)
        if (int c = kernel_cmp(a[i], b[i])) return c;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}


void sort_merge_vars(Monomial& m) {
    std::sort(m.vars.begin(), m.vars.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<Coord, int>> out;
    for (auto& vp : m.vars) {
        if (!out.empty() && out.back().first == vp.first)
            out.back().second += vp.second;
        else
            out.push_back(vp);
    }
    std::erase_if(out, [](const auto& vp) { return vp.second == 0; });
    for (auto& vp : out)
        if (vp.second < 0)
            throw ExpressionDomainError("negative coordinate power is outside the expression class");
    m.vars = std::move(out);
}

// Splits a polynomial argument into (rest, q) with arg = rest + q*pi, where q
// is the coefficient of the plain pi monomial.
std::pair<Expr, Rational> split_pi(const Expr& arg) {
    Rational q = 0;
    std::vector<Monomial> rest;
    for (const auto& m : arg.monomials()) {
        if (m.kernels.empty() && m.vars.size() == 1 && m.vars[0].first.kind == CoordKind::Pi &&
            m.vars[0].second == 1)
            q += m.coeff;
        else
            rest.push_back(m);
    }
    return {Expr::from_monomials(std::move(rest)), q};
}

Rational floor_rat(const Rational& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return Rational(fl);
}

struct TrigAtom {
    int sign = 1;      // per single power of the factor
    bool dead = false; // whole monomial vanishes (sin of zero)
    bool one = false;  // factor reduces to 1 (cos of zero)
    KernelFn fn = KernelFn::Sin;
    Expr arg;
};

// Canonical form of sin/cos of a polynomial argument: argument sign is
// normalized, pi-shifts are reduced modulo 2*pi, a residual half-pi shift
// swaps sin and cos. The sign applies once per power of the factor.
TrigAtom reduce_trig(KernelFn fn, const Expr& arg) {
    TrigAtom at;
    at.fn = fn;
    auto [rest, q] = split_pi(arg);
    if (!rest.is_zero() && sgn(rest.monomials().front().coeff) < 0) {
        rest = -rest;
        q = -q;
        if (fn == KernelFn::Sin) at.sign = -at.sign;
    }
    q -= 2 * floor_rat(q / 2); // q in [0,2)
    if (q >= 1) {
        q -= 1;
        at.sign = -at.sign;
    }
    if (q == Rational(1, 2)) {
        q = 0;
        if (at.fn == KernelFn::Sin) {
            at.fn = KernelFn::Cos;
        } else {
            at.fn = KernelFn::Sin;
            at.sign = -at.sign;
        }
    }
    at.arg = rest + Expr::constant(q) * Expr::pi();
    if (at.arg.is_zero()) {
        if (at.fn == KernelFn::Sin)
            at.dead = true;
        else
            at.one = true;
    }
    return at;
}

Rational binomial(int n, int k) {
    Rational c = 1;
    for (int i = 0; i < k; ++i) c *= Rational(n - i, i + 1);
    return c;
}

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return expr_cmp(a, b) < 0; }
};

// Expands one raw monomial (arbitrary kernel powers and arguments) into
// canonical monomials and appends them to `out`.
void canon_monomial(Monomial m, std::vector<Monomial>& out) {
    if (is_zero(m.coeff)) return;
    sort_merge_vars(m);

    Rational scalar = m.coeff;
    std::map<Expr, int, ExprLess> sin_pow;
    std::map<Expr, int, ExprLess> cos_pow;
    Expr exp_arg;

    for (const auto& f : m.kernels) {
        if (f.power < 0)
            throw ExpressionDomainError("negative kernel power is outside the expression class");
        if (f.power == 0) continue;
        if (f.fn == KernelFn::Exp) {
            exp_arg = exp_arg + Expr::integer(f.power) * (*f.arg);
            continue;
        }
        TrigAtom at = reduce_trig(f.fn, *f.arg);
        if (at.dead) return;
        if (f.power % 2 == 1 && at.sign < 0) scalar = -scalar;
        if (at.one) continue;
        (at.fn == KernelFn::Sin ? sin_pow : cos_pow)[at.arg] += f.power;
    }
    if (is_zero(scalar)) return;

    // cos^2 u -> 1 - sin^2 u keeps the cos exponent in {0,1}; the expansion
    // only feeds the sin table, so one pass suffices.
    std::vector<Monomial> acc;
    {
        Monomial seed;
        seed.coeff = scalar;
        seed.vars = m.vars;
        for (const auto& [arg, p] : sin_pow)
            seed.kernels.push_back({KernelFn::Sin, std::make_shared<Expr>(arg), p});
        if (!exp_arg.is_zero())
            seed.kernels.push_back({KernelFn::Exp, std::make_shared<Expr>(exp_arg), 1});
        acc.push_back(std::move(seed));
    }
    for (const auto& [arg, p] : cos_pow) {
        const int q = p / 2;
        const int rem = p % 2;
        auto arg_ptr = std::make_shared<Expr>(arg);
        std::vector<Monomial> next;
        for (const auto& base : acc) {
            for (int j = 0; j <= q; ++j) {
                Monomial t = base;
                t.coeff *= binomial(q, j) * (j % 2 ? -1 : 1);
                if (j > 0) t.kernels.push_back({KernelFn::Sin, arg_ptr, 2 * j});
                if (rem) t.kernels.push_back({KernelFn::Cos, arg_ptr, 1});
                next.push_back(std::move(t));
            }
        }
        acc = std::move(next);
    }

    for (auto& t : acc) {
        // merge sin factors introduced by the cos expansion
        std::sort(t.kernels.begin(), t.kernels.end(),
                  [](const KernelFactor& x, const KernelFactor& y) { return kernel_cmp(x, y) < 0; });
        std::vector<KernelFactor> ks;
        for (auto& f : t.kernels) {
            if (!ks.empty() && ks.back().fn == f.fn && expr_cmp(*ks.back().arg, *f.arg) == 0)
                ks.back().power += f.power;
            else
                ks.push_back(f);
        }
        t.kernels = std::move(ks);
        out.push_back(std::move(t));
    }
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.coeff = a.coeff * b.coeff;
    r.vars = a.vars;
    r.vars.insert(r.vars.end(), b.vars.begin(), b.vars.end());
    r.kernels = a.kernels;
    r.kernels.insert(r.kernels.end(), b.kernels.begin(), b.kernels.end());
    return r;
}

} // namespace

int monomial_key_cmp(const Monomial& a, const Monomial& b) {
    if (int c = vars_cmp(a.vars, b.vars)) return c;
    return kernels_cmp(a.kernels, b.kernels);
}

int expr_cmp(const Expr& a, const Expr& b) {
    const auto& ta = a.monomials();
    const auto& tb = b.monomials();
    const std::size_t k = std::min(ta.size(), tb.size());
    for (std::size_t i = 0; i < k; ++i) {
        if (int c = monomial_key_cmp(ta[i], tb[i])) return c;
        if (int c = rat_cmp(ta[i].coeff, tb[i].coeff)) return c;
    }
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    return 0;
}

Expr Expr::from_monomials(std::vector<Monomial> raw) {
    std::vector<Monomial> flat;
    flat.reserve(raw.size());
    for (auto& m : raw) canon_monomial(std::move(m), flat);
    std::sort(flat.begin(), flat.end(),
              [](const Monomial& x, const Monomial& y) { return monomial_key_cmp(x, y) < 0; });
    Expr e;
    for (auto& m : flat) {
        if (!e.terms_.empty() && monomial_key_cmp(e.terms_.back(), m) == 0)
            e.terms_.back().coeff += m.coeff;
        else
            e.terms_.push_back(std::move(m));
    }
    std::erase_if(e.terms_, [](const Monomial& m) { return vseq::is_zero(m.coeff); });
    return e;
}

Expr Expr::constant(Rational q) {
    q.canonicalize();
    Expr e;
    if (!vseq::is_zero(q)) e.terms_.push_back({std::move(q), {}, {}});
    return e;
}

Expr Expr::coord(Coord c) {
    Expr e;
    e.terms_.push_back({1, {{std::move(c), 1}}, {}});
    return e;
}

Expr Expr::sin(const Expr& u) {
    if (u.has_kernels()) throw KernelDepthExceeded();
    return from_monomials({{1, {}, {{KernelFn::Sin, std::make_shared<Expr>(u), 1}}}});
}

Expr Expr::cos(const Expr& u) {
    if (u.has_kernels()) throw KernelDepthExceeded();
    return from_monomials({{1, {}, {{KernelFn::Cos, std::make_shared<Expr>(u), 1}}}});
}

Expr Expr::exp(const Expr& u) {
    if (u.has_kernels()) throw KernelDepthExceeded();
    return from_monomials({{1, {}, {{KernelFn::Exp, std::make_shared<Expr>(u), 1}}}});
}

Expr Expr::pow(const Expr& e, int k) {
    if (k < 0) throw ExpressionDomainError("negative powers are outside the expression class");
    Expr acc = Expr::integer(1);
    Expr b = e;
    while (k > 0) {
        if (k & 1) acc = acc * b;
        b = b * b;
        k >>= 1;
    }
    return acc;
}

bool Expr::is_rational() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_[0].vars.empty() && terms_[0].kernels.empty();
}

Rational Expr::rational_value() const {
    if (terms_.empty()) return 0;
    if (!is_rational()) throw ExpressionDomainError("expression is not a rational constant");
    return terms_[0].coeff;
}

bool Expr::has_kernels() const {
    for (const auto& m : terms_)
        if (!m.kernels.empty()) return true;
    return false;
}

int Expr::jet_order() const {
    int r = 0;
    for (const auto& c : coords()) r = std::max(r, c.jet_order());
    return r;
}

bool Expr::depends_on(const Coord& c) const {
    for (const auto& m : terms_) {
        for (const auto& vp : m.vars)
            if (vp.first == c) return true;
        for (const auto& f : m.kernels)
            if (f.arg->depends_on(c)) return true;
    }
    return false;
}

std::vector<Coord> Expr::coords() const {
    std::set<Coord> s;
    for (const auto& m : terms_) {
        for (const auto& vp : m.vars) s.insert(vp.first);
        for (const auto& f : m.kernels)
            for (const auto& c : f.arg->coords()) s.insert(c);
    }
    return {s.begin(), s.end()};
}

Expr Expr::operator-() const {
    Expr e = *this;
    for (auto& m : e.terms_) m.coeff = -m.coeff;
    return e;
}

Expr operator+(const Expr& a, const Expr& b) {
    std::vector<Monomial> raw = a.terms_;
    raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
    return Expr::from_monomials(std::move(raw));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    std::vector<Monomial> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ma : a.terms_)
        for (const auto& mb : b.terms_) raw.push_back(mono_mul(ma, mb));
    return Expr::from_monomials(std::move(raw));
}

Expr operator*(const Rational& q, const Expr& e) { return Expr::constant(q) * e; }

Expr operator/(const Expr& a, const Expr& b) {
    if (!b.is_rational() || b.is_zero())
        throw ExpressionDomainError("division is only defined by nonzero rational constants");
    return Expr::constant(1 / b.rational_value()) * a;
}

bool operator==(const Expr& a, const Expr& b) { return expr_cmp(a, b) == 0; }

Expr normalize(const Expr& e) { return Expr::from_monomials(e.monomials()); }

Expr partial(const Expr& e, const Coord& c) {
    std::vector<Monomial> raw;
    for (const auto& m : e.monomials()) {
        for (std::size_t i = 0; i < m.vars.size(); ++i) {
            if (!(m.vars[i].first == c)) continue;
            Monomial t = m;
            t.coeff *= t.vars[i].second;
            if (--t.vars[i].second == 0) t.vars.erase(t.vars.begin() + i);
            raw.push_back(std::move(t));
        }
        for (std::size_t j = 0; j < m.kernels.size(); ++j) {
            const auto& f = m.kernels[j];
            Expr du = partial(*f.arg, c);
            if (du.is_zero()) continue;
            Monomial base = m;
            switch (f.fn) {
            case KernelFn::Sin:
                base.coeff *= f.power;
                if (--base.kernels[j].power == 0) base.kernels.erase(base.kernels.begin() + j);
                base.kernels.push_back({KernelFn::Cos, f.arg, 1});
                break;
            case KernelFn::Cos:
                base.coeff *= -f.power;
                if (--base.kernels[j].power == 0) base.kernels.erase(base.kernels.begin() + j);
                base.kernels.push_back({KernelFn::Sin, f.arg, 1});
                break;
            case KernelFn::Exp:
                base.coeff *= f.power;
                break;
            }
            for (const auto& dm : du.monomials()) raw.push_back(mono_mul(base, dm));
        }
    }
    return Expr::from_monomials(std::move(raw));
}

Expr total_derivative(const JetSpace& space, const Expr& e, int mu) {
    if (mu < 0 || mu >= space.base_dim()) throw DimensionMismatch("total derivative direction");
    Expr out;
    for (const auto& c : e.coords()) {
        Expr de = partial(e, c);
        if (de.is_zero()) continue;
        switch (c.kind) {
        case CoordKind::Base:
            if (c.id == mu) out = out + de;
            break;
        case CoordKind::Field:
        case CoordKind::TestField: {
            MultiIndex up = c.index.extended(mu);
            if (up.order() > space.max_order())
                throw MaxOrderExceeded("total derivative raises jet order past cap " +
                                       std::to_string(space.max_order()));
            Coord lifted{c.kind, c.id, up};
            out = out + Expr::coord(lifted) * de;
            break;
        }
        default:
            break; // constants
        }
    }
    return out;
}

Expr total_derivative(const JetSpace& space, const Expr& e, const MultiIndex& I) {
    Expr out = e;
    for (auto d : I.dirs()) out = total_derivative(space, out, d);
    return out;
}

Expr substitute(const Expr& e, const std::map<Coord, Expr>& sigma) {
    Expr out;
    for (const auto& m : e.monomials()) {
        Expr term = Expr::constant(m.coeff);
        for (const auto& [c, p] : m.vars) {
            auto it = sigma.find(c);
            term = term * Expr::pow(it == sigma.end() ? Expr::coord(c) : it->second, p);
        }
        for (const auto& f : m.kernels) {
            Expr arg = substitute(*f.arg, sigma);
            if (arg.has_kernels()) throw KernelDepthExceeded();
            Expr k = Expr::from_monomials({{1, {}, {{f.fn, std::make_shared<Expr>(arg), f.power}}}});
            term = term * k;
        }
        out = out + term;
    }
    return out;
}

namespace {

bool poly_depends_on_homotopy(const Expr& e) { return e.depends_on(Coord::homotopy()); }

// integral over [0,1] of t^k sin(ct) resp. t^k cos(ct) for rational c != 0,
// by the parts recurrence; lands back inside the expression class.
void trig_moment(int k, const Rational& c, Expr& Sk, Expr& Ck) {
    Expr sin_c = Expr::sin(Expr::constant(c));
    Expr cos_c = Expr::cos(Expr::constant(c));
    Expr S = (Expr::integer(1) - cos_c) / Expr::constant(c); // k = 0
    Expr C = sin_c / Expr::constant(c);
    for (int i = 1; i <= k; ++i) {
        Expr Snew = -cos_c / Expr::constant(c) + Expr::constant(Rational(i) / c) * C;
        Expr Cnew = sin_c / Expr::constant(c) - Expr::constant(Rational(i) / c) * S;
        S = Snew;
        C = Cnew;
    }
    Sk = S;
    Ck = C;
}

} // namespace

Expr integrate_homotopy(const Expr& e) {
    const Coord tau = Coord::homotopy();
    Expr out;
    for (const auto& m : e.monomials()) {
        int k = 0;
        Monomial rest = m;
        for (std::size_t i = 0; i < rest.vars.size(); ++i) {
            if (rest.vars[i].first == tau) {
                k = rest.vars[i].second;
                rest.vars.erase(rest.vars.begin() + i);
                break;
            }
        }
        int dep_kernel = -1;
        for (std::size_t j = 0; j < rest.kernels.size(); ++j) {
            if (poly_depends_on_homotopy(*rest.kernels[j].arg)) {
                if (dep_kernel >= 0)
                    throw NonIntegrableKernel("more than one homotopy-dependent kernel factor");
                dep_kernel = static_cast<int>(j);
            }
        }
        if (dep_kernel < 0) {
            rest.coeff /= (k + 1);
            out = out + Expr::from_monomials({rest});
            continue;
        }
        const KernelFactor f = rest.kernels[dep_kernel];
        if (f.fn == KernelFn::Exp || f.power != 1)
            throw NonIntegrableKernel("unsupported homotopy kernel shape");
        // need arg = tau * c with rational c
        Expr c_expr = partial(*f.arg, tau);
        if (!c_expr.is_rational() || c_expr.is_zero() ||
            !(*f.arg == c_expr * Expr::homotopy()))
            throw NonIntegrableKernel("homotopy kernel argument is not tau times a nonzero rational; "
                                      "antiderivative leaves the expression class");
        Rational c = c_expr.rational_value();
        Expr Sk, Ck;
        trig_moment(k, c, Sk, Ck);
        rest.kernels.erase(rest.kernels.begin() + dep_kernel);
        out = out + Expr::from_monomials({rest}) * (f.fn == KernelFn::Sin ? Sk : Ck);
    }
    return out;
}

double evaluate(const JetSpace& space, const Expr& e, const std::map<Coord, double>& bindings) {
    auto value_of = [&](const Coord& c) -> double {
        auto it = bindings.find(c);
        if (it != bindings.end()) return it->second;
        if (c.kind == CoordKind::Pi) return M_PI;
        if (c.kind == CoordKind::Param) {
            if (auto v = space.parameter_value(c.id)) return rat_double(*v);
            throw ExpressionDomainError("parameter '" + space.parameter_name(c.id) +
                                        "' has no declared value");
        }
        throw ExpressionDomainError("no numeric binding for coordinate " + space.coord_name(c));
    };
    double total = 0.0;
    for (const auto& m : e.monomials()) {
        double t = rat_double(m.coeff);
        for (const auto& [c, p] : m.vars) t *= std::pow(value_of(c), p);
        for (const auto& f : m.kernels) {
            double a = evaluate(space, *f.arg, bindings);
            double v = f.fn == KernelFn::Sin ? std::sin(a) : f.fn == KernelFn::Cos ? std::cos(a)
                                                                                   : std::exp(a);
            t *= std::pow(v, f.power);
        }
        total += t;
    }
    return total;
}

std::string to_string(const JetSpace& space, const Expr& e) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& m : e.monomials()) {
        Rational c = m.coeff;
        if (first) {
            if (sgn(c) < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
            c = abs(c);
        }
        first = false;
        bool printed = false;
        if (c != 1 || (m.vars.empty() && m.kernels.empty())) {
            os << rat_str(c);
            printed = true;
        }
        for (const auto& [coord, p] : m.vars) {
            if (printed) os << "*";
            os << space.coord_name(coord);
            if (p != 1) os << "^" << p;
            printed = true;
        }
        for (const auto& f : m.kernels) {
            if (printed) os << "*";
            os << (f.fn == KernelFn::Sin ? "sin" : f.fn == KernelFn::Cos ? "cos" : "exp");
            os << "(" << to_string(space, *f.arg) << ")";
            if (f.power != 1) os << "^" << f.power;
            printed = true;
        }
    }
    return os.str();
}

} // namespace vseq
