#include "vseq/problem.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <set>
#include <sstream>

namespace vseq {

namespace {

struct Token {
    enum Kind { Ident, Integer, Float, Str, Punct, End } kind = End;
    std::string text;
    long ival = 0;
    double fval = 0;
    int line = 1;
    int col = 1;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto bump = [&](char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') bump(text[i++]);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            bump(c);
            ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                s += text[i];
                bump(text[i++]);
            }
            t.kind = Token::Ident;
            t.text = s;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            bool is_float = false;
            while (i < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.' ||
                    text[i] == 'e' || text[i] == 'E' ||
                    ((text[i] == '+' || text[i] == '-') && i > 0 &&
                     (text[i - 1] == 'e' || text[i - 1] == 'E')))) {
                if (text[i] == '.' || text[i] == 'e' || text[i] == 'E') is_float = true;
                s += text[i];
                bump(text[i++]);
            }
            if (is_float) {
                t.kind = Token::Float;
                t.fval = std::stod(s);
            } else {
                t.kind = Token::Integer;
                t.ival = std::stol(s);
            }
            t.text = s;
        } else if (c == '"') {
            bump(text[i++]);
            std::string s;
            while (i < text.size() && text[i] != '"') {
                s += text[i];
                bump(text[i++]);
            }
            if (i == text.size()) throw ParseError(t.line, t.col, "unterminated string");
            bump(text[i++]);
            t.kind = Token::Str;
            t.text = s;
        } else if (std::strchr("{}=,()+-*/^", c)) {
            t.kind = Token::Punct;
            t.text = std::string(1, c);
            bump(text[i++]);
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::End;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    ProblemFile parse_file();
    Expr parse_expression_for(const JetSpace& space);

private:
    const Token& peek(int ahead = 0) const {
        std::size_t k = pos_ + ahead;
        return k < toks_.size() ? toks_[k] : toks_.back();
    }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    bool accept_punct(const char* p) {
        if (peek().kind == Token::Punct && peek().text == p) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool accept_ident(const char* kw) {
        if (peek().kind == Token::Ident && peek().text == kw) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect_punct(const char* p) {
        if (!accept_punct(p)) fail("expected '" + std::string(p) + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(peek().line, peek().col, msg);
    }

    std::string expect_name() {
        if (peek().kind != Token::Ident) fail("expected a name");
        return next().text;
    }
    long expect_integer() {
        bool neg = accept_punct("-");
        if (peek().kind != Token::Integer) fail("expected an integer");
        long v = next().ival;
        return neg ? -v : v;
    }
    Rational expect_rational() {
        long num = expect_integer();
        if (accept_punct("/")) {
            long den = expect_integer();
            if (den == 0) fail("zero denominator");
            return rat(num, den);
        }
        return rat(num);
    }

    void parse_problem_block(ProblemFile& pf);
    void parse_chart_block(ProblemFile& pf);
    void parse_source_block(ProblemFile& pf);
    void parse_vectorfield_block(ProblemFile& pf);
    void parse_options_block(ProblemFile& pf);

    Expr parse_expr();
    Expr parse_sum();
    Expr parse_product();
    Expr parse_unary();
    Expr parse_power();
    Expr parse_primary();
    Expr resolve_symbol(const Token& tok);

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const JetSpace* space_ = nullptr;
    int declared_order_ = 4;
};

Expr Parser::resolve_symbol(const Token& tok) {
    const JetSpace& s = *space_;
    const std::string& name = tok.text;
    if (name == "pi") return Expr::pi();
    if (auto p = s.find_parameter(name)) return Expr::param(*p);
    if (auto mu = s.find_base(name)) return Expr::base(*mu);
    if (auto a = s.find_field(name)) return Expr::field(*a);
    // derivative suffix: field '_' coordinate names, longest coordinate first
    auto underscore = name.find('_');
    while (underscore != std::string::npos) {
        std::string head = name.substr(0, underscore);
        std::string tail = name.substr(underscore + 1);
        if (auto a = s.find_field(head); a && !tail.empty()) {
            std::vector<std::uint8_t> dirs;
            bool ok = true;
            while (!tail.empty()) {
                int best = -1;
                std::size_t best_len = 0;
                for (int mu = 0; mu < s.base_dim(); ++mu) {
                    const std::string& bn = s.base_name(mu);
                    if (bn.size() > best_len && tail.rfind(bn, 0) == 0) {
                        best = mu;
                        best_len = bn.size();
                    }
                }
                if (best < 0) {
                    ok = false;
                    break;
                }
                dirs.push_back(static_cast<std::uint8_t>(best));
                tail = tail.substr(best_len);
            }
            if (ok) {
                MultiIndex I(std::move(dirs));
                if (I.order() > declared_order_)
                    throw ParseError(tok.line, tok.col,
                                     "derivative order " + std::to_string(I.order()) +
                                         " exceeds the declared jet order " +
                                         std::to_string(declared_order_));
                return Expr::field(*a, std::move(I));
            }
        }
        underscore = name.find('_', underscore + 1);
    }
    throw ParseError(tok.line, tok.col, "undeclared symbol '" + name + "'");
}

Expr Parser::parse_primary() {
    if (accept_punct("(")) {
        Expr e = parse_sum();
        expect_punct(")");
        return e;
    }
    if (peek().kind == Token::Integer) return Expr::integer(next().ival);
    if (peek().kind == Token::Float)
        fail("decimal literals are not exact; write rationals as p/q");
    if (peek().kind == Token::Ident) {
        Token tok = next();
        if (peek().kind == Token::Punct && peek().text == "(") {
            if (tok.text != "sin" && tok.text != "cos" && tok.text != "exp")
                throw ParseError(tok.line, tok.col, "unknown function '" + tok.text + "'");
            expect_punct("(");
            Expr arg = parse_sum();
            expect_punct(")");
            try {
                if (tok.text == "sin") return Expr::sin(arg);
                if (tok.text == "cos") return Expr::cos(arg);
                return Expr::exp(arg);
            } catch (const KernelDepthExceeded&) {
                throw ParseError(tok.line, tok.col, "nested sin/cos/exp arguments");
            }
        }
        return resolve_symbol(tok);
    }
    fail("expected an expression");
}

Expr Parser::parse_power() {
    Expr base = parse_primary();
    if (accept_punct("^")) {
        long k = expect_integer();
        if (k < 0) fail("negative powers are outside the expression class");
        return Expr::pow(base, static_cast<int>(k));
    }
    return base;
}

Expr Parser::parse_unary() {
    if (accept_punct("-")) return -parse_unary();
    if (accept_punct("+")) return parse_unary();
    return parse_power();
}

Expr Parser::parse_product() {
    Expr e = parse_unary();
    for (;;) {
        if (accept_punct("*")) {
            e = e * parse_unary();
        } else if (accept_punct("/")) {
            Token at = peek();
            Expr d = parse_unary();
            if (!d.is_rational() || d.is_zero())
                throw ParseError(at.line, at.col,
                                 "division is only defined by nonzero rational constants");
            e = e / d;
        } else {
            return e;
        }
    }
}

Expr Parser::parse_sum() {
    Expr e = parse_product();
    for (;;) {
        if (accept_punct("+"))
            e = e + parse_product();
        else if (accept_punct("-"))
            e = e - parse_product();
        else
            return e;
    }
}

Expr Parser::parse_expr() { return parse_sum(); }

void Parser::parse_problem_block(ProblemFile& pf) {
    expect_punct("{");
    int base = 1;
    int order = 1;
    std::vector<std::string> coords{"x0"};
    std::vector<std::string> fields;
    std::vector<std::pair<std::string, std::optional<Rational>>> params;
    bool coords_given = false;

    while (!accept_punct("}")) {
        Token key = peek();
        std::string k = expect_name();
        expect_punct("=");
        if (k == "base") {
            base = static_cast<int>(expect_integer());
            if (base < 1 || base > 3) throw ParseError(key.line, key.col, "base must be 1..3");
        } else if (k == "order") {
            order = static_cast<int>(expect_integer());
            if (order < 1 || order > 4)
                throw ParseError(key.line, key.col, "jet order must be 1..4");
        } else if (k == "coords") {
            coords.clear();
            coords_given = true;
            do coords.push_back(expect_name());
            while (accept_punct(","));
        } else if (k == "fields") {
            do fields.push_back(expect_name());
            while (accept_punct(","));
        } else if (k == "parameters") {
            do {
                std::string pn = expect_name();
                std::optional<Rational> pv;
                if (accept_punct("=")) pv = expect_rational();
                params.emplace_back(pn, pv);
            } while (accept_punct(","));
        } else if (k == "cover") {
            if (peek().kind != Token::Str)
                throw ParseError(key.line, key.col, "cover expects a quoted name");
            pf.cover_name = next().text;
        } else {
            throw ParseError(key.line, key.col, "unknown problem entry '" + k + "'");
        }
    }
    if (fields.empty()) fail("the problem declares no fields");
    if (!coords_given) {
        coords.clear();
        for (int mu = 0; mu < base; ++mu) coords.push_back("x" + std::to_string(mu));
    }
    if (static_cast<int>(coords.size()) != base) fail("coords count must match base");

    std::set<std::string> seen{"pi", "sin", "cos", "exp", "tau", "s0", "s1"};
    auto claim = [&](const std::string& n, const Token& at) {
        if (!seen.insert(n).second)
            throw ParseError(at.line, at.col, "name '" + n + "' is reserved or already used");
    };
    Token here = peek();
    JetSpace s(base, static_cast<int>(fields.size()), order);
    for (int mu = 0; mu < base; ++mu) {
        claim(coords[mu], here);
        s.set_base_name(mu, coords[mu]);
    }
    for (std::size_t a = 0; a < fields.size(); ++a) {
        claim(fields[a], here);
        s.set_field_name(static_cast<int>(a), fields[a]);
    }
    for (auto& [pn, pv] : params) {
        claim(pn, here);
        s.add_parameter(pn, pv);
    }
    pf.space = std::move(s);
    pf.declared_order = order;
    space_ = &pf.space;
    declared_order_ = order;
}

void Parser::parse_chart_block(ProblemFile& pf) {
    std::string name = expect_name();
    expect_punct("{");
    while (!accept_punct("}")) {
        Token key = peek();
        std::string k = expect_name();
        expect_punct("=");
        if (k == "lagrangian") {
            pf.lagrangians[name] = Lagrangian{parse_expr()};
        } else if (k == "center") {
            std::vector<Rational> c;
            do c.push_back(expect_rational());
            while (accept_punct(","));
            pf.centers[name] = std::move(c);
        } else {
            throw ParseError(key.line, key.col, "unknown chart entry '" + k + "'");
        }
    }
}

void Parser::parse_source_block(ProblemFile& pf) {
    expect_punct("{");
    SourceForm eta(pf.space.fiber_dim());
    while (!accept_punct("}")) {
        Token key = peek();
        std::string fname = expect_name();
        auto a = pf.space.find_field(fname);
        if (!a) throw ParseError(key.line, key.col, "undeclared field '" + fname + "'");
        expect_punct("=");
        eta.comps[*a] = parse_expr();
    }
    pf.source = std::move(eta);
}

void Parser::parse_vectorfield_block(ProblemFile& pf) {
    Token at = peek();
    std::string name = expect_name();
    for (const auto& [n, _] : pf.vector_fields)
        if (n == name) throw ParseError(at.line, at.col, "duplicate vector field '" + name + "'");
    expect_punct("{");
    std::vector<Expr> xi(pf.space.base_dim());
    std::vector<Expr> Xi(pf.space.fiber_dim());
    while (!accept_punct("}")) {
        Token d = peek();
        if (expect_name() != "d") throw ParseError(d.line, d.col, "expected 'd/d<coordinate>'");
        expect_punct("/");
        std::string target = expect_name();
        if (target.size() < 2 || target[0] != 'd')
            throw ParseError(d.line, d.col, "expected 'd/d<coordinate>'");
        std::string coord = target.substr(1);
        expect_punct("=");
        Expr comp = parse_expr();
        if (auto mu = pf.space.find_base(coord)) {
            xi[*mu] = comp;
        } else if (auto a = pf.space.find_field(coord)) {
            Xi[*a] = comp;
        } else {
            throw ParseError(d.line, d.col, "undeclared coordinate '" + coord + "'");
        }
    }
    try {
        pf.vector_fields.emplace_back(name, VectorField(pf.space, std::move(xi), std::move(Xi)));
    } catch (const DimensionMismatch& e) {
        throw ParseError(at.line, at.col, e.what());
    }
}

void Parser::parse_options_block(ProblemFile& pf) {
    expect_punct("{");
    while (!accept_punct("}")) {
        Token key = peek();
        std::string k = expect_name();
        expect_punct("=");
        if (k == "tolerance") {
            if (peek().kind == Token::Float)
                pf.tolerance = next().fval;
            else
                pf.tolerance = static_cast<double>(expect_integer());
        } else if (k == "quad_nodes") {
            pf.quad_nodes = static_cast<int>(expect_integer());
            if (pf.quad_nodes < 1 || pf.quad_nodes > 4096)
                throw ParseError(key.line, key.col, "quad_nodes must be 1..4096");
        } else if (k == "ansatz_degree") {
            pf.ansatz.max_poly_degree = static_cast<int>(expect_integer());
        } else if (k == "ansatz_jet_order") {
            pf.ansatz.max_jet_order = static_cast<int>(expect_integer());
        } else if (k == "ansatz_kernels") {
            pf.ansatz.include_kernels_from_target = expect_integer() != 0;
        } else {
            throw ParseError(key.line, key.col, "unknown option '" + k + "'");
        }
    }
}

ProblemFile Parser::parse_file() {
    ProblemFile pf;
    if (!accept_ident("problem")) fail("a problem file starts with a 'problem' block");
    parse_problem_block(pf);
    while (peek().kind != Token::End) {
        Token at = peek();
        std::string section = expect_name();
        if (section == "chart") {
            parse_chart_block(pf);
        } else if (section == "lagrangian") {
            expect_punct("=");
            pf.lagrangians[""] = Lagrangian{parse_expr()};
        } else if (section == "source") {
            parse_source_block(pf);
        } else if (section == "vectorfield") {
            parse_vectorfield_block(pf);
        } else if (section == "options") {
            parse_options_block(pf);
        } else {
            throw ParseError(at.line, at.col, "unknown section '" + section + "'");
        }
    }
    return pf;
}

Expr Parser::parse_expression_for(const JetSpace& space) {
    space_ = &space;
    declared_order_ = space.max_order();
    Expr e = parse_expr();
    if (peek().kind != Token::End) fail("trailing input after the expression");
    return e;
}

} // namespace

const VectorField* ProblemFile::find_field(const std::string& name) const {
    for (const auto& [n, v] : vector_fields)
        if (n == name) return &v;
    return nullptr;
}

ProblemFile parse_problem(const std::string& text) { return Parser(text).parse_file(); }

Expr parse_expression(const JetSpace& space, const std::string& text) {
    return Parser(text).parse_expression_for(space);
}

std::string print_problem(const ProblemFile& pf) {
    const JetSpace& s = pf.space;
    std::ostringstream os;
    os << "problem {\n";
    os << "  base = " << s.base_dim() << "\n";
    os << "  coords = ";
    for (int mu = 0; mu < s.base_dim(); ++mu) os << (mu ? ", " : "") << s.base_name(mu);
    os << "\n  fields = ";
    for (int a = 0; a < s.fiber_dim(); ++a) os << (a ? ", " : "") << s.field_name(a);
    os << "\n  order = " << pf.declared_order << "\n";
    bool any_param = false;
    for (int p = 0; p < s.parameter_count(); ++p) {
        const std::string& pn = s.parameter_name(p);
        if (pn == "s0" || pn == "s1") continue;
        os << (any_param ? ", " : "  parameters = ") << pn;
        if (auto v = s.parameter_value(p)) os << " = " << rat_str(*v);
        any_param = true;
    }
    if (any_param) os << "\n";
    if (!pf.cover_name.empty()) os << "  cover = \"" << pf.cover_name << "\"\n";
    os << "}\n";

    for (const auto& [chart, lag] : pf.lagrangians) {
        if (chart.empty()) {
            os << "lagrangian = " << to_string(s, lag.L) << "\n";
        } else {
            os << "chart " << chart << " {\n  lagrangian = " << to_string(s, lag.L) << "\n";
            if (auto it = pf.centers.find(chart); it != pf.centers.end()) {
                os << "  center = ";
                for (std::size_t i = 0; i < it->second.size(); ++i)
                    os << (i ? ", " : "") << rat_str(it->second[i]);
                os << "\n";
            }
            os << "}\n";
        }
    }
    if (pf.source) {
        os << "source {\n";
        for (int a = 0; a < s.fiber_dim(); ++a)
            if (!pf.source->comps[a].is_zero())
                os << "  " << s.field_name(a) << " = " << to_string(s, pf.source->comps[a]) << "\n";
        os << "}\n";
    }
    std::vector<std::pair<std::string, const VectorField*>> vfs;
    for (const auto& [n, v] : pf.vector_fields) vfs.emplace_back(n, &v);
    std::sort(vfs.begin(), vfs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [n, v] : vfs) {
        os << "vectorfield " << n << " {\n";
        for (int mu = 0; mu < s.base_dim(); ++mu)
            if (!v->xi(mu).is_zero())
                os << "  d/d" << s.base_name(mu) << " = " << to_string(s, v->xi(mu)) << "\n";
        for (int a = 0; a < s.fiber_dim(); ++a)
            if (!v->Xi(a).is_zero())
                os << "  d/d" << s.field_name(a) << " = " << to_string(s, v->Xi(a)) << "\n";
        os << "}\n";
    }
    os << "options {\n";
    {
        std::ostringstream tol;
        tol << pf.tolerance;
        std::string t = tol.str();
        if (t.find('e') == std::string::npos && t.find('.') == std::string::npos) t += ".0";
        os << "  tolerance = " << t << "\n";
    }
    os << "  quad_nodes = " << pf.quad_nodes << "\n";
    os << "  ansatz_degree = " << pf.ansatz.max_poly_degree << "\n";
    os << "  ansatz_jet_order = " << pf.ansatz.max_jet_order << "\n";
    os << "  ansatz_kernels = " << (pf.ansatz.include_kernels_from_target ? 1 : 0) << "\n";
    os << "}\n";
    return os.str();
}

} // namespace vseq
