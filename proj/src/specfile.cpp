#include "csl/specfile.hpp"

#include <cctype>
#include <sstream>

namespace csl {

const DiffForm* SpecFile::find_form(const std::string& name) const {
    for (auto& [n, f] : forms)
        if (n == name) return &f;
    return nullptr;
}

namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Caret, Slash, LParen, RParen, Comma, Equals, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    void advance() {
        if (pos < src.size() && src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    Token next() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r')) advance();
        int l = line, c = col;
        if (pos >= src.size() || src[pos] == '\n' || src[pos] == '#') return {Tok::End, "", l, c};
        char ch = src[pos];
        if (std::isalpha((unsigned char)ch) || ch == '_') {
            std::string id;
            while (pos < src.size() && (std::isalnum((unsigned char)src[pos]) || src[pos] == '_')) {
                id += src[pos];
                advance();
            }
            return {Tok::Ident, id, l, c};
        }
        if (std::isdigit((unsigned char)ch)) {
            std::string num;
            while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
                num += src[pos];
                advance();
            }
            return {Tok::Number, num, l, c};
        }
        advance();
        switch (ch) {
            case '+': return {Tok::Plus, "+", l, c};
            case '-': return {Tok::Minus, "-", l, c};
            case '*': return {Tok::Star, "*", l, c};
            case '^': return {Tok::Caret, "^", l, c};
            case '/': return {Tok::Slash, "/", l, c};
            case '(': return {Tok::LParen, "(", l, c};
            case ')': return {Tok::RParen, ")", l, c};
            case ',': return {Tok::Comma, ",", l, c};
            case '=': return {Tok::Equals, "=", l, c};
        }
        throw SpecParseError(std::string("unexpected character '") + ch + "'", l, c);
    }
};

// recursive descent over one line of tokens; precedence (tightest first):
// unary d / unary minus, '*', '^', '+'/'-'
struct ExprParser {
    std::vector<Token> toks;
    size_t i = 0;
    ChartPtr chart;

    const Token& peek() const { return toks[i]; }
    Token take() { return toks[i++]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw SpecParseError(msg + (peek().text.empty() ? "" : " at '" + peek().text + "'"), peek().line,
                             peek().col);
    }

    DiffForm parse_expr() {
        DiffForm acc = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = take().kind == Tok::Minus;
            DiffForm rhs = parse_term();
            check_degrees(acc, rhs);
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    DiffForm parse_term() {  // wedge level
        DiffForm acc = parse_wfactor();
        while (peek().kind == Tok::Caret) {
            take();
            acc = wedge(acc, parse_wfactor());
        }
        return acc;
    }

    DiffForm parse_wfactor() {  // scalar product level
        DiffForm acc = parse_factor();
        while (peek().kind == Tok::Star) {
            take();
            DiffForm rhs = parse_factor();
            if (acc.max_degree() > 0 && rhs.max_degree() > 0)
                fail("'*' multiplies by scalars; use '^' for the wedge product");
            if (rhs.max_degree() == 0)
                acc = acc.scale(rhs.component({}));
            else
                acc = rhs.scale(acc.component({}));
        }
        return acc;
    }

    DiffForm parse_factor() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Minus:
                take();
                return -parse_factor();
            case Tok::Number: {
                Token num = take();
                Int n(num.text);
                if (peek().kind == Tok::Slash) {
                    take();
                    if (peek().kind != Tok::Number) fail("expected a denominator");
                    Int d(take().text);
                    if (d == 0) fail("zero denominator");
                    return DiffForm::scalar(chart, Poly(Rational(n, d)));
                }
                return DiffForm::scalar(chart, Poly(Rational(n)));
            }
            case Tok::LParen: {
                take();
                DiffForm e = parse_expr();
                if (peek().kind != Tok::RParen) fail("expected ')'");
                take();
                return e;
            }
            case Tok::Ident: {
                Token id = take();
                if (id.text == "wpow") {
                    if (peek().kind != Tok::LParen) fail("wpow needs '('");
                    take();
                    DiffForm e = parse_expr();
                    if (peek().kind != Tok::Comma) fail("wpow needs ', <power>'");
                    take();
                    if (peek().kind != Tok::Number) fail("wpow power must be a number");
                    int n = std::stoi(take().text);
                    if (peek().kind != Tok::RParen) fail("expected ')'");
                    take();
                    return wpow(e, (unsigned)n);
                }
                if (id.text == "d") {
                    if (peek().kind != Tok::LParen) fail("'d' needs '(' or a variable suffix");
                    take();
                    DiffForm e = parse_expr();
                    if (peek().kind != Tok::RParen) fail("expected ')'");
                    take();
                    return ext_d(e);
                }
                if (id.text.size() > 1 && id.text[0] == 'd') {
                    std::string rest = id.text.substr(1);
                    int v = chart->find_var(rest);
                    if (v >= 0) return ext_d(DiffForm::scalar(chart, Poly::var(v)));
                    fail("unknown differential '" + id.text + "' (no variable '" + rest + "')");
                }
                int v = chart->find_var(id.text);
                if (v >= 0) return DiffForm::scalar(chart, Poly::var(v));
                int g = chart->find_gen(id.text);
                if (g >= 0) return DiffForm::generator(chart, g);
                fail("unknown name '" + id.text + "'");
            }
            default: fail("expected an expression");
        }
    }

    void check_degrees(const DiffForm& a, const DiffForm& b) {
        if (a.is_zero() || b.is_zero()) return;
        if (a.is_homogeneous() && b.is_homogeneous() && a.degree() != b.degree())
            fail("cannot add forms of different degrees (" + std::to_string(a.degree()) + " vs " +
                 std::to_string(b.degree()) + ")");
    }
};

std::vector<Token> lex_line(const std::string& line, int lineno) {
    Lexer lx(line);
    lx.line = lineno;
    std::vector<Token> out;
    while (true) {
        Token t = lx.next();
        out.push_back(t);
        if (t.kind == Tok::End) break;
    }
    return out;
}

std::vector<std::string> idents_only(const std::vector<Token>& toks, size_t from, int lineno) {
    std::vector<std::string> out;
    for (size_t i = from; i + 1 < toks.size(); ++i) {
        if (toks[i].kind != Tok::Ident)
            throw SpecParseError("expected an identifier", lineno, toks[i].col);
        out.push_back(toks[i].text);
    }
    return out;
}

DiffForm parse_expression(std::vector<Token> toks, const ChartPtr& chart) {
    ExprParser ep{std::move(toks), 0, chart};
    DiffForm f = ep.parse_expr();
    if (ep.peek().kind != Tok::End) ep.fail("trailing tokens");
    return f;
}

} // namespace

SpecFile parse_spec(const std::string& text) {
    SpecFile spec;
    ChartBuilder builder("unnamed");
    bool have_chart = false, chart_built = false;

    struct GenDecl {
        std::string name;
        std::vector<Token> rhs;  // empty: closed
        int line;
    };
    std::vector<GenDecl> gens;
    struct PendingForm {
        std::string name;
        std::vector<Token> rhs;
        int line;
    };
    std::vector<PendingForm> pending_forms;
    std::vector<std::pair<std::vector<Token>, int>> pending_hints;

    // materialize runs once the structural section ends: angles, plain
    // relations, then generators in declaration order (differentials may
    // reference earlier generators only)
    auto materialize = [&]() {
        if (chart_built) return;
        if (!have_chart) throw SpecParseError("missing chart declaration", 1, 1);
        for (auto& a : spec.angles) builder.add_trig_pair(a.sin_var, a.cos_var, a.gen, a.factor);
        for (auto& rel : spec.relations) {
            ChartPtr probe = builder.build();
            std::vector<VarId> ids;
            for (auto& v : rel) {
                int id = probe->find_var(v);
                if (id < 0) throw SpecParseError("relation over undeclared variable " + v, 1, 1);
                ids.push_back(id);
            }
            builder.add_group(ids);
        }
        for (auto& g : gens) {
            if (g.rhs.empty()) {
                builder.add_abstract_gen(g.name);
                continue;
            }
            ChartPtr partial = builder.build();
            DiffForm diff = parse_expression(g.rhs, partial);
            if (!diff.is_zero() && (!diff.is_homogeneous() || diff.degree() != 2))
                throw SpecParseError("generator differential must be a 2-form", g.line, 1);
            builder.add_abstract_gen(g.name, FormData(diff.components()));
        }
        if (spec.sphere) builder.set_sphere();
        spec.chart = builder.build();
        chart_built = true;
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = lex_line(line, lineno);
        if (toks.size() == 1) continue;  // blank or comment
        if (toks[0].kind != Tok::Ident) throw SpecParseError("expected a keyword", lineno, toks[0].col);
        const std::string& kw = toks[0].text;

        auto structural = [&](const char* what) {
            if (chart_built)
                throw SpecParseError(std::string(what) + " must precede forms and hints", lineno,
                                     toks[0].col);
        };

        if (kw == "chart") {
            structural("chart");
            if (have_chart) throw SpecParseError("one chart per file", lineno, toks[0].col);
            have_chart = true;
            if (toks.size() < 2 || toks[1].kind != Tok::Ident)
                throw SpecParseError("chart needs a name", lineno, toks[0].col);
            spec.chart_name = toks[1].text;
            size_t i = 2;
            if (toks[i].kind == Tok::Ident && toks[i].text == "sphere") {
                spec.sphere = true;
                ++i;
            }
            if (toks[i].kind != Tok::End) throw SpecParseError("trailing tokens", lineno, toks[i].col);
            builder = ChartBuilder(spec.chart_name);
        } else if (kw == "vars") {
            structural("vars");
            for (auto& v : idents_only(toks, 1, lineno)) {
                builder.add_var(v);
                spec.plain_vars.push_back(v);
            }
        } else if (kw == "relation") {
            structural("relation");
            std::vector<std::string> vars;
            size_t i = 1;
            while (true) {
                if (toks[i].kind != Tok::Ident)
                    throw SpecParseError("expected a variable", lineno, toks[i].col);
                vars.push_back(toks[i].text);
                ++i;
                if (toks[i].kind != Tok::Caret || toks[i + 1].kind != Tok::Number || toks[i + 1].text != "2")
                    throw SpecParseError("relation terms must be squares v^2", lineno, toks[i].col);
                i += 2;
                if (toks[i].kind == Tok::Plus) {
                    ++i;
                    continue;
                }
                break;
            }
            if (toks[i].kind != Tok::Equals || toks[i + 1].kind != Tok::Number || toks[i + 1].text != "1")
                throw SpecParseError("relation must equal 1", lineno, toks[i].col);
            spec.relations.push_back(vars);
        } else if (kw == "angle") {
            structural("angle");
            size_t i = 1;
            auto need_ident = [&](const char* what) {
                if (toks[i].kind != Tok::Ident)
                    throw SpecParseError(std::string("expected ") + what, lineno, toks[i].col);
                return toks[i++].text;
            };
            SpecFile::AngleDecl a;
            a.gen = need_ident("a generator name");
            if (need_ident("'sin'") != "sin") throw SpecParseError("expected 'sin'", lineno, 1);
            a.sin_var = need_ident("a variable");
            if (need_ident("'cos'") != "cos") throw SpecParseError("expected 'cos'", lineno, 1);
            a.cos_var = need_ident("a variable");
            if (toks[i].kind == Tok::Ident && toks[i].text == "factor") {
                ++i;
                int sign = 1;
                if (toks[i].kind == Tok::Minus) {
                    sign = -1;
                    ++i;
                }
                if (toks[i].kind != Tok::Number)
                    throw SpecParseError("factor needs an integer", lineno, toks[i].col);
                a.factor = sign * std::stoi(toks[i++].text);
            }
            if (toks[i].kind != Tok::End) throw SpecParseError("trailing tokens", lineno, toks[i].col);
            spec.angles.push_back(a);
        } else if (kw == "gen") {
            structural("gen");
            if (toks.size() < 2 || toks[1].kind != Tok::Ident)
                throw SpecParseError("gen needs a name", lineno, toks[0].col);
            std::string name = toks[1].text;
            if (toks[2].kind == Tok::End) {
                gens.push_back({name, {}, lineno});
                spec.gen_decls.push_back({name, false});
            } else {
                size_t i = 2;
                auto expect_kw = [&](const char* word) {
                    if (toks[i].kind != Tok::Ident || toks[i].text != word)
                        throw SpecParseError(std::string("expected '") + word + "'", lineno, toks[i].col);
                    ++i;
                };
                expect_kw("with");
                expect_kw("d");
                if (toks[i].kind != Tok::LParen) throw SpecParseError("expected '('", lineno, toks[i].col);
                ++i;
                if (toks[i].kind != Tok::Ident || toks[i].text != name)
                    throw SpecParseError("differential must be declared for the generator itself", lineno,
                                         toks[i].col);
                ++i;
                if (toks[i].kind != Tok::RParen) throw SpecParseError("expected ')'", lineno, toks[i].col);
                ++i;
                if (toks[i].kind != Tok::Equals) throw SpecParseError("expected '='", lineno, toks[i].col);
                ++i;
                gens.push_back({name, std::vector<Token>(toks.begin() + i, toks.end()), lineno});
                spec.gen_decls.push_back({name, true});
            }
        } else if (kw == "form") {
            materialize();
            if (toks.size() < 4 || toks[1].kind != Tok::Ident || toks[2].kind != Tok::Equals)
                throw SpecParseError("form <name> = <expr>", lineno, toks[0].col);
            pending_forms.push_back({toks[1].text, std::vector<Token>(toks.begin() + 3, toks.end()), lineno});
        } else if (kw == "hint") {
            materialize();
            pending_hints.push_back({toks, lineno});
        } else if (kw == "expect") {
            auto ids = idents_only(toks, 1, lineno);
            if (ids.size() != 2) throw SpecParseError("expect <property> <verdict>", lineno, toks[0].col);
            spec.expectations.push_back({ids[0], ids[1]});
        } else {
            throw SpecParseError("unknown keyword '" + kw + "'", lineno, toks[0].col);
        }
    }
    materialize();

    for (auto& pf : pending_forms) {
        DiffForm f = parse_expression(pf.rhs, spec.chart);
        if (!f.is_zero() && !f.is_homogeneous())
            throw SpecParseError("form '" + pf.name + "' mixes degrees", pf.line, 1);
        for (auto& [n, g] : spec.forms)
            if (n == pf.name) throw SpecParseError("duplicate form name '" + pf.name + "'", pf.line, 1);
        spec.forms.push_back({pf.name, std::move(f)});
    }

    for (auto& [toks, hline] : pending_hints) {
        if (toks.size() < 3 || toks[1].kind != Tok::Ident)
            throw SpecParseError("hint pairing ... | hint assumed ...", hline, toks[0].col);
        if (toks[1].text == "pairing") {
            for (auto& v : idents_only(toks, 2, hline)) {
                int id = spec.chart->find_var(v);
                if (id < 0) throw SpecParseError("unknown variable " + v + " in pairing", hline, 1);
                spec.lambda_pairing.push_back(id);
            }
        } else if (toks[1].text == "assumed") {
            size_t in_pos = 0;
            for (size_t i = 2; i + 1 < toks.size(); ++i)
                if (toks[i].kind == Tok::Ident && toks[i].text == "in") in_pos = i;
            if (!in_pos) throw SpecParseError("assumed hint needs 'in <lo> <hi>'", hline, 1);
            std::vector<Token> expr_toks(toks.begin() + 2, toks.begin() + in_pos);
            expr_toks.push_back({Tok::End, "", hline, 1});
            DiffForm aux = parse_expression(std::move(expr_toks), spec.chart);
            if (aux.max_degree() != 0) throw SpecParseError("assumed hint must be a scalar", hline, 1);
            auto parse_rat = [&](size_t& i) {
                int sign = 1;
                if (toks[i].kind == Tok::Minus) {
                    sign = -1;
                    ++i;
                }
                if (toks[i].kind != Tok::Number)
                    throw SpecParseError("expected a rational bound", hline, toks[i].col);
                Int n(toks[i].text);
                ++i;
                Int d(1);
                if (toks[i].kind == Tok::Slash) {
                    ++i;
                    if (toks[i].kind != Tok::Number)
                        throw SpecParseError("expected a denominator", hline, toks[i].col);
                    d = Int(toks[i].text);
                    ++i;
                }
                return Rational(Int(sign) * n, d);
            };
            size_t i = in_pos + 1;
            BoundHint h;
            h.auxiliary = aux.component({});
            h.lo = parse_rat(i);
            h.hi = parse_rat(i);
            if (h.lo >= h.hi) throw SpecParseError("hint range must satisfy lo < hi", hline, 1);
            h.assumed = true;
            h.name = "assumed-bound";
            spec.hints.push_back(h);
        } else {
            throw SpecParseError("unknown hint kind '" + toks[1].text + "'", hline, toks[1].col);
        }
    }
    return spec;
}

// --- printing -----------------------------------------------------------------

std::string render_poly(const Poly& p, const ChartPtr& chart) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const Rational c = it->second;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        Rational a = c.abs();
        bool unit = a == Rational(1) && !it->first.is_one();
        if (!unit) os << a.str();
        bool lead = unit;
        for (auto& [v, e] : it->first.exponents())
            for (int k = 0; k < e; ++k) {
                if (!lead) os << "*";
                lead = false;
                os << chart->vars[v];
            }
    }
    return os.str();
}

std::string render_form(const DiffForm& f) {
    if (f.is_zero()) return "0";
    const ChartPtr& ch = f.chart();
    std::ostringstream os;
    bool first = true;
    for (auto& [t, p] : f.components()) {
        if (!first) os << " + ";
        first = false;
        if (t.empty()) {
            os << "(" << render_poly(p, ch) << ")";
            continue;
        }
        os << "(" << render_poly(p, ch) << ")";
        for (int g : t) {
            os << (g == t.front() ? "*" : "^");
            const GenInfo& gi = ch->gens[g];
            os << (gi.coord_var >= 0 ? "d" + ch->vars[gi.coord_var] : gi.name);
        }
    }
    return os.str();
}

std::string print_spec(const SpecFile& s) {
    std::ostringstream os;
    os << "chart " << s.chart_name << (s.sphere ? " sphere" : "") << "\n";
    if (!s.plain_vars.empty()) {
        os << "vars";
        for (auto& v : s.plain_vars) os << " " << v;
        os << "\n";
    }
    for (auto& a : s.angles) {
        os << "angle " << a.gen << " sin " << a.sin_var << " cos " << a.cos_var;
        if (a.factor != 1) os << " factor " << a.factor;
        os << "\n";
    }
    for (auto& rel : s.relations) {
        os << "relation ";
        for (size_t i = 0; i < rel.size(); ++i) os << (i ? " + " : "") << rel[i] << "^2";
        os << " = 1\n";
    }
    for (auto& g : s.gen_decls) {
        if (!g.has_diff) {
            os << "gen " << g.name << "\n";
        } else {
            int gi = s.chart->find_gen(g.name);
            DiffForm d = DiffForm::from_components(s.chart, FormData(s.chart->gens[gi].differential));
            os << "gen " << g.name << " with d(" << g.name << ") = " << render_form(d) << "\n";
        }
    }
    for (auto& [n, f] : s.forms) os << "form " << n << " = " << render_form(f) << "\n";
    if (!s.lambda_pairing.empty()) {
        os << "hint pairing";
        for (VarId v : s.lambda_pairing) os << " " << s.chart->vars[v];
        os << "\n";
    }
    for (auto& h : s.hints)
        if (h.assumed)
            os << "hint assumed " << render_poly(h.auxiliary, s.chart) << " in " << h.lo.str() << " "
               << h.hi.str() << "\n";
    for (auto& [p, v] : s.expectations) os << "expect " << p << " " << v << "\n";
    return os.str();
}

bool charts_structurally_equal(const ChartPtr& a, const ChartPtr& b) {
    if (a->vars != b->vars || a->mode != b->mode || a->sphere_group != b->sphere_group) return false;
    if (a->groups.size() != b->groups.size()) return false;
    for (size_t i = 0; i < a->groups.size(); ++i)
        if (a->groups[i].vars != b->groups[i].vars) return false;
    if (a->gens.size() != b->gens.size()) return false;
    for (size_t i = 0; i < a->gens.size(); ++i) {
        if (a->gens[i].name != b->gens[i].name || a->gens[i].coord_var != b->gens[i].coord_var ||
            a->gens[i].differential != b->gens[i].differential)
            return false;
    }
    return a->var_diff == b->var_diff;
}

bool specs_structurally_equal(const SpecFile& a, const SpecFile& b) {
    if (!charts_structurally_equal(a.chart, b.chart)) return false;
    if (a.forms.size() != b.forms.size()) return false;
    for (size_t i = 0; i < a.forms.size(); ++i) {
        if (a.forms[i].first != b.forms[i].first) return false;
        if (!(a.forms[i].second.components() == b.forms[i].second.components())) return false;
    }
    if (a.lambda_pairing != b.lambda_pairing) return false;
    if (a.expectations != b.expectations) return false;
    if (a.hints.size() != b.hints.size()) return false;
    for (size_t i = 0; i < a.hints.size(); ++i)
        if (!(a.hints[i].auxiliary == b.hints[i].auxiliary) || a.hints[i].lo != b.hints[i].lo ||
            a.hints[i].hi != b.hints[i].hi)
            return false;
    return true;
}

} // namespace csl
