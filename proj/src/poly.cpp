#include "csl/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "csl/errors.hpp"

namespace csl {

Monomial::Monomial(std::vector<std::pair<VarId, int>> exps) : e_(std::move(exps)) {
    std::sort(e_.begin(), e_.end());
    for (size_t i = 0; i < e_.size(); ++i) {
        if (e_[i].second <= 0) throw InternalError("monomial with non-positive exponent");
        if (i && e_[i].first == e_[i - 1].first) throw InternalError("monomial with repeated variable");
    }
}

Monomial Monomial::var(VarId v, int exp) {
    Monomial m;
    if (exp != 0) m.e_.push_back({v, exp});
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (auto& [v, e] : e_) d += e;
    return d;
}

int Monomial::degree_in(VarId v) const {
    for (auto& [w, e] : e_)
        if (w == v) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    auto a = e_.begin(), b = o.e_.begin();
    while (a != e_.end() || b != o.e_.end()) {
        if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
            r.e_.push_back(*a++);
        } else if (a == e_.end() || b->first < a->first) {
            r.e_.push_back(*b++);
        } else {
            r.e_.push_back({a->first, a->second + b->second});
            ++a;
            ++b;
        }
    }
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    for (auto& [v, e] : e_)
        if (o.degree_in(v) < e) return false;
    return true;
}

Monomial Monomial::divide(const Monomial& o) const {
    // o / *this; caller guarantees divisibility
    Monomial r;
    for (auto& [v, e] : o.e_) {
        int sub = degree_in(v);
        if (e - sub < 0) throw InternalError("monomial division underflow");
        if (e - sub > 0) r.e_.push_back({v, e - sub});
    }
    return r;
}

Monomial Monomial::erase_var(VarId v) const {
    Monomial r;
    for (auto& p : e_)
        if (p.first != v) r.e_.push_back(p);
    return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // lex with smaller VarId = more significant; exponent vectors compared densely
    auto ia = a.e_.begin(), ib = b.e_.begin();
    while (ia != a.e_.end() && ib != b.e_.end()) {
        if (ia->first != ib->first) {
            // the one holding the smaller variable has positive exponent there
            return ia->first < ib->first ? false : true;
        }
        if (ia->second != ib->second) return ia->second < ib->second;
        ++ia;
        ++ib;
    }
    return ia == a.e_.end() && ib != b.e_.end();
}

std::string Monomial::str(const std::vector<std::string>& names) const {
    if (e_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [v, e] : e_) {
        if (!first) os << "*";
        first = false;
        if (v >= 0 && v < (int)names.size())
            os << names[v];
        else
            os << "v" << v;
        for (int i = 1; i < e; ++i) os << "*" << (v >= 0 && v < (int)names.size() ? names[v] : "v" + std::to_string(v));
    }
    return os.str();
}

Poly::Poly(const Rational& c) {
    if (!c.is_zero()) t_[Monomial()] = c;
}

Poly Poly::var(VarId v, int exp) { return term(Rational(1), Monomial::var(v, exp)); }

Poly Poly::term(const Rational& c, const Monomial& m) {
    Poly p;
    if (!c.is_zero()) p.t_[m] = c;
    return p;
}

Rational Poly::constant_value() const {
    if (is_zero()) return Rational(0);
    if (!is_constant()) throw InternalError("constant_value on non-constant poly");
    return t_.begin()->second;
}

Rational Poly::constant_term() const {
    auto it = t_.find(Monomial());
    return it == t_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
    int d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.degree());
    return d;
}

int Poly::degree_in(VarId v) const {
    int d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.degree_in(v));
    return d;
}

std::vector<VarId> Poly::variables() const {
    std::vector<VarId> vs;
    for (auto& [m, c] : t_)
        for (auto& [v, e] : m.exponents()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

std::optional<VarId> Poly::single_variable() const {
    auto vs = variables();
    if (vs.size() == 1) return vs[0];
    return std::nullopt;
}

Poly Poly::operator-() const {
    Poly r;
    for (auto& [m, c] : t_) r.t_[m] = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (auto& [ma, ca] : t_)
        for (auto& [mb, cb] : o.t_) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly Poly::scale(const Rational& c) const {
    Poly r;
    if (c.is_zero()) return r;
    for (auto& [m, k] : t_) r.t_[m] = k * c;
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(Rational(1)), base(*this);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Rational Poly::eval(const std::map<VarId, Rational>& point) const {
    Rational acc(0);
    for (auto& [m, c] : t_) {
        Rational v = c;
        for (auto& [var, e] : m.exponents()) {
            auto it = point.find(var);
            if (it == point.end()) throw InputError("eval: missing value for a variable");
            v *= it->second.pow((unsigned)e);
        }
        acc += v;
    }
    return acc;
}

Poly Poly::eval_partial(const std::map<VarId, Rational>& point) const {
    Poly r;
    for (auto& [m, c] : t_) {
        Rational v = c;
        Monomial rest;
        std::vector<std::pair<VarId, int>> keep;
        for (auto& [var, e] : m.exponents()) {
            auto it = point.find(var);
            if (it == point.end())
                keep.push_back({var, e});
            else
                v *= it->second.pow((unsigned)e);
        }
        r.add_term(Monomial(std::move(keep)), v);
    }
    return r;
}

Poly Poly::substitute(VarId v, const Poly& replacement) const {
    Poly r;
    for (auto& [m, c] : t_) {
        int e = m.degree_in(v);
        Poly piece = Poly::term(c, m.erase_var(v));
        if (e > 0) piece *= replacement.pow((unsigned)e);
        r += piece;
    }
    return r;
}

Poly Poly::derivative(VarId v) const {
    Poly r;
    for (auto& [m, c] : t_) {
        int e = m.degree_in(v);
        if (e == 0) continue;
        Monomial dm = m.erase_var(v);
        if (e > 1) dm = dm * Monomial::var(v, e - 1);
        r.add_term(dm, c * Rational(e));
    }
    return r;
}

std::pair<Monomial, Rational> Poly::leading() const {
    if (is_zero()) throw InternalError("leading term of zero poly");
    auto it = std::prev(t_.end());
    return {it->first, it->second};
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
    if (divisor.is_zero()) return std::nullopt;
    Poly rem(*this), quot;
    auto [dlm, dlc] = divisor.leading();
    while (!rem.is_zero()) {
        auto [rlm, rlc] = rem.leading();
        if (!dlm.divides(rlm)) return std::nullopt;
        Poly t = Poly::term(rlc / dlc, dlm.divide(rlm));
        quot += t;
        rem -= t * divisor;
    }
    return quot;
}

Rational Poly::content() const {
    if (is_zero()) return Rational(0);
    Int num_gcd = 0, den_lcm = 1;
    for (auto& [m, c] : t_) {
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(c.numerator()));
        den_lcm = boost::multiprecision::lcm(den_lcm, c.denominator());
    }
    return Rational(num_gcd, den_lcm);
}

Monomial Poly::monomial_gcd() const {
    if (is_zero()) return Monomial();
    auto it = t_.begin();
    Monomial g = it->first;
    for (++it; it != t_.end(); ++it) {
        std::vector<std::pair<VarId, int>> e;
        for (auto& [v, k] : g.exponents()) {
            int other = it->first.degree_in(v);
            if (std::min(other, k) > 0) e.push_back({v, std::min(other, k)});
        }
        g = Monomial(std::move(e));
        if (g.is_one()) break;
    }
    return g;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest terms first
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const Rational& c = it->second;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        Rational a = c.abs();
        if (it->first.is_one())
            os << a.str();
        else if (a == Rational(1))
            os << it->first.str(names);
        else
            os << a.str() << "*" << it->first.str(names);
    }
    return os.str();
}

std::vector<Rational> to_univariate(const Poly& p, VarId v) {
    std::vector<Rational> c(p.degree_in(v) + 1, Rational(0));
    for (auto& [m, k] : p.terms()) {
        if (m.degree() != m.degree_in(v)) throw InputError("poly is not univariate in the given variable");
        c[m.degree_in(v)] += k;
    }
    while (c.size() > 1 && c.back().is_zero()) c.pop_back();
    return c;
}

Poly from_univariate(const std::vector<Rational>& coeffs, VarId v) {
    Poly p;
    for (size_t i = 0; i < coeffs.size(); ++i) p.add_term(Monomial::var(v, (int)i), coeffs[i]);
    return p;
}

} // namespace csl
