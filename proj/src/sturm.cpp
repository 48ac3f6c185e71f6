#include "csl/sturm.hpp"

#include "csl/errors.hpp"

namespace csl {

using UniPoly = std::vector<Rational>;

static void trim(UniPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Rational eval_univariate(const UniPoly& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

static UniPoly derivative(const UniPoly& p) {
    UniPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational((int)i));
    trim(d);
    return d;
}

static UniPoly remainder(UniPoly a, const UniPoly& b) {
    // polynomial remainder of a by b; the leading term of a cancels each
    // round, so the loop strictly shrinks a
    while (!a.empty() && a.size() >= b.size()) {
        Rational q = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
        trim(a);
    }
    return a;
}

static std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain;
    chain.push_back(p);
    UniPoly d = derivative(p);
    if (d.empty()) return chain;
    chain.push_back(d);
    while (true) {
        UniPoly r = remainder(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(r);
    }
    return chain;
}

static int variations(const std::vector<UniPoly>& chain, const Rational& x) {
    int var = 0, last = 0;
    for (auto& q : chain) {
        int s = eval_univariate(q, x).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

int sturm_root_count(const UniPoly& p, const Rational& lo, const Rational& hi) {
    auto chain = sturm_chain(p);
    return variations(chain, lo) - variations(chain, hi);
}

SturmResult sturm_sign_on_interval(const UniPoly& p_in, const Rational& lo, const Rational& hi) {
    UniPoly p = p_in;
    trim(p);
    if (p.empty()) throw ZeroPolynomial();
    if (lo >= hi) throw InputError("sturm: need lo < hi");

    SturmResult res;
    Rational vlo = eval_univariate(p, lo), vhi = eval_univariate(p, hi);
    if (vlo.is_zero() || vhi.is_zero()) {
        res.verdict = SturmVerdict::HasZero;
        res.lo = res.hi = vlo.is_zero() ? lo : hi;
        res.value_lo = res.value_hi = Rational(0);
        res.root_count = 1;
        res.note = "exact zero at an interval endpoint";
        return res;
    }
    if (p.size() == 1) {
        res.verdict = p[0].sign() > 0 ? SturmVerdict::StrictlyPositive : SturmVerdict::StrictlyNegative;
        return res;
    }

    auto chain = sturm_chain(p);
    int count = variations(chain, lo) - variations(chain, hi);
    if (count == 0) {
        if (vlo.sign() != vhi.sign()) throw InternalError("sturm: zero count with a sign change");
        res.verdict = vlo.sign() > 0 ? SturmVerdict::StrictlyPositive : SturmVerdict::StrictlyNegative;
        return res;
    }

    // isolate one root by bisection, keeping a positive variation count
    Rational a = lo, b = hi;
    Rational width_limit = (hi - lo) / Rational(Int(1) << 30);
    int count_ab = count;
    while (b - a > width_limit) {
        Rational m = (a + b) / Rational(2);
        Rational vm = eval_univariate(p, m);
        if (vm.is_zero()) {
            res.verdict = SturmVerdict::HasZero;
            res.lo = res.hi = m;
            res.value_lo = res.value_hi = Rational(0);
            res.root_count = count;
            res.note = "exact rational zero found by bisection";
            return res;
        }
        int left = variations(chain, a) - variations(chain, m);
        if (left >= 1) {
            b = m;
            count_ab = left;
        } else {
            a = m;
            count_ab -= left;
        }
    }
    res.verdict = SturmVerdict::HasZero;
    res.lo = a;
    res.hi = b;
    res.value_lo = eval_univariate(p, a);
    res.value_hi = eval_univariate(p, b);
    res.root_count = count;
    res.note = "isolating interval with Sturm variation count " + std::to_string(count_ab);
    return res;
}

SturmResult sturm_sign_on_interval(const Poly& p, VarId v, const Rational& lo, const Rational& hi) {
    return sturm_sign_on_interval(to_univariate(p, v), lo, hi);
}

} // namespace csl
