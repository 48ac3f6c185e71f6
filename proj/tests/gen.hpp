#pragma once

// deterministic random generators for the property suites

#include <random>

#include "csl/chart.hpp"
#include "csl/form.hpp"

namespace cslt {

using namespace csl;

using Rng = std::mt19937_64;

inline Rational rand_rational(Rng& rng, int max_num = 6, int max_den = 4) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(Int(num(rng)), Int(den(rng)));
}

inline Poly rand_poly(Rng& rng, int nvars, int max_deg = 3, int max_terms = 5) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> var(0, nvars - 1);
    std::uniform_int_distribution<int> deg(0, max_deg);
    Poly p;
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        Monomial m;
        int d = deg(rng);
        for (int i = 0; i < d; ++i) m = m * Monomial::var(var(rng));
        p.add_term(m, rand_rational(rng));
    }
    return p;
}

// chart with a few plain coordinates, one optional relation group over two
// extra coordinates, and one optional closed-differential abstract generator
inline ChartPtr rand_chart(Rng& rng) {
    std::uniform_int_distribution<int> nv(2, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    ChartBuilder b("rand");
    int n = nv(rng);
    std::vector<VarId> ids;
    for (int i = 0; i < n; ++i) ids.push_back(b.add_var("x" + std::to_string(i + 1)));
    bool grouped = coin(rng);
    if (grouped) {
        VarId s = b.add_var("s");
        VarId c = b.add_var("c");
        b.add_group({s, c});
    }
    if (coin(rng)) {
        // abstract generator with an exact (hence closed) declared
        // differential d(p dx1 + q dx2)
        Poly p = rand_poly(rng, n, 2, 3);
        Poly q = rand_poly(rng, n, 2, 3);
        FormData d2;
        auto add_pair = [&](int a, int bidx, Poly coeff) {
            if (a == bidx || coeff.is_zero()) return;
            GenTuple t{std::min(a, bidx), std::max(a, bidx)};
            Poly cc = a < bidx ? coeff : -coeff;
            auto [it, fresh] = d2.try_emplace(t, cc);
            if (!fresh) it->second += cc;
        };
        for (int v = 0; v < n; ++v) add_pair(v, 0, p.derivative(v));
        for (int v = 0; v < n; ++v) add_pair(v, 1, q.derivative(v));
        for (auto it = d2.begin(); it != d2.end();)
            it = it->second.is_zero() ? d2.erase(it) : std::next(it);
        b.add_abstract_gen("a", std::move(d2));
    }
    return b.build();
}

inline DiffForm rand_form(Rng& rng, const ChartPtr& ch, int degree, int max_terms = 4) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> gen(0, ch->ngens() - 1);
    for (int attempt = 0; attempt < 32; ++attempt) {
        FormData d;
        int k = nterms(rng);
        for (int t = 0; t < k; ++t) {
            GenTuple tup;
            while ((int)tup.size() < degree) {
                int g = gen(rng);
                bool dup = false;
                for (int x : tup) dup = dup || x == g;
                if (!dup) tup.push_back(g);
            }
            std::sort(tup.begin(), tup.end());
            Poly coeff = rand_poly(rng, ch->nvars(), 2, 3);
            auto [it, fresh] = d.try_emplace(tup, coeff);
            if (!fresh) it->second += coeff;
        }
        for (auto it = d.begin(); it != d.end();)
            it = it->second.is_zero() ? d.erase(it) : std::next(it);
        DiffForm f = DiffForm::from_components(ch, std::move(d));
        if (!f.is_zero()) return f;
    }
    // give up on randomness, return a plain generator product
    FormData d;
    GenTuple tup;
    for (int i = 0; i < degree; ++i) tup.push_back(i);
    d[tup] = Poly(Rational(1));
    return DiffForm::from_components(ch, std::move(d));
}

} // namespace cslt
