#include "csl/linsolve.hpp"

#include "csl/errors.hpp"

namespace csl {

PolyFraction PolyFraction::reduced() const {
    if (num.is_zero()) return {Poly(), Poly(Rational(1))};
    Poly n = num, d = den;
    // strip common monomial factor
    Monomial gn = n.monomial_gcd(), gd = d.monomial_gcd();
    Monomial g;
    {
        std::vector<std::pair<VarId, int>> e;
        for (auto& [v, k] : gn.exponents()) {
            int other = gd.degree_in(v);
            if (std::min(k, other) > 0) e.push_back({v, std::min(k, other)});
        }
        g = Monomial(std::move(e));
    }
    if (!g.is_one()) {
        Poly divisor = Poly::term(Rational(1), g);
        n = *n.divide_exact(divisor);
        d = *d.divide_exact(divisor);
    }
    // full cancellation when one divides the other
    if (auto q = d.divide_exact(n); q && !q->is_zero()) {
        // n/d = 1/q
        n = Poly(Rational(1));
        d = *q;
    } else if (auto q2 = n.divide_exact(d); q2) {
        n = *q2;
        d = Poly(Rational(1));
    }
    // normalize rational content so den is primitive with positive lead
    Rational cd = d.content();
    if (d.leading().second.sign() < 0) cd = -cd;
    n = n.scale(Rational(1) / cd);
    d = d.scale(Rational(1) / cd);
    return {n, d};
}

PolyFraction PolyFraction::operator+(const PolyFraction& o) const {
    return PolyFraction{num * o.den + o.num * den, den * o.den}.reduced();
}
PolyFraction PolyFraction::operator-(const PolyFraction& o) const {
    return PolyFraction{num * o.den - o.num * den, den * o.den}.reduced();
}
PolyFraction PolyFraction::operator*(const PolyFraction& o) const {
    return PolyFraction{num * o.num, den * o.den}.reduced();
}

Poly bareiss_determinant(PolyMatrix m) {
    size_t n = m.size();
    for (auto& row : m)
        if (row.size() != n) throw InputError("determinant of a non-square matrix");
    if (n == 0) return Poly(Rational(1));

    int sign = 1;
    Poly prev(Rational(1));
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return Poly();  // singular
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Poly numer = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = numer.divide_exact(prev);
                if (!q) throw InternalError("bareiss: inexact division");
                m[i][j] = *q;
            }
            m[i][k] = Poly();
        }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

std::vector<PolyFraction> solve_linear(const PolyMatrix& M, const std::vector<Poly>& b) {
    size_t n = M.size();
    if (b.size() != n) throw InputError("solve_linear: dimension mismatch");
    for (auto& row : M)
        if (row.size() != n) throw InputError("solve_linear: matrix not square");

    Poly det = bareiss_determinant(M);
    if (det.is_zero()) throw SingularSystem(det);

    std::vector<PolyFraction> x(n);
    for (size_t j = 0; j < n; ++j) {
        PolyMatrix mj = M;
        for (size_t i = 0; i < n; ++i) mj[i][j] = b[i];
        x[j] = PolyFraction{bareiss_determinant(std::move(mj)), det}.reduced();
    }

    // substitution self-check: M x == b exactly over the fraction field
    for (size_t i = 0; i < n; ++i) {
        PolyFraction acc{Poly(), Poly(Rational(1))};
        for (size_t j = 0; j < n; ++j) acc = acc + PolyFraction{M[i][j], Poly(Rational(1))} * x[j];
        if (!(acc == PolyFraction{b[i], Poly(Rational(1))}))
            throw InternalError("solve_linear: substitution check failed");
    }
    return x;
}

std::optional<RationalSolution> solve_rational_full(RatMatrix A, std::vector<Rational> b) {
    size_t rows = A.size();
    size_t cols = rows ? A[0].size() : 0;
    if (b.size() != rows) throw InputError("solve_rational: dimension mismatch");

    std::vector<int> pivot_col_of_row;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && A[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(A[sel], A[r]);
        std::swap(b[sel], b[r]);
        Rational inv = Rational(1) / A[r][c];
        for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            Rational f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col_of_row.push_back((int)c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;

    RationalSolution sol;
    sol.x.assign(cols, Rational(0));
    sol.pivot.assign(cols, false);
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i) {
        sol.x[pivot_col_of_row[i]] = b[i];
        sol.pivot[pivot_col_of_row[i]] = true;
    }
    return sol;
}

std::optional<std::vector<Rational>> solve_rational(RatMatrix A, std::vector<Rational> b) {
    auto sol = solve_rational_full(std::move(A), std::move(b));
    if (!sol) return std::nullopt;
    return std::move(sol->x);
}

} // namespace csl
