#pragma once

/*
 * The chart/form description language.
 *
 *   # comment
 *   chart <name> [sphere]
 *   vars v1 v2 ...
 *   relation v1^2 + ... + vk^2 = 1
 *   angle <gen> sin <svar> cos <cvar> [factor <n>]
 *   gen <name> [with d(<name>) = <form-expr>]
 *   form <name> = <form-expr>
 *   hint pairing v1 v2 ...
 *   hint assumed <poly-expr> in <lo> <hi>
 *   expect <property> <verdict>
 *
 * Form expressions use + - * ^ d( ) with '^' the wedge product, exact
 * rational literals p/q, variables, and d<var> differentials; unary d binds
 * tightest, then '*', then '^', then '+'/'-'. wpow(e, n) is the n-fold
 * wedge power. Declarations must precede the forms that use them; names
 * may not begin with 'd'.
 */

#include <string>
#include <vector>

#include "csl/certificate.hpp"
#include "csl/form.hpp"

namespace csl {

struct SpecParseError : InputError {
    SpecParseError(const std::string& msg, int line, int col)
        : InputError(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line(line), col(col) {}
    int line, col;
};

struct SpecFile {
    std::string chart_name;
    bool sphere = false;
    ChartPtr chart;
    std::vector<std::pair<std::string, DiffForm>> forms;  // declaration order
    std::vector<BoundHint> hints;
    std::vector<VarId> lambda_pairing;
    std::vector<std::pair<std::string, std::string>> expectations;

    // structural declarations, kept for printing
    std::vector<std::string> plain_vars;
    std::vector<std::vector<std::string>> relations;
    struct AngleDecl {
        std::string gen, sin_var, cos_var;
        int factor = 1;
    };
    std::vector<AngleDecl> angles;
    struct GenDecl {
        std::string name;
        bool has_diff = false;
    };
    std::vector<GenDecl> gen_decls;

    const DiffForm* find_form(const std::string& name) const;
};

SpecFile parse_spec(const std::string& text);
std::string print_spec(const SpecFile& s);

// canonical, re-parseable renderings
std::string render_poly(const Poly& p, const ChartPtr& chart);
std::string render_form(const DiffForm& f);

bool charts_structurally_equal(const ChartPtr& a, const ChartPtr& b);
bool specs_structurally_equal(const SpecFile& a, const SpecFile& b);

} // namespace csl
