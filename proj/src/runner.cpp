#include "csl/runner.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "csl/constructions.hpp"
#include "csl/specfile.hpp"

namespace csl {

namespace {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r) { return r.str(); }

Json point_json(const ChartPtr& ch, const std::map<VarId, Rational>& pt) {
    Json j = Json::object();
    for (auto& [v, x] : pt) j[ch->vars[v]] = x.str();
    return j;
}

Json cert_json(const Certificate& c, const ChartPtr& chart) {
    Json j;
    j["status"] = c.status_str();
    j["method"] = c.method;
    if (c.status == CertStatus::CertifiedConstant) j["value"] = c.constant_value.str();
    if (c.status == CertStatus::CertifiedSign) {
        j["sign"] = c.sign;
        j["conditional"] = c.conditional;
        if (c.method == "coefficient-bound") {
            j["bound_constant"] = c.bound_constant.str();
            j["bound_noise"] = c.bound_noise.str();
        }
    }
    if (c.status == CertStatus::Refuted) {
        if (!c.witness_point.empty()) j["witness_point"] = point_json(chart, c.witness_point);
        if (c.witness_interval) {
            j["witness_interval"] = {{"lo", c.witness_interval->lo.str()},
                                     {"hi", c.witness_interval->hi.str()},
                                     {"value_lo", c.witness_interval->value_lo.str()},
                                     {"value_hi", c.witness_interval->value_hi.str()},
                                     {"variable", c.witness_interval->variable}};
        }
    }
    if (c.status == CertStatus::NumericUnrefuted) {
        j["samples"] = c.samples;
        j["min_abs"] = c.min_abs.str();
    }
    j["trace"] = c.trace;
    return j;
}

int cert_exit(const Certificate& c) {
    switch (c.status) {
        case CertStatus::CertifiedConstant: return 0;
        case CertStatus::CertifiedSign: return c.conditional ? 2 : 0;
        case CertStatus::Refuted: return 1;
        case CertStatus::NumericUnrefuted: return 2;
    }
    return 2;
}

std::string cert_text(const Certificate& c) {
    std::string s = c.status_str();
    if (c.status == CertStatus::CertifiedConstant) s += "(" + c.constant_value.str() + ")";
    if (c.status == CertStatus::CertifiedSign && c.method == "coefficient-bound")
        s += " [|noise| " + c.bound_noise.str() + " < |" + c.bound_constant.str() + "|]";
    if (c.status == CertStatus::NumericUnrefuted)
        s += " [" + std::to_string(c.samples) + " samples, min " + c.min_abs.str() + "]";
    return s;
}

PSphereSpec spec_from_file(const SpecFile& sf) {
    PSphereSpec spec;
    spec.chart = sf.chart;
    for (auto& [name, f] : sf.forms)
        if (!f.is_zero() && f.degree() == 1) spec.generators.push_back(f);
    spec.lambda_pairing = sf.lambda_pairing;
    spec.hints = sf.hints;
    if (spec.generators.empty()) throw InputError("the file declares no 1-forms");
    return spec;
}

SpecFile load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

struct Ctx {
    Json checks = Json::array();
    std::ostringstream text;
    int exit_code = 0;

    void worsen(int code) {
        // severity: 3 (input) > 1 (refuted) > 2 (inconclusive) > 0
        auto rank = [](int c) { return c == 3 ? 3 : c == 1 ? 2 : c == 2 ? 1 : 0; };
        if (rank(code) > rank(exit_code)) exit_code = code;
    }
};

void run_taut(Ctx& ctx, const PSphereSpec& spec, const std::string& target) {
    auto rep = taut_check(spec);
    Json j;
    j["name"] = "taut";
    j["target"] = target;
    j["verdict"] = rep.taut;
    j["lambda_free_part"] = render_poly(rep.lambda_free_part, rep.chart);
    j["residual"] = render_poly(rep.residual, rep.chart);
    if (rep.dim3_cross_check) j["dim3_cross_check"] = *rep.dim3_cross_check;
    ctx.checks.push_back(j);
    ctx.text << "taut " << target << ": " << (rep.taut ? "taut" : "not taut") << "\n";
    ctx.worsen(rep.taut ? 0 : 1);
}

void run_round(Ctx& ctx, const PSphereSpec& spec, const std::string& target) {
    auto rep = round_check(spec);
    Json j;
    j["name"] = "round";
    j["target"] = target;
    j["verdict"] = rep.round;
    bool conclusive = true;
    Json residues = Json::array();
    for (auto& [ij, p] : rep.cond_i_residues) {
        if (p.is_zero()) continue;
        residues.push_back({{"condition", "i"},
                            {"pair", {ij.first, ij.second}},
                            {"residue", render_poly(p, spec.chart)}});
    }
    for (auto& [ij, r] : rep.cond_ii_residues) {
        if (r.equal) continue;
        conclusive = conclusive && r.conclusive;
        residues.push_back({{"condition", "ii"},
                            {"pair", {ij.first, ij.second}},
                            {"residue", r.residue.str()},
                            {"conclusive", r.conclusive}});
    }
    j["failures"] = residues;
    if (rep.first_failure)
        j["first_failure"] = {{"pair", {rep.first_failure->first, rep.first_failure->second}},
                              {"condition", rep.first_failure_condition}};
    ctx.checks.push_back(j);
    ctx.text << "round " << target << ": " << (rep.round ? "round" : "not round") << "\n";
    ctx.worsen(rep.round ? 0 : (conclusive ? 1 : 2));
}

void run_psphere(Ctx& ctx, const PSphereSpec& spec, const std::string& target, const CheckOptions& opts) {
    auto cert = psphere_check(spec, opts);
    Json j;
    j["name"] = "psphere";
    j["target"] = target;
    j["certificate"] = cert_json(cert, spec.chart);
    ctx.checks.push_back(j);
    ctx.text << "psphere " << target << ": " << cert_text(cert) << "\n";
    ctx.worsen(cert_exit(cert));
}

void run_verify_entry(Ctx& ctx, const ExampleEntry& e, const CheckOptions& opts) {
    Json j;
    j["name"] = "verify";
    j["target"] = e.name;
    j["description"] = e.description;
    bool all_match = true;
    bool inconclusive = false;

    auto cert = psphere_check(e.spec, opts);
    j["certificate"] = cert_json(cert, e.spec.chart);
    bool cert_ok;
    if (!e.expect_certified) {
        cert_ok = cert.status == CertStatus::Refuted;
    } else if (e.expect_constant) {
        cert_ok = cert.status == CertStatus::CertifiedConstant && cert.constant_value == *e.expect_constant;
    } else if (e.expect_sign) {
        cert_ok = cert.status == CertStatus::CertifiedSign && cert.sign == *e.expect_sign && !cert.conditional;
    } else {
        cert_ok = cert.certified();
    }
    if (cert.status == CertStatus::NumericUnrefuted) inconclusive = true;
    j["family_check"] = cert_ok ? "as-expected" : "MISMATCH";
    all_match = all_match && cert_ok;

    if (e.expect_taut) {
        auto t = taut_check(e.spec);
        bool ok = t.taut == *e.expect_taut;
        j["taut"] = {{"verdict", t.taut}, {"expected", *e.expect_taut}, {"match", ok}};
        all_match = all_match && ok;
    }
    if (e.expect_round) {
        auto r = round_check(e.spec);
        bool ok = r.round == *e.expect_round;
        j["round"] = {{"verdict", r.round}, {"expected", *e.expect_round}, {"match", ok}};
        all_match = all_match && ok;
    }
    j["verified"] = all_match;
    ctx.checks.push_back(j);
    ctx.text << "verify " << e.name << ": " << (all_match ? "ok" : "MISMATCH") << " ("
             << cert_text(cert) << ")\n";
    if (!all_match)
        ctx.worsen(inconclusive ? 2 : 1);
}

RunResult finish(const std::string& command, Ctx& ctx, std::chrono::steady_clock::time_point t0) {
    Json root;
    root["command"] = command;
    root["checks"] = ctx.checks;
    root["exit"] = ctx.exit_code;
    root["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    RunResult res;
    res.exit_code = ctx.exit_code;
    res.json = root.dump(2);
    res.text = ctx.text.str();
    return res;
}

} // namespace

RunResult run(const std::vector<std::string>& args_in) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> args;
    for (auto& a : args_in)
        if (a != "--json") args.push_back(a);

    Ctx ctx;
    std::string command;
    for (size_t i = 0; i < args.size(); ++i) command += (i ? " " : "") + args[i];

    try {
        if (args.empty()) throw InputError("usage: csl <catalog|verify|check|reeb|rho|hr|obstruct|scan> ...");
        const std::string& cmd = args[0];
        CheckOptions opts;

        if (cmd == "catalog") {
            for (auto& e : example_catalog()) {
                Json j;
                j["name"] = e.name;
                j["description"] = e.description;
                j["generators"] = (int)e.spec.generators.size();
                if (e.expect_constant) j["expect_constant"] = e.expect_constant->str();
                if (e.expect_sign) j["expect_sign"] = *e.expect_sign;
                j["expect_certified"] = e.expect_certified;
                if (e.expect_taut) j["expect_taut"] = *e.expect_taut;
                if (e.expect_round) j["expect_round"] = *e.expect_round;
                ctx.checks.push_back(j);
                ctx.text << e.name << ": " << e.description << "\n";
            }
            ctx.exit_code = 0;
        } else if (cmd == "verify") {
            if (args.size() < 2) throw InputError("verify <example-name>|--all");
            if (args[1] == "--all") {
                for (auto& e : example_catalog()) run_verify_entry(ctx, e, opts);
            } else {
                const ExampleEntry* e = find_example(args[1]);
                if (!e) throw InputError("no catalog entry named '" + args[1] + "'");
                run_verify_entry(ctx, *e, opts);
            }
        } else if (cmd == "check") {
            if (args.size() < 2) throw InputError("check <file> --property <p>");
            std::string property = "psphere";
            for (size_t i = 2; i + 1 < args.size() + 1; ++i)
                if (args[i] == "--property" && i + 1 < args.size()) property = args[i + 1];
            SpecFile sf = load_spec(args[1]);
            PSphereSpec spec = spec_from_file(sf);
            if (property == "contact") {
                int idx = 0;
                for (auto& [name, f] : sf.forms) {
                    if (f.is_zero() || f.degree() != 1) continue;
                    ++idx;
                    auto vol = volume_coefficient(f);
                    auto cert = nonvanishing_certificate(vol.coefficient, sf.chart, sf.hints, opts);
                    Json j;
                    j["name"] = "contact";
                    j["target"] = name;
                    j["volume_coefficient"] = render_poly(vol.coefficient, sf.chart);
                    j["reference"] = vol.reference_str(sf.chart);
                    j["certificate"] = cert_json(cert, sf.chart);
                    ctx.checks.push_back(j);
                    ctx.text << "contact " << name << ": " << cert_text(cert) << "\n";
                    ctx.worsen(cert_exit(cert));
                }
                if (!idx) throw InputError("no 1-forms to check");
            } else if (property == "psphere") {
                run_psphere(ctx, spec, args[1], opts);
            } else if (property == "taut") {
                run_taut(ctx, spec, args[1]);
            } else if (property == "round") {
                run_round(ctx, spec, args[1]);
            } else if (property == "reeb-indep") {
                auto rep = reeb_independence_check(spec, opts);
                Json j;
                j["name"] = "reeb-indep";
                j["minor_sum"] = render_poly(rep.minor_sum, spec.chart);
                j["certificate"] = cert_json(rep.minor_certificate, spec.chart);
                j["verdict"] = rep.independent ? "independent" : (rep.dependent ? "dependent" : "inconclusive");
                ctx.checks.push_back(j);
                ctx.text << "reeb-indep: " << j["verdict"].get<std::string>() << "\n";
                ctx.worsen(rep.independent ? 0 : (rep.dependent ? 1 : 2));
            } else {
                throw InputError("unknown property '" + property + "'");
            }
        } else if (cmd == "reeb") {
            if (args.size() < 2) throw InputError("reeb <file> --form <name>");
            std::string form_name;
            for (size_t i = 2; i + 1 < args.size(); ++i)
                if (args[i] == "--form") form_name = args[i + 1];
            SpecFile sf = load_spec(args[1]);
            const DiffForm* f = form_name.empty()
                                    ? (sf.forms.empty() ? nullptr : &sf.forms[0].second)
                                    : sf.find_form(form_name);
            if (!f) throw InputError("no such form in the file");
            try {
                ReebField R = reeb_field(*f);
                Json j;
                j["name"] = "reeb";
                j["form"] = form_name.empty() ? sf.forms[0].first : form_name;
                Json comps = Json::object();
                for (auto& [g, p] : R.numerator.coefficients())
                    comps[sf.chart->gens[g].name] = render_poly(p, sf.chart);
                j["field"] = comps;
                j["denominator"] = render_poly(R.denominator, sf.chart);
                if (R.multiplier) j["multiplier"] = render_poly(*R.multiplier, sf.chart);
                j["route"] = R.route;
                ctx.checks.push_back(j);
                ctx.text << "reeb: denominator " << render_poly(R.denominator, sf.chart) << ", route "
                         << R.route << "\n";
                ctx.exit_code = 0;
            } catch (const NotContact& e) {
                Json j;
                j["name"] = "reeb";
                j["error"] = e.what();
                ctx.checks.push_back(j);
                ctx.text << "reeb: " << e.what() << "\n";
                ctx.exit_code = 1;
            }
        } else if (cmd == "rho") {
            if (args.size() < 2) throw InputError("rho <n>");
            long long n = std::stoll(args[1]);
            int r = rho(n);
            Json j;
            j["name"] = "rho";
            j["n"] = n;
            j["value"] = r;
            ctx.checks.push_back(j);
            ctx.text << r << "\n";
            ctx.exit_code = 0;
        } else if (cmd == "hr") {
            if (args.size() < 2) throw InputError("hr <m> [--emit <path>]");
            int m = std::stoi(args[1]);
            auto fam = hurwitz_radon_family(m);
            Json j;
            j["name"] = "hr";
            j["m"] = m;
            j["count"] = fam.count();
            j["validated"] = true;
            std::string emit;
            for (size_t i = 2; i + 1 < args.size(); ++i)
                if (args[i] == "--emit") emit = args[i + 1];
            if (!emit.empty()) {
                std::ofstream out(emit);
                if (!out) throw InputError("cannot write " + emit);
                out << family_to_json(fam) << "\n";
                j["emitted"] = emit;
            }
            ctx.checks.push_back(j);
            ctx.text << "family m=" << m << ": " << fam.count()
                     << " matrices, all invariants verified\n";
            ctx.exit_code = 0;
        } else if (cmd == "obstruct") {
            if (args.size() < 2) throw InputError("obstruct <file>");
            SpecFile sf = load_spec(args[1]);
            PSphereSpec spec = spec_from_file(sf);
            if (spec.generators.size() < 2) throw InputError("obstruction needs two 1-forms");
            spec.generators.resize(2);
            auto rep = odd_dim_obstruction(spec);
            Json j;
            j["name"] = "obstruct";
            j["point"] = point_json(sf.chart, rep.point);
            j["circle_poly"] = render_poly(rep.circle_poly, rep.circle_chart);
            j["all_odd_degrees"] = rep.all_odd;
            if (rep.zero) {
                j["zero_interval"] = {{"lo", rep.zero->lo.str()},
                                      {"hi", rep.zero->hi.str()},
                                      {"value_lo", rep.zero->value_lo.str()},
                                      {"value_hi", rep.zero->value_hi.str()}};
            }
            if (rep.exact_zero_cs)
                j["exact_zero"] = {{"c", rep.exact_zero_cs->first.str()},
                                   {"s", rep.exact_zero_cs->second.str()}};
            j["refutes_contact_circle"] = rep.refutes;
            j["note"] = rep.note;
            ctx.checks.push_back(j);
            ctx.text << "obstruct: " << rep.note << "\n";
            ctx.exit_code = rep.refutes ? 1 : 2;
        } else if (cmd == "scan") {
            if (args.size() < 2) throw InputError("scan <file> [--density N]");
            int density = 100;
            for (size_t i = 2; i + 1 < args.size(); ++i)
                if (args[i] == "--density") density = std::stoi(args[i + 1]);
            SpecFile sf = load_spec(args[1]);
            std::vector<Poly> funcs;
            for (auto& [name, f] : sf.forms)
                if (f.is_zero() || f.max_degree() == 0) funcs.push_back(f.component({}));
            auto rep = invariant_nondegeneracy_scan(funcs, sf.chart, density);
            Json j;
            j["name"] = "scan";
            j["points_scanned"] = rep.points_scanned;
            j["minimum"] = rep.minimum.str();
            j["argmin_point"] = point_json(sf.chart, rep.argmin_point);
            Json lam = Json::array();
            for (auto& l : rep.argmin_lambda) lam.push_back(l.str());
            j["argmin_lambda"] = lam;
            j["zero_found"] = rep.zero_found;
            if (rep.zero_found) {
                j["zero_point"] = point_json(sf.chart, rep.zero_point);
                Json dir = Json::array();
                for (auto& l : rep.zero_direction) dir.push_back(l.str());
                j["zero_direction"] = dir;
            }
            ctx.checks.push_back(j);
            ctx.text << "scan: min " << rep.minimum.str() << (rep.zero_found ? " (ZERO FOUND)" : "")
                     << "\n";
            ctx.exit_code = rep.zero_found ? 1 : 2;
        } else {
            throw InputError("unknown command '" + cmd + "'");
        }
    } catch (const InputError& e) {
        Json j;
        j["error"] = e.what();
        ctx.checks.push_back(j);
        ctx.text << "error: " << e.what() << "\n";
        ctx.exit_code = 3;
    } catch (const NotContact& e) {
        Json j;
        j["error"] = e.what();
        j["kind"] = "not-contact";
        ctx.checks.push_back(j);
        ctx.text << "refuted: " << e.what() << "\n";
        ctx.exit_code = 1;
    }

    return finish(command, ctx, t0);
}

} // namespace csl
