// gcs command line: moments, recurrence/connection coefficients, polynomial
// dumps, verification suite, asymptotics certification and the
// Laguerre-Freud digit-loss bench. All numeric output is arbitrary-precision
// decimal; JSON reports are deterministic for a fixed configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gcs/gcs.hpp"

namespace {

struct CommonOpts {
    std::string b = "0.5";
    std::string z = "1";
    std::string lambda = "1";
    long precision = 512;
    long guard = 64;
    std::size_t n = 20;
    std::string format = "json";
    std::string out;
    unsigned threads = std::thread::hardware_concurrency() ? std::thread::hardware_concurrency() : 1;
};

gcs::PrecisionPolicy make_policy(const CommonOpts& o) {
    long guard = o.guard;
    if (guard >= o.precision) guard = o.precision / 8 > 0 ? o.precision / 8 : 1;
    return gcs::PrecisionPolicy(o.precision, guard);
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_json(const CommonOpts& o, const gcs::Json& j) {
    Output out(o.out);
    out.stream() << j.dump(2) << "\n";
}

int fail_params(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
}

// ------------------------------------------------------------------ moments

int cmd_moments(const CommonOpts& o, bool with_matrices) {
    gcs::PrecisionPolicy policy = make_policy(o);
    gcs::Params params = gcs::Params::from_strings(o.b, o.z, o.lambda, policy);
    const int digits = gcs::output_digits(policy.working_bits);
    gcs::MomentTable table = gcs::MomentTable::build(params, o.n, policy);

    if (o.format == "csv") {
        Output out(o.out);
        gcs::CsvWriter csv(out.stream());
        if (!with_matrices) {
            csv.row({"n", "nu"});
            for (std::size_t n = 0; n <= o.n; ++n)
                csv.row({std::to_string(n), gcs::real_str(table.nu[n], digits)});
        } else {
            csv.row({"kind", "i", "j", "value"});
            for (std::size_t n = 0; n <= o.n; ++n)
                csv.row({"nu", std::to_string(n), "", gcs::real_str(table.nu[n], digits)});
            for (std::size_t i = 0; i <= o.n; ++i)
                for (std::size_t j = 0; j <= o.n; ++j) {
                    csv.row({"nu2", std::to_string(i), std::to_string(j),
                             gcs::real_str(table.nu2.at(i, j), digits)});
                }
            for (std::size_t i = 0; i <= o.n; ++i)
                for (std::size_t j = 0; j <= o.n; ++j) {
                    csv.row({"mu2", std::to_string(i), std::to_string(j),
                             gcs::real_str(table.mu2.at(i, j), digits)});
                }
        }
        return 0;
    }

    gcs::Json tables;
    gcs::Json nu = gcs::Json::array();
    for (std::size_t n = 0; n <= o.n; ++n) nu.push_back(gcs::real_str(table.nu[n], digits));
    tables["nu"] = std::move(nu);
    if (with_matrices) {
        auto matrix_json = [&](const gcs::Matrix& m) {
            gcs::Json rows = gcs::Json::array();
            for (std::size_t i = 0; i <= o.n; ++i) {
                gcs::Json row = gcs::Json::array();
                for (std::size_t j = 0; j <= o.n; ++j)
                    row.push_back(gcs::real_str(m.at(i, j), digits));
                rows.push_back(std::move(row));
            }
            return rows;
        };
        tables["nu_gram"] = matrix_json(table.nu2);
        tables["mu_gram"] = matrix_json(table.mu2);
    }
    emit_json(o, gcs::report_json(params, policy, {}, std::move(tables)));
    return 0;
}

// ------------------------------------------------------------------- coeffs

int cmd_coeffs(const CommonOpts& o, const std::string& route) {
    gcs::PrecisionPolicy policy = make_policy(o);
    gcs::Params params = gcs::Params::from_strings(o.b, o.z, o.lambda, policy);
    const int digits = gcs::output_digits(policy.working_bits);

    gcs::MomentTable table = gcs::MomentTable::build(params, o.n + 2, policy);
    gcs::CharlierBuild ch = gcs::build_pn_gram(o.n, table);
    gcs::SobolevSet sob = gcs::build_sn(o.n, table, ch.seqs.h);

    bool lf_diverged = false;
    std::string lf_note;
    gcs::CoeffSequences lf;
    if (route != "gram") {
        try {
            lf = gcs::build_coeffs_laguerre_freud(o.n, params, ch.seqs.beta[0], ch.seqs.gamma[1],
                                                  policy);
        } catch (const gcs::DivergedFromOracle& e) {
            lf_diverged = true;
            lf_note = e.what();
            lf = gcs::build_coeffs_laguerre_freud(e.index - 1, params, ch.seqs.beta[0],
                                                  ch.seqs.gamma[1], policy);
        }
        if (route == "both" && !lf_diverged) {
            // with the Gram oracle available, losing it past 1e-10 counts as
            // divergence of the forward iteration
            const gcs::Real threshold = policy.real("1e-10");
            for (std::size_t n = 1; n < lf.gamma.size() && n <= o.n; ++n) {
                if (gcs::abs(lf.gamma[n] / ch.seqs.gamma[n] - 1l) > threshold) {
                    lf_diverged = true;
                    lf_note = "relative discrepancy against the Gram route exceeded 1e-10 at n = " +
                              std::to_string(n);
                    break;
                }
            }
        }
    }

    auto blank = std::string();
    auto lf_beta = [&](std::size_t n) {
        return n < lf.beta.size() ? gcs::real_str(lf.beta[n], digits) : blank;
    };
    auto lf_gamma = [&](std::size_t n) {
        return n < lf.gamma.size() ? gcs::real_str(lf.gamma[n], digits) : blank;
    };
    auto rel_diff = [&](const gcs::Real& a, const gcs::Real& b) {
        return gcs::real_str(gcs::abs(a / b - 1l), 6);
    };

    if (o.format == "csv") {
        Output out(o.out);
        gcs::CsvWriter csv(out.stream());
        if (route == "gram") {
            csv.row({"n", "beta", "gamma", "h", "htilde", "a", "xi"});
            for (std::size_t n = 0; n <= o.n; ++n) {
                csv.row({std::to_string(n), gcs::real_str(ch.seqs.beta[n], digits),
                         gcs::real_str(ch.seqs.gamma[n], digits),
                         gcs::real_str(ch.seqs.h[n], digits),
                         gcs::real_str(sob.h_tilde[n], digits),
                         n >= 1 ? gcs::real_str(sob.a(n), digits) : blank,
                         n >= 2 ? gcs::real_str(ch.seqs.xi(n), digits) : blank});
            }
        } else if (route == "lf") {
            csv.row({"n", "beta", "gamma", "h", "xi"});
            for (std::size_t n = 0; n < lf.beta.size(); ++n) {
                csv.row({std::to_string(n), lf_beta(n), lf_gamma(n),
                         n < lf.h.size() ? gcs::real_str(lf.h[n], digits) : blank,
                         n >= 2 && n - 2 < lf.xi_from_2.size()
                             ? gcs::real_str(lf.xi(n), digits)
                             : blank});
            }
        } else {
            csv.row({"n", "beta_gram", "gamma_gram", "beta_lf", "gamma_lf", "beta_discrepancy",
                     "gamma_discrepancy"});
            for (std::size_t n = 0; n <= o.n; ++n) {
                std::string bd, gd;
                if (n < lf.beta.size()) bd = rel_diff(lf.beta[n], ch.seqs.beta[n]);
                if (n >= 1 && n < lf.gamma.size()) gd = rel_diff(lf.gamma[n], ch.seqs.gamma[n]);
                csv.row({std::to_string(n), gcs::real_str(ch.seqs.beta[n], digits),
                         gcs::real_str(ch.seqs.gamma[n], digits), lf_beta(n), lf_gamma(n), bd, gd});
            }
        }
        return lf_diverged ? 3 : 0;
    }

    gcs::Json tables;
    gcs::Json rows = gcs::Json::array();
    for (std::size_t n = 0; n <= o.n; ++n) {
        gcs::Json row;
        row["n"] = n;
        if (route != "lf") {
            row["beta"] = gcs::real_str(ch.seqs.beta[n], digits);
            row["gamma"] = gcs::real_str(ch.seqs.gamma[n], digits);
            row["h"] = gcs::real_str(ch.seqs.h[n], digits);
            row["htilde"] = gcs::real_str(sob.h_tilde[n], digits);
            if (n >= 1) row["a"] = gcs::real_str(sob.a(n), digits);
            if (n >= 2) row["xi"] = gcs::real_str(ch.seqs.xi(n), digits);
        }
        if (route != "gram" && n < lf.beta.size()) {
            row["beta_lf"] = lf_beta(n);
            if (n >= 1 && n < lf.gamma.size()) row["gamma_lf"] = lf_gamma(n);
            if (route == "both") {
                row["beta_discrepancy"] = rel_diff(lf.beta[n], ch.seqs.beta[n]);
                if (n >= 1 && n < lf.gamma.size())
                    row["gamma_discrepancy"] = rel_diff(lf.gamma[n], ch.seqs.gamma[n]);
            }
        }
        rows.push_back(std::move(row));
    }
    tables["coefficients"] = std::move(rows);
    tables["route"] = route;
    if (lf_diverged) tables["laguerre_freud_divergence"] = lf_note;
    emit_json(o, gcs::report_json(params, policy, {}, std::move(tables)));
    return lf_diverged ? 3 : 0;
}

// -------------------------------------------------------------------- polys

int cmd_polys(const CommonOpts& o) {
    gcs::PrecisionPolicy policy = make_policy(o);
    gcs::Params params = gcs::Params::from_strings(o.b, o.z, o.lambda, policy);
    const int digits = gcs::output_digits(policy.working_bits);

    gcs::MomentTable table = gcs::MomentTable::build(params, o.n + 2, policy);
    gcs::CharlierBuild ch = gcs::build_pn_gram(o.n, table);
    gcs::SobolevSet sob = gcs::build_sn(o.n, table, ch.seqs.h);

    auto coeff_list = [&](const std::vector<gcs::Real>& c) {
        gcs::Json arr = gcs::Json::array();
        for (const auto& v : c) arr.push_back(gcs::real_str(v, digits));
        return arr;
    };
    auto family_json = [&](const std::vector<gcs::FactorialPolynomial>& polys) {
        gcs::Json arr = gcs::Json::array();
        for (std::size_t n = 0; n <= o.n; ++n) {
            gcs::Json row;
            row["n"] = n;
            row["factorial_basis"] = coeff_list(polys[n].coeffs());
            row["monomial_basis"] = coeff_list(gcs::to_monomial(polys[n]).coeffs());
            arr.push_back(std::move(row));
        }
        return arr;
    };

    if (o.format == "csv") {
        Output out(o.out);
        gcs::CsvWriter csv(out.stream());
        csv.row({"family", "n", "basis", "k", "coefficient"});
        auto dump = [&](const char* fam, const std::vector<gcs::FactorialPolynomial>& polys) {
            for (std::size_t n = 0; n <= o.n; ++n) {
                const auto& fc = polys[n].coeffs();
                for (std::size_t k = 0; k < fc.size(); ++k)
                    csv.row({fam, std::to_string(n), "factorial", std::to_string(k),
                             gcs::real_str(fc[k], digits)});
                auto mc = gcs::to_monomial(polys[n]).coeffs();
                for (std::size_t k = 0; k < mc.size(); ++k)
                    csv.row({fam, std::to_string(n), "monomial", std::to_string(k),
                             gcs::real_str(mc[k], digits)});
            }
        };
        dump("P", ch.set.polys);
        dump("S", sob.polys);
        return 0;
    }

    gcs::Json tables;
    tables["P"] = family_json(ch.set.polys);
    tables["S"] = family_json(sob.polys);
    emit_json(o, gcs::report_json(params, policy, {}, std::move(tables)));
    return 0;
}

// ------------------------------------------------------------------- verify

int cmd_verify(const CommonOpts& o, std::uint64_t seed) {
    gcs::PrecisionPolicy policy = make_policy(o);
    gcs::Params params = gcs::Params::from_strings(o.b, o.z, o.lambda, policy);
    gcs::VerifyConfig cfg{params, policy, o.n, o.threads, seed};
    auto checks = gcs::run_verify(cfg);

    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c.pass;

    if (o.format == "csv") {
        Output out(o.out);
        gcs::CsvWriter csv(out.stream());
        const int digits = gcs::output_digits(policy.working_bits);
        csv.row({"name", "value", "target", "tolerance", "pass"});
        for (const auto& c : checks)
            csv.row({c.name, gcs::real_str(c.value, digits), gcs::real_str(c.target, digits),
                     gcs::real_str(c.tolerance, digits), c.pass ? "true" : "false"});
    } else {
        emit_json(o, gcs::report_json(params, policy, checks, gcs::Json::object()));
    }
    return all_pass ? 0 : 1;
}

// -------------------------------------------------------------- asymptotics

int cmd_asymptotics(const CommonOpts& o, const std::string& window, const std::string& x_str,
                    std::size_t top) {
    gcs::PrecisionPolicy policy = make_policy(o);
    gcs::Params params = gcs::Params::from_strings(o.b, o.z, o.lambda, policy);
    const int digits = gcs::output_digits(policy.working_bits);

    gcs::AsymptoticsConfig cfg(params, policy);
    cfg.threads = o.threads;
    cfg.x = policy.real(x_str);
    if (!window.empty()) {
        auto colon = window.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--window expects LO:HI");
        cfg.slope_lo = std::stoul(window.substr(0, colon));
        cfg.slope_hi = std::stoul(window.substr(colon + 1));
    }
    cfg.top = top;

    gcs::AsymptoticsReport rep = gcs::run_asymptotics(cfg);

    bool slopes_ok = true;
    for (const auto& c : rep.checks)
        if (c.name.find("_residual_slope") != std::string::npos) slopes_ok = slopes_ok && c.pass;

    if (o.format == "csv") {
        Output out(o.out);
        gcs::CsvWriter csv(out.stream());
        csv.row({"record", "name", "n", "value", "target", "tolerance", "pass"});
        for (const auto& c : rep.checks)
            csv.row({"check", c.name, "", gcs::real_str(c.value, digits),
                     gcs::real_str(c.target, digits), gcs::real_str(c.tolerance, digits),
                     c.pass ? "true" : "false"});
        auto track = [&](const char* name, const std::vector<std::pair<std::size_t, gcs::Real>>& t) {
            for (const auto& [n, v] : t)
                csv.row({"track", name, std::to_string(n), gcs::real_str(v, digits), "", "", ""});
        };
        track("gamma_residual", rep.gamma_fit.residuals);
        track("beta_residual", rep.beta_fit.residuals);
        track("alpha3", rep.alpha3_track);
        track("d2", rep.d2_track);
        track("d3", rep.d3_track);
        track("limit_h_ratio", rep.limits.h_ratio);
        track("limit_htilde_ratio", rep.limits.htilde_ratio);
        return slopes_ok ? 0 : 1;
    }

    gcs::Json tables;
    auto track_json = [&](const std::vector<std::pair<std::size_t, gcs::Real>>& t) {
        gcs::Json arr = gcs::Json::array();
        for (const auto& [n, v] : t)
            arr.push_back(gcs::Json{{"n", n}, {"value", gcs::real_str(v, digits)}});
        return arr;
    };
    // residual tracks also carry the n^4-scaled column the order fits are
    // judged against
    auto residual_track_json = [&](const std::vector<std::pair<std::size_t, gcs::Real>>& t) {
        gcs::Json arr = gcs::Json::array();
        for (const auto& [n, v] : t) {
            gcs::Real nn(static_cast<long>(n), policy.internal_bits());
            arr.push_back(gcs::Json{{"n", n},
                                    {"residual", gcs::real_str(v, digits)},
                                    {"n4_scaled", gcs::real_str(v * nn * nn * nn * nn, digits)}});
        }
        return arr;
    };
    tables["gamma_residuals"] = residual_track_json(rep.gamma_fit.residuals);
    tables["beta_residuals"] = residual_track_json(rep.beta_fit.residuals);
    tables["omega_residuals"] = residual_track_json(rep.omega_fit.residuals);
    tables["alpha3_track"] = track_json(rep.alpha3_track);
    tables["d2_track"] = track_json(rep.d2_track);
    tables["d3_track"] = track_json(rep.d3_track);
    tables["limit_h_ratio"] = track_json(rep.limits.h_ratio);
    tables["limit_htilde_ratio"] = track_json(rep.limits.htilde_ratio);
    tables["slopes"] = gcs::Json{{"gamma", gcs::real_str(rep.gamma_fit.slope, digits)},
                                 {"beta", gcs::real_str(rep.beta_fit.slope, digits)},
                                 {"omega", gcs::real_str(rep.omega_fit.slope, digits)}};
    tables["targets"] = gcs::Json{
        {"alpha3", gcs::real_str(rep.alpha3_target, digits)},
        {"d2", gcs::real_str(rep.d2_target, digits)},
        {"d3_nominal", gcs::real_str(rep.d3_nominal, digits)},
        {"d3_corrected", gcs::real_str(rep.d3_corrected, digits)},
        {"d4_nominal", gcs::real_str(rep.d4_nominal, digits)},
        {"d4_corrected", gcs::real_str(rep.d4_corrected, digits)},
        {"limit_h_ratio", gcs::real_str(rep.limits.h_ratio_target, digits)},
        {"limit_htilde_ratio", gcs::real_str(rep.limits.htilde_ratio_target, digits)}};
    tables["measured"] = gcs::Json{
        {"alpha3_at_top", gcs::real_str(rep.alpha3_measured, digits)},
        {"alpha3_richardson", gcs::real_str(rep.alpha3_richardson, digits)},
        {"d2_at_top", gcs::real_str(rep.d2_measured, digits)},
        {"d3_at_top", gcs::real_str(rep.d3_measured, digits)},
        {"omega4_richardson_measured", gcs::real_str(rep.omega4_measured, digits)},
        {"sigma4_nominal_from_measured_omega4", gcs::real_str(rep.sigma4_nominal, digits)},
        {"sigma4_corrected_from_measured_omega4", gcs::real_str(rep.sigma4_corrected, digits)},
        {"lambda_scaling_ratio", gcs::real_str(rep.lambda_scaling_ratio, digits)},
        {"rejected_branch_gap", gcs::real_str(rep.rejected_branch_gap, digits)}};
    emit_json(o, gcs::report_json(params, policy, rep.checks, std::move(tables)));
    return slopes_ok ? 0 : 1;
}

// -------------------------------------------------------------------- bench

int cmd_bench(const CommonOpts& o, const std::string& bits_list) {
    std::vector<long> bits;
    std::stringstream ss(bits_list);
    for (std::string item; std::getline(ss, item, ',');) bits.push_back(std::stol(item));
    if (bits.empty()) throw std::invalid_argument("--bits expects a comma-separated list");

    gcs::Json rows = gcs::Json::array();
    std::vector<std::vector<std::string>> csv_rows;
    for (long wb : bits) {
        CommonOpts local = o;
        local.precision = wb;
        gcs::PrecisionPolicy policy = make_policy(local);
        gcs::Params params = gcs::Params::from_strings(o.b, o.z, o.lambda, policy);
        gcs::MomentTable table = gcs::MomentTable::build(params, o.n + 2, policy);
        gcs::CharlierBuild ch = gcs::build_pn_gram(o.n, table);

        std::size_t divergence_n = 0;  // 0 = no divergence up to n
        std::string note = "agrees to 1e-10 through n = " + std::to_string(o.n);
        gcs::Real worst(0l, policy.internal_bits());
        try {
            gcs::CoeffSequences lf = gcs::build_coeffs_laguerre_freud(o.n, params, ch.seqs.beta[0],
                                                                      ch.seqs.gamma[1], policy);
            const gcs::Real threshold = policy.real("1e-10");
            for (std::size_t n = 1; n <= o.n; ++n) {
                gcs::Real dev = gcs::abs(lf.gamma[n] / ch.seqs.gamma[n] - 1l);
                worst = gcs::max(worst, dev);
                if (divergence_n == 0 && dev > threshold) {
                    divergence_n = n;
                    note = "relative discrepancy exceeded 1e-10 at n = " + std::to_string(n);
                }
            }
        } catch (const gcs::DivergedFromOracle& e) {
            divergence_n = e.index;
            note = e.what();
        }
        rows.push_back(gcs::Json{{"working_bits", wb},
                                 {"divergence_n", divergence_n},
                                 {"worst_gamma_discrepancy", gcs::real_str(worst, 6)},
                                 {"note", note}});
        csv_rows.push_back({std::to_string(wb), std::to_string(divergence_n),
                            gcs::real_str(worst, 6), note});
    }

    if (o.format == "csv") {
        Output out(o.out);
        gcs::CsvWriter csv(out.stream());
        csv.row({"working_bits", "divergence_n", "worst_gamma_discrepancy", "note"});
        for (const auto& r : csv_rows) csv.row(r);
        return 0;
    }
    gcs::PrecisionPolicy policy = make_policy(o);
    gcs::Params params = gcs::Params::from_strings(o.b, o.z, o.lambda, policy);
    gcs::Json tables;
    tables["laguerre_freud_digit_loss"] = std::move(rows);
    emit_json(o, gcs::report_json(params, policy, {}, std::move(tables)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Charlier / difference-Sobolev orthogonal polynomial toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts o;
    app.add_option("--b", o.b, "parameter b (> -1), decimal string")->capture_default_str();
    app.add_option("--z", o.z, "parameter z (> 0), decimal string")->capture_default_str();
    app.add_option("--lambda", o.lambda, "Sobolev weight lambda (>= 0), decimal string")
        ->capture_default_str();
    app.add_option("--precision", o.precision, "working precision in bits (>= 64)")
        ->capture_default_str();
    app.add_option("--guard-bits", o.guard, "guard bits carried on top of the working precision")
        ->capture_default_str();
    app.add_option("--n", o.n, "max index n")->capture_default_str();
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", o.out, "write output to FILE instead of stdout");
    app.add_option("--threads", o.threads, "worker threads for independent checks")
        ->capture_default_str();

    bool with_matrices = false;
    auto* moments = app.add_subcommand("moments", "moments nu_n and the nu/mu Gram matrices");
    moments->add_flag("--matrices", with_matrices, "include the Gram matrices");

    std::string route = "gram";
    auto* coeffs =
        app.add_subcommand("coeffs", "beta, gamma, h, htilde, a, xi by the chosen route(s)");
    coeffs->add_option("--route", route, "coefficient route")
        ->check(CLI::IsMember({"gram", "lf", "both"}))
        ->capture_default_str();

    app.add_subcommand("polys", "coefficient dumps of P_n and S_n in both bases");

    std::uint64_t seed = 424243;
    auto* verify = app.add_subcommand("verify", "run the full invariant suite (exit 0 iff all pass)");
    verify->add_option("--seed", seed, "seed for the randomized property checks")
        ->capture_default_str();

    std::string window, x_str = "-1";
    std::size_t top = 80;
    auto* asy = app.add_subcommand(
        "asymptotics", "certify the large-n expansions (exit 1 if a residual slope misses)");
    asy->add_option("--window", window, "order-fit window LO:HI (default 30:60)");
    asy->add_option("--x", x_str, "evaluation point for the ratio expansions")
        ->capture_default_str();
    asy->add_option("--top", top, "index for point checks and limits")->capture_default_str();

    std::string bits_list = "128,256,512";
    auto* bench = app.add_subcommand("bench", "Laguerre-Freud digit-loss measurement");
    bench->add_option("--bits", bits_list, "comma-separated working precisions")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (o.n < 1) {
        std::cerr << "error: n must be at least 1\n";
        return 2;
    }

    try {
        if (moments->parsed()) return cmd_moments(o, with_matrices);
        if (app.got_subcommand("coeffs")) return cmd_coeffs(o, route);
        if (app.got_subcommand("polys")) return cmd_polys(o);
        if (app.got_subcommand("verify")) return cmd_verify(o, seed);
        if (app.got_subcommand("asymptotics")) return cmd_asymptotics(o, window, x_str, top);
        if (app.got_subcommand("bench")) return cmd_bench(o, bits_list);
    } catch (const std::domain_error& e) {
        return fail_params(e);
    } catch (const std::invalid_argument& e) {
        return fail_params(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
