#include "cli.hpp"

#include "chenbound/buchstab.hpp"
#include "chenbound/chen.hpp"
#include "chenbound/errors.hpp"
#include "chenbound/goldbach.hpp"
#include "chenbound/psi_cache.hpp"
#include "chenbound/wu.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace chenbound::cli {

namespace {

using nlohmann::json;

std::string num(double v, int digits = 17) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

struct Globals {
    std::string cache_dir;
    double abs_tol = 1e-8;
    double rel_tol = 1e-4;
    std::size_t mc_samples = 2'000'000;
    unsigned threads = 0;
    std::string out;
    int degree = buchstab::Spline::kDefaultDegree;
    int intervals = buchstab::Spline::kDefaultIntervals;
    std::string spline_json;
    int i2_upper = 21;
    std::string weight20 = "printed";
    std::string xi1 = "printed";
    std::string term7 = "minus";
    bool omit_timing = false;
};

// Writes either to the caller's stream or to the file named by --out.
// "json", "csv" and "-" select the stream.
class Sink {
public:
    Sink(const std::string& target, std::ostream& fallback) {
        if (target.empty() || target == "json" || target == "csv" || target == "-") {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(target, std::ios::trunc);
            if (!*file_) throw std::invalid_argument("cannot open output file '" + target + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

struct Context {
    Globals g;
    std::optional<buchstab::Spline> spline;
    std::unique_ptr<cache::PsiCache> cache;

    const buchstab::Spline& omega() {
        if (!spline) {
            if (!g.spline_json.empty()) {
                std::ifstream in(g.spline_json);
                if (!in) throw std::invalid_argument("cannot read spline file '" + g.spline_json + "'");
                std::stringstream buf;
                buf << in.rdbuf();
                spline = buchstab::Spline::from_json(buf.str());
            } else {
                spline = buchstab::Spline::build(g.degree, g.intervals);
            }
        }
        return *spline;
    }

    wu::Settings settings() {
        wu::Settings s;
        s.quad.abs_tol = g.abs_tol;
        s.quad.rel_tol = g.rel_tol;
        s.quad.mc_samples = g.mc_samples;
        s.quad.validate();
        s.spline = &omega();
        s.i2.upper_index = g.i2_upper;
        s.i2.weight20_printed = g.weight20 == "printed";
        s.kernel.xi1 = g.xi1 == "printed" ? wu::Xi1Indicator::printed : wu::Xi1Indicator::appendix;
        s.kernel.term7 = g.term7 == "minus" ? wu::Xi2Term7::appendix_minus : wu::Xi2Term7::printed_plus;
        return s;
    }

    cache::PsiCache* psi_cache() {
        if (!cache) {
            if (g.cache_dir.empty()) {
                cache = std::make_unique<cache::PsiCache>();
            } else {
                cache = std::make_unique<cache::PsiCache>(
                    cache::PsiCache::file_for(g.cache_dir, settings()));
            }
        }
        return cache.get();
    }

    chen::Options chen_options() {
        chen::Options o;
        o.settings = settings();
        o.threads = g.threads;
        o.cache = psi_cache();
        return o;
    }
};

wu::WuParams parse_params(const std::vector<double>& v) {
    if (v.size() == 2) return wu::WuParams::psi1(v[0], v[1]);
    if (v.size() == 5) return wu::WuParams::psi2(v[0], v[1], v[2], v[3], v[4]);
    throw std::invalid_argument("--params takes s,s' or s,s',k1,k2,k3");
}

wu::WuParams row_params(int row) {
    if (row < 1 || row > 9) throw std::invalid_argument("--row must lie in 1..9");
    return wu::published_rows()[static_cast<std::size_t>(row - 1)].params();
}

json report_json(const chen::Report& r, bool omit_timing) {
    json j;
    j["grid"] = r.grid;
    j["b_source"] = std::string(chen::to_string(r.b_source));
    j["points"] = r.points;
    std::vector<double> sp;
    for (const auto& p : r.params) sp.push_back(p.s_prime);
    j["s_prime"] = sp;
    j["b"] = r.B;
    j["x"] = r.solution.x;
    j["c_star"] = r.solution.c_star;
    j["residual"] = r.solution.residual;
    j["first_is_max"] = r.solution.first_is_max;
    j["wall_seconds"] = omit_timing ? 0.0 : r.wall_seconds;
    return j;
}

void dump_system(const chen::Report& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream a(std::filesystem::path(dir) / "A.csv");
    for (std::size_t i = 0; i < r.A.n; ++i) {
        for (std::size_t j = 0; j < r.A.n; ++j) a << (j ? "," : "") << num(r.A(i, j));
        a << '\n';
    }
    std::ofstream b(std::filesystem::path(dir) / "B.csv");
    b << "i,s,b,x\n";
    for (std::size_t i = 0; i < r.B.size(); ++i) {
        b << i + 1 << ',' << num(r.points[i]) << ',' << num(r.B[i]) << ',' << num(r.solution.x[i])
          << '\n';
    }
}

std::vector<double> steps(double from, double to, double step) {
    if (!(step > 0.0) || !(to >= from)) throw std::invalid_argument("need --to >= --from and --step > 0");
    const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long n = 0; n < count; ++n) out.push_back(from + static_cast<double>(n) * step);
    return out;
}

int classify(const std::exception& e, std::ostream& err) {
    err << "error: " << e.what() << '\n';
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e) ||
        dynamic_cast<const std::out_of_range*>(&e)) {
        return usage_error;
    }
    return numeric_failure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Context ctx;
    Globals& g = ctx.g;
    std::function<void()> action;

    CLI::App app{"Numerical upper bound for Chen's constant, Buchstab function and Goldbach counts"};
    app.name(args.empty() ? "chenbound" : args[0]);
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();

    app.add_option("--cache-dir", g.cache_dir, "Directory for the persistent Psi cache");
    app.add_option("--abs-tol", g.abs_tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
    app.add_option("--rel-tol", g.rel_tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
    app.add_option("--mc-samples", g.mc_samples, "Quasi-Monte Carlo samples for 4-6 dimensional integrals")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
    app.add_option("--out", g.out, "Output file, or json/csv/- for standard output");
    app.add_option("--degree", g.degree, "Buchstab spline degree N")->check(CLI::Range(1, 60));
    app.add_option("--intervals", g.intervals, "Buchstab spline intervals k")->check(CLI::Range(2, 60));
    app.add_option("--spline-json", g.spline_json, "Load spline coefficients from a JSON export");
    app.add_option("--i2-upper", g.i2_upper, "Last I2 index in the Psi2 sum")
        ->check(CLI::IsMember({19, 21}));
    app.add_option("--weight20", g.weight20, "I2,20 weight variant")
        ->check(CLI::IsMember({"printed", "alternate"}));
    app.add_option("--xi1", g.xi1, "Third Xi1 indicator variant")
        ->check(CLI::IsMember({"printed", "appendix"}));
    app.add_option("--term7", g.term7, "Seventh Xi2 term denominator")
        ->check(CLI::IsMember({"minus", "plus"}));
    app.add_flag("--omit-timing", g.omit_timing, "Report wall_seconds as 0 for reproducible output");

    // ---- buchstab -------------------------------------------------------
    auto* bs = app.add_subcommand("buchstab", "Buchstab function evaluation")->require_subcommand(1);
    double u = 0.0;
    double from = 1.0, to = 10.0, step = 0.01, ode_tol = 1e-15;
    auto* bs_eval = bs->add_subcommand("eval", "Evaluate the spline at u");
    bs_eval->add_option("--u", u, "Argument u >= 1")->required();
    bs_eval->callback([&] {
        action = [&] { out << num(ctx.omega()(u), 16) << '\n'; };
    });

    auto* bs_table = bs->add_subcommand("table", "CSV of spline and ODE values");
    auto* bs_compare = bs->add_subcommand("compare", "Maximum spline/ODE deviation on a grid");
    for (auto* sub : {bs_table, bs_compare}) {
        sub->add_option("--from", from, "First u");
        sub->add_option("--to", to, "Last u");
        sub->add_option("--step", step, "Step in u");
        sub->add_option("--ode-tol", ode_tol, "ODE reference tolerance");
    }
    bs_table->callback([&] {
        action = [&] {
            const auto grid = steps(from, to, step);
            const auto& sp = ctx.omega();
            const auto ode = buchstab::OdeReference::solve(std::max(2.0, to), ode_tol);
            Sink sink(g.out, out);
            *sink << "u,omega_spline,omega_ode,abs_diff\n";
            for (double x : grid) {
                const double a = sp(x);
                const double b = ode(x);
                *sink << num(x, 12) << ',' << num(a) << ',' << num(b) << ',' << num(std::fabs(a - b)) << '\n';
            }
        };
    });
    bs_compare->callback([&] {
        action = [&] {
            const auto grid = steps(from, to, step);
            const auto& sp = ctx.omega();
            const auto ode = buchstab::OdeReference::solve(std::max(2.0, to), ode_tol);
            double worst = 0.0, at = from;
            for (double x : grid) {
                const double d = std::fabs(sp(x) - ode(x));
                if (d > worst) {
                    worst = d;
                    at = x;
                }
            }
            json j{{"max_abs_diff", worst}, {"at", at}, {"error_bound", sp.error_bound()},
                   {"ode_step", ode.step()}, {"ode_error_estimate", ode.error_estimate()}};
            Sink sink(g.out, out);
            *sink << j.dump(2) << '\n';
        };
    });
    auto* bs_export = bs->add_subcommand("export", "Write spline coefficients as JSON");
    bs_export->callback([&] {
        action = [&] {
            Sink sink(g.out, out);
            *sink << ctx.omega().to_json() << '\n';
        };
    });

    // ---- wu ---------------------------------------------------------------
    auto* wu_cmd = app.add_subcommand("wu", "Wu's integrals and bound functions")->require_subcommand(1);
    double s = 0.0, sp = 0.0, phi = 2.0;
    int row = 0, index = 9;
    std::vector<double> params;
    bool maximize = false;

    auto* w_psi1 = wu_cmd->add_subcommand("psi1", "Psi1(s, s')");
    w_psi1->add_option("--s", s, "s")->required();
    w_psi1->add_option("--sp", sp, "s'")->required();
    w_psi1->callback([&] {
        action = [&] {
            const auto d = wu::psi1_detail(s, sp, ctx.settings());
            json j{{"s", s}, {"s_prime", sp}, {"log_term", d.log_term}, {"ratio_term", d.ratio_term},
                   {"i1", d.i1.value}, {"phi_max", d.i1.phi}, {"phi_low", d.i1.phi_low},
                   {"psi1", d.value}};
            Sink sink(g.out, out);
            *sink << j.dump(2) << '\n';
        };
    });

    auto* w_psi2 = wu_cmd->add_subcommand("psi2", "Psi2 for a table row or explicit parameters");
    auto* row_opt = w_psi2->add_option("--row", row, "Published row 1..4");
    auto* par_opt = w_psi2->add_option("--params", params, "s,s',k1,k2,k3")->delimiter(',');
    row_opt->excludes(par_opt);
    w_psi2->callback([&] {
        action = [&] {
            if (row == 0 && params.empty()) throw std::invalid_argument("psi2 needs --row or --params");
            const auto p = row ? row_params(row) : parse_params(params);
            const auto settings = ctx.settings();
            std::map<int, wu::PhiMax> known;
            for (int i = 9; i <= settings.i2.upper_index; ++i) {
                known[i] = cache::cached_i2_max(ctx.psi_cache(), i, p, settings);
            }
            const auto d = wu::psi2_detail(p, settings, known);
            ctx.psi_cache()->flush();
            json terms = json::array();
            for (const auto& [i, m] : d.i2) {
                terms.push_back({{"i", i}, {"phi_max", m.phi}, {"phi_low", m.phi_low}, {"value", m.value}});
            }
            json j{{"s", p.s}, {"s_prime", p.s_prime}, {"k1", *p.k1}, {"k2", *p.k2}, {"k3", *p.k3},
                   {"one_d", d.one_d}, {"i2", terms}, {"psi2", d.value}};
            Sink sink(g.out, out);
            *sink << j.dump(2) << '\n';
        };
    });

    auto* w_i1 = wu_cmd->add_subcommand("i1", "I1 at fixed phi, or maximized with --max");
    w_i1->add_option("--s", s, "s")->required();
    w_i1->add_option("--sp", sp, "s'")->required();
    w_i1->add_option("--phi", phi, "phi");
    w_i1->add_flag("--max", maximize, "Maximize over phi");
    w_i1->callback([&] {
        action = [&] {
            const auto settings = ctx.settings();
            json j{{"s", s}, {"s_prime", sp}};
            if (maximize) {
                const auto m = wu::i1_max(s, sp, settings);
                j["phi_max"] = m.phi;
                j["phi_low"] = m.phi_low;
                j["i1"] = m.value;
            } else {
                j["phi"] = phi;
                j["i1"] = wu::i1(phi, s, sp, settings);
            }
            Sink sink(g.out, out);
            *sink << j.dump(2) << '\n';
        };
    });

    auto* w_i2 = wu_cmd->add_subcommand("i2", "I2,i at fixed phi, or maximized with --max");
    w_i2->add_option("--i", index, "Index 9..21")->check(CLI::Range(9, 21));
    auto* row2 = w_i2->add_option("--row", row, "Published row 1..4");
    auto* par2 = w_i2->add_option("--params", params, "s,s',k1,k2,k3")->delimiter(',');
    row2->excludes(par2);
    w_i2->add_option("--phi", phi, "phi");
    w_i2->add_flag("--max", maximize, "Maximize over phi");
    w_i2->callback([&] {
        action = [&] {
            if (row == 0 && params.empty()) throw std::invalid_argument("i2 needs --row or --params");
            const auto p = row ? row_params(row) : parse_params(params);
            const auto settings = ctx.settings();
            const auto dom = wu::i2_domain(index, p);
            const int div = wu::i2_divisor(index);
            json j{{"i", index}, {"phi_low", wu::phi_low(dom, div)}, {"empty", dom.empty()}};
            if (!dom.empty()) j["phi_low_bisect"] = wu::phi_threshold_bisect(dom, div);
            if (maximize) {
                const auto m = wu::i2_max(index, p, settings);
                j["phi_max"] = m.phi;
                j["i2"] = m.value;
            } else {
                j["phi"] = phi;
                j["i2"] = wu::i2(index, phi, p, settings);
            }
            Sink sink(g.out, out);
            *sink << j.dump(2) << '\n';
        };
    });

    // ---- chen -------------------------------------------------------------
    auto* ch = app.add_subcommand("chen", "Linear system for C*")->require_subcommand(1);
    std::string grid = "nine", b_source = "computed", dump_dir;
    std::vector<std::string> grids{"nine", "forty"};
    std::vector<int> interp_n{100};

    auto* c_solve = ch->add_subcommand("solve", "Solve (I - A)X = B on one grid");
    c_solve->add_option("--grid", grid, "nine | forty | fourhundred | custom:N");
    c_solve->add_option("--b-source", b_source, "computed | wu-published | thesis-published");
    c_solve->add_option("--dump-system", dump_dir, "Directory for A.csv and B.csv");
    c_solve->callback([&] {
        action = [&] {
            auto opts = ctx.chen_options();
            opts.b_source = chen::parse_b_source(b_source);
            const auto r = chen::solve_grid(chen::GridSpec::parse(grid), opts);
            if (!dump_dir.empty()) dump_system(r, dump_dir);
            Sink sink(g.out, out);
            *sink << report_json(r, g.omit_timing).dump(2) << '\n';
        };
    });

    auto* c_refine = ch->add_subcommand("refine", "Solve on several grids and tabulate C*");
    c_refine->add_option("--grids", grids, "Comma-separated grid names")->delimiter(',');
    c_refine->callback([&] {
        action = [&] {
            std::vector<chen::GridSpec> specs;
            for (const auto& name : grids) specs.push_back(chen::GridSpec::parse(name));
            const auto reports = chen::refine_experiment(specs, ctx.chen_options());
            json rows = json::array();
            for (const auto& r : reports) {
                rows.push_back({{"grid", r.grid}, {"points", r.points.size()},
                                {"x1", r.solution.x.front()}, {"c_star", r.solution.c_star},
                                {"residual", r.solution.residual},
                                {"wall_seconds", g.omit_timing ? 0.0 : r.wall_seconds}});
            }
            Sink sink(g.out, out);
            *sink << rows.dump(2) << '\n';
        };
    });

    auto* c_interp = ch->add_subcommand("interp", "Interpolation experiment on Wu's published data");
    c_interp->add_option("--intervals", interp_n, "Comma-separated interval counts (>= 9)")->delimiter(',');
    c_interp->callback([&] {
        action = [&] {
            auto opts = ctx.chen_options();
            json rows = json::array();
            for (int n : interp_n) {
                const auto r = chen::interpolation_experiment(n, opts);
                rows.push_back({{"intervals", r.intervals}, {"crossing_root", r.crossing_root},
                                {"x1", r.solution.x.front()}, {"c_star", r.solution.c_star},
                                {"residual", r.solution.residual},
                                {"infeasible_rows", r.infeasible_rows}});
            }
            Sink sink(g.out, out);
            *sink << (rows.size() == 1 ? rows.front() : rows).dump(2) << '\n';
        };
    });

    // ---- goldbach ---------------------------------------------------------
    auto* gb = app.add_subcommand("goldbach", "Goldbach counts and constants")->require_subcommand(1);
    std::uint64_t n = 0, max_n = 25000, limit = 1'000'000;
    std::string filter = "all";

    auto* g_count = gb->add_subcommand("count", "D(N)");
    g_count->add_option("--n", n, "Even N >= 4")->required();
    g_count->callback([&] {
        action = [&] {
            const goldbach::PrimeTable pt(std::max<std::uint64_t>(n, 2));
            out << goldbach::d_count(n, pt) << '\n';
        };
    });

    auto* g_comet = gb->add_subcommand("comet", "CSV of N, D(N), 2 Theta(N)");
    g_comet->add_option("--max", max_n, "Largest N");
    g_comet->add_option("--filter", filter, "all | 12p")->check(CLI::IsMember({"all", "12p"}));
    g_comet->callback([&] {
        action = [&] {
            const goldbach::PrimeTable pt(std::max<std::uint64_t>(max_n, 2));
            const double c0 = goldbach::twin_prime_constant(limit);
            const auto rows = goldbach::comet(
                max_n, filter == "all" ? goldbach::CometFilter::all : goldbach::CometFilter::multiples_of_12p,
                pt, c0, g.threads);
            Sink sink(g.out, out);
            *sink << "N,D,two_theta,color_class\n";
            for (const auto& r : rows) *sink << r.n << ',' << r.d << ',' << num(r.two_theta, 12) << ',' << r.color_class << '\n';
        };
    });

    auto* g_c0 = gb->add_subcommand("c0", "Twin prime constant");
    g_c0->add_option("--limit", limit, "Largest prime in the product");
    g_c0->callback([&] {
        action = [&] { out << num(goldbach::twin_prime_constant(limit), 12) << '\n'; };
    });

    auto* g_theta = gb->add_subcommand("theta", "Theta(N)");
    g_theta->add_option("--n", n, "Even N >= 4")->required();
    g_theta->add_option("--limit", limit, "Prime limit for C0");
    g_theta->callback([&] {
        action = [&] { out << num(goldbach::theta(n, goldbach::twin_prime_constant(limit)), 12) << '\n'; };
    });

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage_error;
    }

    try {
        if (action) action();
        if (ctx.cache) ctx.cache->flush();
    } catch (const std::exception& e) {
        return classify(e, err);
    }
    return ok;
}

} // namespace chenbound::cli
