// ellq: single evaluations and verification suites.
//
// Exit codes: 0 ok / all suites pass, 1 a suite failed, 2 usage error or unknown suite,
// 3 domain error (violated precondition, pole), 4 I/O error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellq/cgkit.hpp"
#include "ellq/dynrep.hpp"
#include "ellq/params.hpp"
#include "ellq/rmatrix.hpp"
#include "ellq/series.hpp"
#include "ellq/suites.hpp"
#include "ellq/theta.hpp"

using namespace ellq;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int default_trunc() {
    const char* env = std::getenv("ELLQ_TRUNC");
    if (!env || !*env) return 64;
    try {
        size_t used = 0;
        int n = std::stoi(env, &used);
        if (used == std::string(env).size() && n > 0) return n;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("ELLQ_TRUNC must be a positive integer, got '") + env + "'");
}

cplx cplx_arg(const std::string& name, const std::string& text) {
    try {
        return parse_cplx(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError("--" + name + ": " + e.what());
    }
}

struct ParamOpts {
    std::string q = "0.5", r = "3";
    std::optional<std::string> r_star;
    int trunc = 0;
    double tol = 1e-8;

    void attach(CLI::App* app) {
        app->add_option("--q", q, "nome q (complex literal, 0<|q|<1)")->capture_default_str();
        app->add_option("--r", r, "elliptic parameter r")->capture_default_str();
        app->add_option("--r-star", r_star, "r* for starred quantities (default r)");
        app->add_option("--trunc", trunc, "product truncation order (default $ELLQ_TRUNC or 64)");
        app->add_option("--tol", tol, "tolerance")->capture_default_str();
    }
    ModularParams make() const {
        std::optional<cplx> rs;
        if (r_star) rs = cplx_arg("r-star", *r_star);
        return ModularParams::make(cplx_arg("q", q), cplx_arg("r", r), trunc > 0 ? trunc : default_trunc(), tol, rs);
    }
};

void print(const std::string& label, cplx v) { std::cout << label << " = " << format_cplx(v) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elliptic quantum group toolkit: evaluations and verification suites"};
    app.require_subcommand(1);

    // eval
    CLI::App* eval = app.add_subcommand("eval", "evaluate a single quantity");
    eval->require_subcommand(1);
    ParamOpts po;

    std::string z_s, u_s, P_s, s_s, a_s = "0";
    bool starred = false;
    CLI::App* e_theta = eval->add_subcommand("theta", "Theta_p(z) with p = q^{2r}");
    e_theta->add_option("--z", z_s, "argument z")->required();
    CLI::App* e_bracket = eval->add_subcommand("bracket", "Jacobi bracket [u]");
    e_bracket->add_option("--u", u_s, "argument u")->required();
    e_bracket->add_flag("--starred", starred, "use r* instead of r");

    std::string kind = "10V9";
    bool ft_check = false;
    std::string al_s = "0", be_s = "0", ga_s = "0", de_s = "0", u0_s;
    std::vector<std::string> us_s;
    int terms = 0;
    CLI::App* e_series = eval->add_subcommand("series", "very-well-poised elliptic series");
    e_series->add_option("--kind", kind, "series kind (10V9 or generic)")->capture_default_str();
    e_series->add_flag("--ft-check", ft_check, "compare the terminating 10V9 with its product formula");
    e_series->add_option("--alpha", al_s);
    e_series->add_option("--beta", be_s);
    e_series->add_option("--gamma", ga_s);
    e_series->add_option("--delta", de_s);
    e_series->add_option("--s", terms, "termination order for --ft-check");
    e_series->add_option("--u0", u0_s, "u0 for a generic series");
    e_series->add_option("--us", us_s, "remaining parameters for a generic series")->expected(1, -1);

    CLI::App* e_rmat = eval->add_subcommand("rmat", "dynamical R-matrix R(u, s), matrix part");
    e_rmat->add_option("--u", u_s, "spectral parameter")->required();
    e_rmat->add_option("--s", s_s, "dynamical parameter")->required();
    bool with_rho = false;
    e_rmat->add_flag("--with-rho", with_rho, "include the rho+ normalization");

    int l = 1;
    CLI::App* e_phi = eval->add_subcommand("phi_l", "phi_l(u)");
    e_phi->add_option("--u", u_s)->required();
    e_phi->add_option("--l", l)->required();

    int l1 = 1, l2 = 1, s = 0, m = 0, k = 0;
    CLI::App* e_cg = eval->add_subcommand("cg", "Clebsch-Gordan coefficient of beta(u)..beta(u+m-1) v^(s)");
    e_cg->add_option("--l1", l1)->required();
    e_cg->add_option("--l2", l2)->required();
    e_cg->add_option("--s", s)->required();
    e_cg->add_option("--m", m)->required();
    e_cg->add_option("--k", k)->required();
    e_cg->add_option("--u", u_s)->required();
    e_cg->add_option("--P", P_s)->required();
    e_cg->add_option("--a", a_s, "spectral point of the first factor")->capture_default_str();
    bool brute = false;
    e_cg->add_flag("--brute-force", brute, "also print the coproduct brute-force coefficient");

    for (CLI::App* sub : {e_theta, e_bracket, e_series, e_rmat, e_phi, e_cg}) po.attach(sub);

    // suite
    CLI::App* suite = app.add_subcommand("suite", "run verification suites");
    std::vector<std::string> names;
    double sq = 0.5;
    std::optional<double> sr;
    int strunc = 0, samples = 20;
    double stol = 1e-8;
    std::uint64_t seed = 7;
    std::string out, format = "table";
    suite->add_option("names", names, "theta series rmatrix rll halfcurrents hopf cg lemmas submodule limits all")
        ->required();
    suite->add_option("--q", sq)->capture_default_str();
    suite->add_option("--r", sr, "elliptic parameter r (default 3; 3.3 for cg, lemmas, submodule)");
    suite->add_option("--trunc", strunc, "product truncation order (default $ELLQ_TRUNC or 64)");
    suite->add_option("--tol", stol)->capture_default_str();
    suite->add_option("--samples", samples)->capture_default_str();
    suite->add_option("--seed", seed)->capture_default_str();
    suite->add_option("--out", out, "write the report here instead of stdout");
    suite->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::cout.precision(17);
        if (*eval) {
            ModularParams mp = po.make();
            if (*e_theta) {
                print("Theta_p(z)", theta_big(cplx_arg("z", z_s), mp));
            } else if (*e_bracket) {
                print(starred ? "[u]*" : "[u]", bracket(cplx_arg("u", u_s), mp, starred));
            } else if (*e_series) {
                if (kind == "10V9" || ft_check) {
                    if (terms < 0) throw DomainError("--s must be non-negative");
                    cplx al = cplx_arg("alpha", al_s), be = cplx_arg("beta", be_s), ga = cplx_arg("gamma", ga_s),
                         de = cplx_arg("delta", de_s);
                    cplx lhs = elliptic_V(frenkel_turaev_spec(al, be, ga, de, terms), mp);
                    print("10V9", lhs);
                    if (ft_check) {
                        cplx rhs = frenkel_turaev_rhs(al, be, ga, de, terms, mp);
                        print("product", rhs);
                        std::cout << "residual = " << std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)) << "\n";
                    }
                } else if (kind == "generic") {
                    if (u0_s.empty() || us_s.empty()) throw UsageError("generic series needs --u0 and --us");
                    VSeriesSpec v{cplx_arg("u0", u0_s), {}, 0};
                    for (const auto& x : us_s) v.us.push_back(cplx_arg("us", x));
                    v.s = int(v.us.size()) + 4;
                    print("V", elliptic_V(v, mp));
                } else {
                    throw UsageError("--kind must be 10V9 or generic");
                }
            } else if (*e_rmat) {
                Mat4 M = r_matrix(cplx_arg("u", u_s), cplx_arg("s", s_s), mp,
                                  with_rho ? RNorm::with_rho : RNorm::matrix_only);
                for (auto& row : M) {
                    for (int j = 0; j < 4; ++j) std::cout << (j ? "  " : "") << format_cplx(row[j]);
                    std::cout << "\n";
                }
            } else if (*e_phi) {
                print("phi_l(u)", phi_l(cplx_arg("u", u_s), l, mp));
            } else if (*e_cg) {
                if (l1 < 1 || l2 < 1) throw DomainError("need l1, l2 >= 1");
                if (s < 0 || s > std::min(l1, l2)) throw DomainError("need 0 <= s <= min(l1, l2)");
                SingularVectorSpec sp{l1, l2, s, cplx_arg("a", a_s)};
                if (m < 0 || m > sp.l() + 1) throw DomainError("need 0 <= m <= l1 + l2 - 2s + 1");
                if (k < std::max(0, s + m - l2) || k > std::min(l1, s + m))
                    throw DomainError("need max(0, s+m-l2) <= k <= min(l1, s+m)");
                cplx u = cplx_arg("u", u_s), P = cplx_arg("P", P_s);
                print("closed_form", cg_closed_form(sp, m, k, u, P, mp));
                if (brute) {
                    auto bf = beta_power_bruteforce(sp, m, u, mp).eval(P);
                    auto it = bf.find({k, m + s - k});
                    print("brute_force", it == bf.end() ? cplx(0.0) : it->second);
                }
            }
            return 0;
        }

        SuiteConfig cfg;
        cfg.q = sq;
        cfg.r = sr;
        cfg.trunc_N = strunc > 0 ? strunc : default_trunc();
        cfg.tol = stol;
        cfg.samples = samples;
        cfg.seed = seed;
        auto t0 = std::chrono::steady_clock::now();
        Report rep = run_suites(names, cfg);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::string text = format == "json" ? to_json_text(rep) : format == "csv" ? to_csv(rep) : to_table(rep);
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out, std::ios::binary);
            if (!f) throw IoError("cannot open " + out + " for writing");
            f << text;
            f.close();
            if (!f) throw IoError("write to " + out + " failed");
        }
        std::cerr << "wall time: " << wall << " s\n";
        return rep.pass ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownSuite& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const PoleError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const NonTerminatingError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    }
}
