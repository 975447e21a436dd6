// hypconc -- batch experiment runner over the concentration/stability
// library.  Subcommands: faberkrahn | operator | stability-fn |
// stability-set | sharpness | audit | limits fock | limits hardy |
// transform-check.  Reports are CSV (default) or JSON, deterministic for
// a fixed configuration; exit code 0 on success, 1 when a hard invariant
// fails (the witness row is printed), 2 on usage errors.

#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "hypconc/hypconc.hpp"

using namespace hypconc;

namespace {

// Seeded unit normals (Box-Muller on mt19937_64); pinned here so reports
// do not depend on the standard library's distribution internals.
class NormalGen {
  public:
    explicit NormalGen(std::uint64_t seed) : rng_(seed) {}
    double operator()() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        double u1 = 0.0;
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * kPi * u2);
        have_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

  private:
    double uniform() {
        return (rng_() >> 11) * 0x1.0p-53;
    }
    std::mt19937_64 rng_;
    bool have_ = false;
    double cached_ = 0.0;
};

BergmanFunction random_function(const AlphaParam& alpha, int degree,
                                std::uint64_t seed) {
    NormalGen gen(seed);
    std::vector<complexd> c(size_t(degree) + 1);
    for (auto& x : c) {
        const double re = gen(), im = gen();
        x = complexd(re, im);
    }
    return BergmanFunction(alpha, std::move(c)).normalized();
}

// Greedy level-set mask: cells ranked by u at their centers, accumulated
// until the target measure is reached.  Deterministic and exactly a union
// of cells, so its measure carries no rasterization slack.
GridMask level_mask(const BergmanFunction& f, double s,
                    std::shared_ptr<const QuadratureGrid> grid) {
    struct Cell {
        double u;
        double mu;
        int idx;
    };
    std::vector<Cell> cells;
    cells.reserve(grid->cell_count());
    for (int ring = 0; ring < grid->n_radial(); ++ring) {
        const double mu = grid->cell_mu(ring);
        for (int sec = 0; sec < grid->angular_count(); ++sec) {
            const int idx = grid->cell_index(ring, sec);
            cells.push_back({u_density(f, grid->cell_center(ring, sec)), mu,
                             idx});
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return a.u > b.u || (a.u == b.u && a.idx < b.idx);
    });
    GridMask m;
    m.grid = grid;
    m.cells.assign(grid->cell_count(), 0);
    double acc = 0.0;
    for (const Cell& c : cells) {
        if (acc >= s) break;
        m.cells[c.idx] = 1;
        acc += c.mu;
    }
    return m;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw CLI::ValidationError("empty numeric list");
    return out;
}

struct Output {
    std::string path;    // empty -> stdout
    std::string format;  // csv | json
    std::string command;

    void emit(const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) const {
        if (format == "json") {
            json j;
            j["schema"] = kSchema;
            j["command"] = command;
            j["columns"] = header;
            json data = json::array();
            for (const auto& row : rows) data.push_back(row);
            j["rows"] = std::move(data);
            write(j.dump(2) + "\n");
        } else {
            CsvWriter w(header);
            for (const auto& row : rows) w.add_row(row);
            write(w.str());
        }
    }

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream os(path);
            if (!os) throw std::runtime_error("cannot open " + path);
            os << text;
        }
    }
};

std::string num(double v) { return CsvWriter::num(v); }

struct Failure {
    bool failed = false;
    std::string witness;
    void flag(const std::string& w) {
        if (!failed) witness = w;
        failed = true;
    }
};

int run_faberkrahn(double alpha_v, double s, int n_sets, int n_funcs,
                   int basis_N, std::uint64_t seed, int nr, int nt,
                   double rmax, const Output& out) {
    const AlphaParam alpha(alpha_v);
    auto grid = std::make_shared<QuadratureGrid>(nr, nt, rmax);
    Failure fail;
    std::vector<std::vector<std::string>> rows;

    std::vector<BergmanFunction> funcs;
    for (int j = 0; j < n_funcs; ++j)
        funcs.push_back(random_function(alpha, 6, seed * 1000003u + 17u * j));

    for (int i = 0; i < n_sets; ++i) {
        const BergmanFunction shape =
            random_function(alpha, 6, seed * 7777001u + 101u * i);
        const GridMask mask = level_mask(shape, s, grid);
        const double s_exact = mu_measure(mask);
        const double th = theta(alpha, s_exact);
        const LocalizationMatrix lm =
            localization_matrix(alpha, HyperbolicSet(mask), basis_N);
        const TopEigen top = lambda_max(lm);
        if (top.lambda > th + 1e-8)
            fail.flag("set " + std::to_string(i) + ": lambda " +
                      num(top.lambda) + " > theta " + num(th));
        double worst = 1.0;
        for (int j = 0; j < n_funcs; ++j) {
            const DeficitReport dr = deficit(funcs[j], HyperbolicSet(mask));
            worst = std::min(worst, dr.deficit);
            if (dr.deficit < -1e-9)
                fail.flag("set " + std::to_string(i) + " func " +
                          std::to_string(j) + ": deficit " +
                          num(dr.deficit));
        }
        rows.push_back({std::to_string(i), num(top.lambda), num(th),
                        num(worst)});
    }
    out.emit({"set_id", "lambda", "theta", "deficit"}, rows);
    if (fail.failed) {
        std::cerr << "invariant violation: " << fail.witness << "\n";
        return 1;
    }
    return 0;
}

int run_operator(double alpha_v, double s, int basis_N, const Output& out) {
    const AlphaParam alpha(alpha_v);
    const AnalyticDisc d = pseudo_disc(0.0, s);
    const LocalizationMatrix lm =
        localization_matrix(alpha, HyperbolicSet(d), basis_N);
    const TopEigen top = lambda_max(lm);
    const double th = theta(alpha, s);
    if (!out.path.empty()) out.write(matrix_to_csv(lm.T));
    std::cout << "lambda_max," << num(top.lambda) << "\n";
    std::cout << "theta," << num(th) << "\n";
    std::cout << "gap," << num(th - top.lambda) << "\n";
    return top.lambda <= th + 1e-8 ? 0 : 1;
}

int run_stability_fn(const std::vector<double>& alphas, double s,
                     const std::vector<double>& epss, double C,
                     const Output& out) {
    Failure fail;
    std::vector<std::vector<std::string>> rows;
    for (double a : alphas) {
        const AlphaParam alpha(a);
        const AnalyticDisc B = pseudo_disc(0.0, s);
        for (double e : epss) {
            const BergmanFunction f = make_sharpness(alpha, e);
            const StabilityReport rep =
                check_stability_function(f, HyperbolicSet(B), C);
            if (!rep.bound_holds)
                fail.flag("alpha=" + num(a) + " eps=" + num(e) +
                          ": distance exceeds sqrt(M delta) at C=" + num(C));
            rows.push_back({num(a), num(s), num(e), num(rep.a0_sq),
                            num(rep.distance), num(rep.deficit),
                            num(rep.lhs_over_sqrt_deficit),
                            num(rep.min_admissible_C),
                            rep.bound_holds ? "1" : "0"});
        }
    }
    out.emit({"alpha", "s", "eps", "a0_sq", "distance", "deficit",
              "dist_over_sqrt_deficit", "min_C", "bound_holds"},
             rows);
    if (fail.failed) {
        std::cerr << "invariant violation: " << fail.witness << "\n";
        return 1;
    }
    return 0;
}

int run_stability_set(double alpha_v, double s,
                      const std::vector<double>& epss, double C, int nr,
                      int nt, double rmax, const Output& out) {
    const AlphaParam alpha(alpha_v);
    auto grid = std::make_shared<QuadratureGrid>(nr, nt, rmax);
    Failure fail;
    std::vector<std::vector<std::string>> rows;
    for (double e : epss) {
        const BergmanFunction f = make_sharpness(alpha, e).normalized();
        const GridMask mask = level_mask(f, s, grid);
        const SetStabilityReport rep =
            check_stability_set(f, HyperbolicSet(mask));
        if (rep.equality_case_violated)
            fail.flag("eps=" + num(e) + ": asymmetry " + num(rep.asym) +
                      " with zero deficit");
        rows.push_back({num(alpha_v), num(s), num(e), num(rep.asym),
                        num(rep.deficit), num(rep.bound_ratio),
                        num(K_s_alpha(alpha, s, C))});
    }
    out.emit({"alpha", "s", "eps", "asymmetry", "deficit", "asym_over_sqrt_deficit",
              "K_bound"},
             rows);
    if (fail.failed) {
        std::cerr << "invariant violation: " << fail.witness << "\n";
        return 1;
    }
    return 0;
}

int run_sharpness(double alpha_v, double s, const std::vector<double>& epss,
                  const Output& out) {
    const AlphaParam alpha(alpha_v);
    const AnalyticDisc B = pseudo_disc(0.0, s);
    const double c = c_alpha_s(alpha, s);
    std::vector<std::vector<std::string>> rows;
    for (double e : epss) {
        const BergmanFunction f = make_sharpness(alpha, e);
        const DeficitReport dr = deficit(f, HyperbolicSet(B));
        const double dist = distance_to_extremals(f.normalized());
        const double ratio =
            dr.deficit > 0.0 ? dist / std::sqrt(dr.deficit) : 0.0;
        rows.push_back({num(alpha_v), num(s), num(e), num(dist),
                        num(dr.deficit),
                        num(sharpness_deficit_closed(alpha, s, e)),
                        num(ratio), num(1.0 / std::sqrt(c))});
    }
    out.emit({"alpha", "s", "eps", "distance", "deficit_quad",
              "deficit_closed", "dist_over_sqrt_deficit", "c_inv_sqrt"},
             rows);
    return 0;
}

int run_audit(double C_probe, const Output& out) {
    AuditSweep sw = default_audit_sweep();
    sw.C_probe = C_probe;
    const std::vector<AuditRow> audit = audit_proof_inequalities(sw);
    Failure fail;
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : audit) {
        if (!r.pass)
            fail.flag(r.check_id + " (" + r.params + "): margin " +
                      num(r.margin));
        rows.push_back({r.check_id, r.params, num(r.margin),
                        r.hypothesis_met ? "1" : "0", r.pass ? "1" : "0"});
    }
    out.emit({"check_id", "params", "margin", "hypothesis_met", "pass"}, rows);
    if (fail.failed) {
        std::cerr << "invariant violation: " << fail.witness << "\n";
        return 1;
    }
    return 0;
}

int run_limits_fock(double area, const std::vector<double>& alphas,
                    const Output& out) {
    const FockFunction F{{1.0}};
    const std::vector<FockLimitRow> rows_data =
        fock_limit_experiment(F, area, alphas);
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rows_data)
        rows.push_back({num(r.alpha), num(r.s_alpha), num(r.value),
                        num(r.target), num(r.gap)});
    out.emit({"alpha", "s_alpha", "value", "target", "gap"}, rows);
    return 0;
}

int run_limits_hardy(const std::vector<double>& s_grid,
                     const std::vector<double>& alphas, const Output& out) {
    const std::vector<HardyLimitRow> rows_data =
        hardy_limit_experiment(s_grid, alphas);
    Failure fail;
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rows_data) {
        if (!r.gautschi_ok)
            fail.flag("gautschi sandwich failed at alpha=" + num(r.alpha));
        rows.push_back({num(r.alpha), num(r.s), num(r.theta_ratio),
                        num(r.theta_ratio_limit), num(r.constant),
                        num(r.constant_limit), num(r.coeff_ratio),
                        r.gautschi_ok ? "1" : "0"});
    }
    out.emit({"alpha", "s", "theta_ratio", "theta_ratio_limit", "constant",
              "constant_limit", "coeff_ratio_n5", "gautschi_ok"},
             rows);
    if (fail.failed) {
        std::cerr << "invariant violation: " << fail.witness << "\n";
        return 1;
    }
    return 0;
}

int run_transform_check(const std::vector<double>& betas, const Output& out) {
    Failure fail;
    std::vector<std::vector<std::string>> rows;
    for (double beta : betas) {
        const AlphaParam alpha(2.0 * beta - 1.0);
        // closed-form family: fhat = t^{(alpha+1)/2} e^{-(1+y0) t} e^{-i x0 t},
        // the Bergman image is a kernel at z0 = x0 + i y0.
        const complexd z0(0.4, 1.3);
        HalfPlaneSignal sig = make_signal(beta, [&](double t) {
            return std::pow(t, 0.5 * alpha.p1()) *
                   std::exp(complexd(0.0, -1.0) * std::conj(z0) * t) *
                   std::exp(-t);
        });
        // isometry through the disk side
        const DiskImage g(sig, alpha);
        const double n2_target = sig.norm2();
        auto grid = std::make_shared<QuadratureGrid>(220, 256, 0.9995);
        double n2_disk = 0.0;
        {
            const QuadratureGrid& gr = *grid;
            for (int j = 0; j < gr.n_radial(); ++j) {
                double ring = 0.0;
                for (int m = 0; m < gr.angular_count(); ++m)
                    ring += std::norm(g(gr.node(j, m)));
                n2_disk += ring * gr.radial_weights()[j] *
                           std::pow(1.0 - gr.radial_nodes()[j],
                                    alpha.value());
            }
            n2_disk *= kPi / gr.angular_count();
        }
        const double isom_rel = std::fabs(n2_disk - n2_target) / n2_target;

        // measure transfer on a hyperbolic ball
        const HalfPlaneDisc hpd = halfplane_pseudo_disc(z0, 4.0 * kPi);
        const double nu = nu_measure(hpd);
        const AnalyticDisc img = cayley_to_disc(hpd);
        const double mu_rel = std::fabs(img.s - nu / 4.0) / img.s;

        // deficit equality across the bridge
        const WaveletDeficitReport wd = wavelet_deficit(sig, hpd, beta);
        const BergmanFunction kern = kernel_function(alpha, img.center, 96);
        const DeficitReport dd = deficit(kern, HyperbolicSet(img));
        const double deficit_gap = std::fabs(wd.deficit - dd.deficit);

        if (isom_rel > 1e-5)
            fail.flag("beta=" + num(beta) + ": isometry residual " +
                      num(isom_rel));
        if (mu_rel > 1e-6)
            fail.flag("beta=" + num(beta) + ": measure transfer residual " +
                      num(mu_rel));
        if (deficit_gap > 1e-5)
            fail.flag("beta=" + num(beta) + ": deficit mismatch " +
                      num(deficit_gap));
        rows.push_back({num(beta), num(isom_rel), num(mu_rel),
                        num(wd.deficit), num(dd.deficit), num(deficit_gap)});
    }
    out.emit({"beta", "isometry_rel_err", "measure_rel_err",
              "wavelet_deficit", "disk_deficit", "deficit_gap"},
             rows);
    if (fail.failed) {
        std::cerr << "invariant violation: " << fail.witness << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypconc: concentration and stability experiments on the "
                 "weighted Bergman spaces of the disk"};
    app.require_subcommand(1);

    double alpha = 0.0, s = kPi, C = 1.0, rmax = 0.97, area = 1.0;
    std::string eps_list = "1e-1,1e-2,1e-3";
    std::string alphas_list, s_list, betas_list = "0.5,1,2";
    std::string grid_spec = "48x64";
    int basis_N = 32, n_sets = 50, n_funcs = 20;
    std::uint64_t seed = 7;
    std::string out_path, format = "csv";

    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "weight exponent alpha > -1");
        cmd->add_option("--s", s, "hyperbolic measure of the sets");
        cmd->add_option("--eps", eps_list, "comma list of perturbations");
        cmd->add_option("--grid", grid_spec, "NRxNT cell grid");
        cmd->add_option("--rmax", rmax, "grid truncation radius");
        cmd->add_option("--N", basis_N, "basis truncation");
        cmd->add_option("--C", C, "probe constant");
        cmd->add_option("--seed", seed, "RNG seed");
    };

    CLI::App* fk = app.add_subcommand(
        "faberkrahn", "random sets/functions against the sharp bound");
    add_common(fk);
    fk->add_option("--sets", n_sets, "number of random sets");
    fk->add_option("--funcs", n_funcs, "random functions per set");

    CLI::App* op = app.add_subcommand(
        "operator", "localization matrix and top eigenvalue on a disc");
    add_common(op);

    CLI::App* sf = app.add_subcommand(
        "stability-fn", "function-stability sweep on the two-mode family");
    add_common(sf);
    sf->add_option("--alphas", alphas_list, "comma list of alphas");

    CLI::App* st = app.add_subcommand(
        "stability-set", "set-stability sweep on level-set masks");
    add_common(st);

    CLI::App* sh = app.add_subcommand(
        "sharpness", "deficit/distance scaling of the two-mode family");
    add_common(sh);

    CLI::App* au = app.add_subcommand(
        "audit", "numeric audit of the checkable proof inequalities");
    add_common(au);

    CLI::App* lim = app.add_subcommand("limits", "endpoint regimes");
    lim->require_subcommand(1);
    CLI::App* lf = lim->add_subcommand("fock", "plane-rescaling limit");
    lf->add_option("--area", area, "Euclidean area of the plane set");
    lf->add_option("--alphas", alphas_list, "comma list of alphas");
    CLI::App* lh = lim->add_subcommand("hardy", "boundary-norm limit");
    lh->add_option("--s", s_list, "comma list of measures");
    lh->add_option("--alphas", alphas_list, "comma list of alphas");

    CLI::App* tc = app.add_subcommand(
        "transform-check", "half-plane/disk bridge residuals");
    tc->add_option("--beta", betas_list, "comma list of window orders");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Output out{out_path, format, app.get_subcommands().front()->get_name()};
        int nr = 48, nt = 64;
        {
            const auto xpos = grid_spec.find('x');
            if (xpos == std::string::npos)
                throw std::runtime_error("--grid expects NRxNT");
            nr = std::stoi(grid_spec.substr(0, xpos));
            nt = std::stoi(grid_spec.substr(xpos + 1));
        }
        if (fk->parsed())
            return run_faberkrahn(alpha, s, n_sets, n_funcs, basis_N, seed,
                                  nr, nt, rmax, out);
        if (op->parsed()) return run_operator(alpha, s, basis_N, out);
        if (sf->parsed())
            return run_stability_fn(
                alphas_list.empty() ? std::vector<double>{alpha}
                                    : parse_list(alphas_list),
                s, parse_list(eps_list), C, out);
        if (st->parsed())
            return run_stability_set(alpha, s, parse_list(eps_list), C, nr,
                                     nt, rmax, out);
        if (sh->parsed())
            return run_sharpness(alpha, s, parse_list(eps_list), out);
        if (au->parsed()) return run_audit(C, out);
        if (lf->parsed())
            return run_limits_fock(area,
                                   alphas_list.empty()
                                       ? std::vector<double>{16, 64, 256, 1024}
                                       : parse_list(alphas_list),
                                   out);
        if (lh->parsed())
            return run_limits_hardy(
                s_list.empty() ? std::vector<double>{kPi / 2.0, kPi, 3.0 * kPi}
                               : parse_list(s_list),
                alphas_list.empty()
                    ? std::vector<double>{-0.9, -0.99, -0.999}
                    : parse_list(alphas_list),
                out);
        if (tc->parsed()) return run_transform_check(parse_list(betas_list), out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
