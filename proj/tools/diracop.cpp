// SPDX-License-Identifier: Apache-2.0
// diracop: verification suites, packet statistics, figure tables and kernels.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dirac/verify.hpp"

namespace {

using namespace dirac;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string suite = "all";
    int samples = 100;
    std::uint64_t seed = 7;
    std::optional<double> tol;
    double mass = 1.0;

    double gamma = 1.0;
    double pbar = 2.0;
    double theta_s = 0.0;
    std::vector<double> x0{0.0, 0.0, 0.0};
    GridSizes grid;

    int which = 1;
    double q_min = 1.0;
    double q_max = 7.0;
    int points = 60;
    double gamma_m = 1.0;

    std::string name;
    std::vector<double> p{0.3, 0.4, 0.5};
    double t = 0.0;
    std::string basis = "common";

    std::string out;
};

Vec3 to_vec3(const std::vector<double>& v, const char* flag)
{
    if (v.size() != 3) throw UsageError(std::string(flag) + " needs three comma-separated numbers");
    return Vec3(v[0], v[1], v[2]);
}

PolarizationBasis parse_basis(const std::string& s)
{
    if (s == "common") return PolarizationBasis::common();
    if (s == "helicity") return PolarizationBasis::helicity();
    throw UsageError("basis must be common or helicity");
}

std::string csv_optional(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string();
}

double relative_gap(double value, double reference)
{
    double gap = std::abs(value - reference);
    return reference != 0.0 ? gap / std::abs(reference) : gap;
}

int run_verify(const RunConfig& cfg, std::ostream& os)
{
    if (cfg.samples < 1) throw UsageError("samples must be positive");
    if (cfg.suite != "all" && std::find(suite_names().begin(), suite_names().end(), cfg.suite) == suite_names().end()) {
        throw UsageError("unknown suite: " + cfg.suite);
    }
    VerifyOptions opt;
    opt.samples = cfg.samples;
    opt.seed = cfg.seed;
    opt.tolerance = cfg.tol;
    opt.mass = cfg.mass;
    auto checks = run_suite(cfg.suite, opt);
    write_report(os, checks);
    bool ok = std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed(); });
    return ok ? 0 : kExitFailure;
}

struct ClosedForm {
    std::optional<double> expectation;
    std::optional<double> dispersion;
};

ClosedForm closed_form(const std::string& name, const IsotropicProfile& iso, double theta_s, const Vec3& x0)
{
    ClosedForm c;
    double sc = std::cos(theta_s) / 2.0;
    double ss = std::sin(theta_s) / 2.0;
    if (name == "P") {
        c.expectation = iso.mean_momentum();
        c.dispersion = iso.momentum_dispersion();
    } else if (name == "H") {
        double h = iso.mean_energy();
        c.expectation = h;
        c.dispersion = iso.mean_energy_squared() - h * h;
    } else if (name == "V") {
        double v = iso.mean_velocity();
        c.expectation = v;
        c.dispersion = iso.mean_velocity_squared() - v * v;
    } else if (name.size() == 2 && name[1] >= '1' && name[1] <= '3') {
        int i = name[1] - '1';
        switch (name[0]) {
        case 'P':
            c.expectation = 0.0;
            c.dispersion = iso.cartesian_momentum_second_moment();
            break;
        case 'X':
            c.expectation = x0[i];
            c.dispersion = iso.position_dispersion();
            break;
        case 'S': {
            double e = i == 0 ? ss : (i == 1 ? 0.0 : sc);
            c.expectation = e;
            c.dispersion = 0.25 - e * e;
            break;
        }
        default: break;
        }
    }
    return c;
}

int run_packet(const RunConfig& cfg, std::ostream& os)
{
    if (!(cfg.gamma * cfg.pbar > 1.0)) throw UsageError("gamma * pbar must exceed 1");
    if (cfg.grid.radial < 2 || cfg.grid.cos_theta < 2 || cfg.grid.phi < 1) throw UsageError("grid sizes too small");
    Vec3 x0 = to_vec3(cfg.x0, "--x0");
    IsotropicProfile iso(cfg.gamma, cfg.pbar, cfg.mass);
    PacketProfile profile = PacketProfile::isotropic(iso, cfg.theta_s, x0);
    profile.basis = parse_basis(cfg.basis);
    StatisticsReport rep = expectation_and_dispersion(profile, observable_names(), cfg.grid);
    bool common_e3 = profile.basis.kind() == PolarizationBasis::Kind::Common;
    os << "name,expectation,dispersion,uncertainty,closed_form_expectation,closed_form_dispersion,rel_error\n";
    for (const auto& s : rep.rows) {
        ClosedForm cf;
        if (common_e3 || s.name[0] != 'S') cf = closed_form(s.name, iso, cfg.theta_s, x0);
        std::optional<double> rel;
        if (cf.expectation) rel = relative_gap(s.expectation, *cf.expectation);
        if (cf.dispersion) rel = std::max(rel.value_or(0.0), relative_gap(s.dispersion, *cf.dispersion));
        os << s.name << ',' << format_number(s.expectation) << ',' << format_number(s.dispersion) << ','
           << format_number(s.uncertainty) << ',' << csv_optional(cf.expectation) << ','
           << csv_optional(cf.dispersion) << ',' << csv_optional(rel) << '\n';
    }
    return 0;
}

int run_figures(const RunConfig& cfg, std::ostream& os)
{
    if (cfg.which != 1 && cfg.which != 2) throw UsageError("--which must be 1 or 2");
    if (!(cfg.q_min >= 1.0) || !(cfg.q_max > cfg.q_min)) throw UsageError("need 1 <= q-min < q-max");
    if (cfg.points < 1) throw UsageError("points must be positive");
    auto rows = figure_data(cfg.which, cfg.q_min, cfg.q_max, cfg.points, cfg.gamma_m);
    os << (cfg.which == 1 ? "q,mean_energy_ratio,scaled_energy_dispersion\n" : "q,mean_velocity_ratio,velocity_dispersion\n");
    for (const auto& r : rows) os << format_number(r.q) << ',' << format_number(r.first) << ',' << format_number(r.second) << '\n';
    return 0;
}

void print_matrix(std::ostream& os, const std::string& label, const Eigen::MatrixXcd& m)
{
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            os << label << ',' << r << ',' << c << ',' << format_number(m(r, c).real()) << ','
               << format_number(m(r, c).imag()) << ',' << format_number(std::abs(m(r, c))) << '\n';
        }
}

int run_kernel(const RunConfig& cfg, std::ostream& os)
{
    const OscillatingKernel* kernel = nullptr;
    for (const auto& k : kernel_catalog())
        if (k.name == cfg.name) kernel = &k;
    if (!kernel) throw UsageError("unknown kernel: " + cfg.name);
    Momentum q(to_vec3(cfg.p, "--p"), cfg.mass);
    PolarizationBasis basis = parse_basis(cfg.basis);
    os << "label,row,col,re,im,abs\n";
    double phase_gap = 0.0;
    double diagonal = 0.0;
    cplx phase = std::exp(I * OscillatingKernel::frequency(q) * cfg.t);
    for (int c = 0; c < kernel->components; ++c) {
        Mat2 k = (*kernel)(c, cfg.t, q, basis);
        print_matrix(os, "K" + std::to_string(c + 1), k);
        phase_gap = std::max(phase_gap, residual(k, Mat2(phase * (*kernel)(c, 0.0, q, basis))));
        auto parent = [kernel, c](const Momentum& k) { return kernel->parent(c, k); };
        AssociatedPair d = matrix_elements_diag(parent, q, basis);
        diagonal = std::max({diagonal, max_abs(d.particle), max_abs(d.antiparticle)});
    }
    os << "# frequency 2E(p)," << format_number(OscillatingKernel::frequency(q)) << '\n';
    os << "# phase 2E(p)t," << format_number(OscillatingKernel::frequency(q) * cfg.t) << '\n';
    os << "# max |K(t) - exp(2iEt) K(0)|," << format_number(phase_gap) << '\n';
    os << "# max |diagonal parent part|," << format_number(diagonal) << '\n';
    return 0;
}

int run_operator(const RunConfig& cfg, std::ostream& os)
{
    const FourierEvaluator* f = nullptr;
    try {
        f = &fourier_operator(cfg.name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Momentum q(to_vec3(cfg.p, "--p"), cfg.mass);
    auto parts = (*f)(q);
    os << "label,row,col,re,im,abs\n";
    for (std::size_t i = 0; i < parts.size(); ++i) print_matrix(os, cfg.name + "[" + std::to_string(i) + "]", parts[i]);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dirac field operator toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value configuration file");
    RunConfig cfg;

    app.add_option("--mass", cfg.mass, "fermion mass")->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out, "output path (stdout when omitted)");
    app.add_option("--suite", cfg.suite, "verification suite");
    app.add_option("--samples", cfg.samples, "random momenta per suite");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--tol", cfg.tol, "tolerance override for every identity");
    app.add_option("--gamma", cfg.gamma, "packet width parameter");
    app.add_option("--pbar", cfg.pbar, "mean momentum");
    app.add_option("--theta-s", cfg.theta_s, "polarization angle in [0, pi]");
    app.add_option("--x0", cfg.x0, "initial position x,y,z")->delimiter(',')->expected(3);
    app.add_option("--grid-radial", cfg.grid.radial, "radial nodes");
    app.add_option("--grid-cos", cfg.grid.cos_theta, "polar-angle nodes");
    app.add_option("--grid-phi", cfg.grid.phi, "azimuthal nodes");
    app.add_option("--which", cfg.which, "figure 1 or 2");
    app.add_option("--q-min", cfg.q_min, "lower end of the q range (excluded)");
    app.add_option("--q-max", cfg.q_max, "upper end of the q range");
    app.add_option("--points", cfg.points, "number of q samples");
    app.add_option("--gamma-m", cfg.gamma_m, "gamma times mass for figures");
    app.add_option("--name", cfg.name, "kernel or operator name");
    app.add_option("--p", cfg.p, "momentum px,py,pz")->delimiter(',')->expected(3);
    app.add_option("--t", cfg.t, "time");
    app.add_option("--basis", cfg.basis, "polarization basis: common or helicity");

    auto* verify = app.add_subcommand("verify", "run identity suites")->fallthrough();
    auto* packet = app.add_subcommand("packet", "isotropic packet statistics")->fallthrough();
    auto* figures = app.add_subcommand("figures", "figure data tables")->fallthrough();
    auto* kernel = app.add_subcommand("kernel", "evaluate an oscillating kernel")->fallthrough();
    auto* op = app.add_subcommand("operator", "evaluate a momentum-space operator")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    std::ostringstream buffer;
    int code = 0;
    try {
        if (*verify) code = run_verify(cfg, buffer);
        else if (*packet) code = run_packet(cfg, buffer);
        else if (*figures) code = run_figures(cfg, buffer);
        else if (*kernel) code = run_kernel(cfg, buffer);
        else if (*op) code = run_operator(cfg, buffer);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (cfg.out.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << cfg.out << '\n';
            return kExitUsage;
        }
        file << buffer.str();
    }
    return code;
}
