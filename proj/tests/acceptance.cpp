// SPDX-License-Identifier: Apache-2.0
// Acceptance criteria: one PASS/FAIL line each, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dirac/verify.hpp"

#ifndef DIRACOP_PATH
#error "DIRACOP_PATH must name the command-line tool"
#endif

using namespace dirac;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

class Stopwatch {
  public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

Outcome suites_pass(const std::vector<std::string>& names, double max_tol_for_residual, double time_limit)
{
    VerifyOptions opt;
    opt.samples = 100;
    opt.seed = 7;
    Stopwatch sw;
    std::vector<IdentityCheck> all;
    for (const auto& n : names) {
        auto part = run_suite(n, opt);
        all.insert(all.end(), part.begin(), part.end());
    }
    double elapsed = sw.seconds();
    Outcome o;
    double worst = 0.0;
    int failed = 0;
    std::string first_failure;
    for (const auto& c : all) {
        if (!c.passed()) {
            ++failed;
            if (first_failure.empty()) first_failure = c.suite + ": " + c.name;
        }
        if (c.upper_bound && c.tolerance <= max_tol_for_residual) worst = std::max(worst, c.value);
    }
    o.ok = failed == 0 && worst <= max_tol_for_residual && elapsed <= time_limit;
    o.detail = std::to_string(all.size()) + " identities, " + std::to_string(failed) + " failed, max residual " +
               fmt(worst) + ", " + fmt(elapsed) + " s";
    if (!first_failure.empty()) o.detail += ", first failure: " + first_failure;
    return o;
}

Outcome require_identity_present(Outcome o, const std::vector<std::string>& suites, const std::string& fragment)
{
    VerifyOptions opt;
    opt.samples = 1;
    bool found = false;
    for (const auto& s : suites)
        for (const auto& c : run_suite(s, opt))
            if (c.name.find(fragment) != std::string::npos) found = true;
    if (!found) {
        o.ok = false;
        o.detail += ", missing identity '" + fragment + "'";
    }
    return o;
}

Outcome operator_identities()
{
    Outcome o = suites_pass({"clifford", "boosts", "projectors", "pryce_spin", "spin_types", "pauli_lubanski"}, 1e-12, 5.0);
    for (const char* f : {"{gamma^mu, gamma^nu}", "l_p l_-p = 1", "l_p^-1 gamma^a l_p", "Pi+^2 = Pi+", "S^2 = 3/4",
                          "{S_i, S_j}", "dX wedge p = s - S", "S = s(p) Pi+ + s(-p) Pi-", "S_Fr^2", "S_PC^2",
                          "C_PC = (m^2/E^2) S_Fr", "C_Fr = (E^2/m^2) S_PC", "p^mu W_mu = 0", "W^mu W_mu",
                          "U_FW H U_FW^-1", "U_FW S U_FW^-1"}) {
        o = require_identity_present(o, {"clifford", "boosts", "projectors", "pryce_spin", "spin_types", "pauli_lubanski"}, f);
    }
    return o;
}

Outcome commutator_table()
{
    VerifyOptions opt;
    opt.samples = 20;
    opt.seed = 7;
    Stopwatch sw;
    auto checks = run_suite("appendix_b", opt);
    double elapsed = sw.seconds();
    Outcome o;
    int failed = 0, fd = 0, pointwise = 0;
    for (const auto& c : checks) {
        if (!c.passed()) ++failed;
        if (c.tolerance == 1e-5) ++fd;
        if (c.tolerance == 1e-12) ++pointwise;
    }
    o.ok = failed == 0 && fd > 0 && pointwise > 0 && elapsed <= 30.0;
    o.detail = std::to_string(fd) + " FD identities at 1e-5, " + std::to_string(pointwise) +
               " pointwise at 1e-12, " + std::to_string(failed) + " failed, " + fmt(elapsed) + " s";
    for (const char* f : {"[Ks_i, Ks_j]", "[S_i, Ks_j]", "[Ko_i, Ks_j]", "[Ko_i, Ko_j]", "[X^i, V^j]", "[S_i, W^j]",
                          "[X^i, W^j]", "[X^i, W^0]", "[Xc^i, Xc^j]", "[Xd^i, Xd^j]"}) {
        bool found = false;
        for (const auto& c : checks)
            if (c.name.find(f) != std::string::npos) found = true;
        if (!found) {
            o.ok = false;
            o.detail += ", missing " + std::string(f);
        }
    }
    return o;
}

Outcome packet_closed_forms()
{
    Stopwatch sw;
    IsotropicProfile iso(1.0, 2.0, 1.0);
    PacketProfile prof = PacketProfile::isotropic(iso, 0.0, Vec3(0.3, -0.7, 1.1));
    StatisticsReport rep = expectation_and_dispersion(prof, {"P", "H", "X1", "X2", "X3", "P1", "P2", "P3"});
    double elapsed = sw.seconds();
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    double e_p = rel(rep.at("P").expectation, 2.0);
    double d_p = rel(rep.at("P").dispersion, 1.0);
    double h2 = rel(rep.at("H").second_moment, 6.0);
    double dx = 0.0, p2 = 0.0, ex = 0.0;
    Vec3 x0(0.3, -0.7, 1.1);
    for (int i = 0; i < 3; ++i) {
        std::string k = std::to_string(i + 1);
        dx = std::max(dx, rel(rep.at("X" + k).dispersion, 1.0 / 6.0));
        p2 = std::max(p2, rel(rep.at("P" + k).second_moment, 5.0 / 3.0));
        ex = std::max(ex, std::abs(rep.at("X" + k).expectation - x0[i]));
    }
    Outcome o;
    o.ok = e_p <= 1e-8 && d_p <= 1e-8 && h2 <= 1e-8 && dx <= 1e-6 && p2 <= 1e-6 && ex <= 1e-8 && elapsed <= 2.0;
    o.detail = "<P> " + fmt(e_p) + ", disp P " + fmt(d_p) + ", <H^2> " + fmt(h2) + ", disp X " + fmt(dx) +
               ", <(P^i)^2> " + fmt(p2) + ", <X> abs " + fmt(ex) + ", " + fmt(elapsed) + " s";
    return o;
}

Outcome figures()
{
    Stopwatch sw;
    auto f1 = figure_data(1, 1.0, 7.0, 60, 1.0);
    auto f2 = figure_data(2, 1.0, 7.0, 60, 1.0);
    double elapsed = sw.seconds();
    Outcome o;
    std::string problems;
    for (std::size_t k = 0; k < f1.size(); ++k) {
        if (!(f1[k].first > 1.0)) problems += " H-ratio<=1";
        if (!(f1[k].second > 0.0 && f1[k].second < 1.0)) problems += " dispH-range";
        if (!(f2[k].first > 0.0 && f2[k].first < 1.0)) problems += " V-ratio-range";
        if (!(f2[k].second > 0.0)) problems += " dispV<=0";
        if (k > 0) {
            if (!(f1[k].first < f1[k - 1].first)) problems += " H-ratio-not-decreasing";
            if (!(f1[k].second > f1[k - 1].second)) problems += " dispH-not-increasing";
            if (!(f2[k].first > f2[k - 1].first)) problems += " V-ratio-not-increasing";
            if (!(f2[k].second < f2[k - 1].second)) problems += " dispV-not-decreasing";
        }
        if (!problems.empty()) break;
    }
    const auto& l1 = f1.back();
    const auto& l2 = f2.back();
    if (std::abs(l1.q - 7.0) > 1e-12) problems += " last-q";
    if (std::abs(l1.first - 1.0) > 0.2 || std::abs(l1.second - 1.0) > 0.2 || std::abs(l2.first - 1.0) > 0.2) {
        problems += " endpoint";
    }
    if (!(l2.second < 1e-3 * f2.front().second * 10)) problems += " dispV-not-small";
    o.ok = problems.empty() && elapsed <= 10.0;
    o.detail = "q=7: <H>/E " + fmt(l1.first) + ", 2g disp H/p " + fmt(l1.second) + ", <V>/V " + fmt(l2.first) +
               ", disp V " + fmt(l2.second) + ", " + fmt(elapsed) + " s" + problems;
    return o;
}

Outcome single_suite(const std::string& name, const std::vector<std::string>& required)
{
    Outcome o = suites_pass({name}, 1.0, 60.0);
    for (const auto& f : required) o = require_identity_present(o, {name}, f);
    return o;
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_determinism()
{
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("diracop_accept_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(dir);
    auto run = [&](const std::string& args, const fs::path& out) {
        std::string cmd = std::string("\"") + DIRACOP_PATH + "\" " + args + " --out \"" + out.string() + "\"";
        return std::system(cmd.c_str());
    };
    Outcome o;
    int rc = 0;
    rc |= run("verify --suite all --seed 7", dir / "v1.csv");
    rc |= run("verify --suite all --seed 7", dir / "v2.csv");
    rc |= run("figures --which 1", dir / "f1.csv");
    rc |= run("figures --which 1", dir / "f2.csv");
    std::string v1 = read_file(dir / "v1.csv"), v2 = read_file(dir / "v2.csv");
    std::string f1 = read_file(dir / "f1.csv"), f2 = read_file(dir / "f2.csv");
    o.ok = rc == 0 && !v1.empty() && !f1.empty() && v1 == v2 && f1 == f2;
    o.detail = "exit codes " + std::string(rc == 0 ? "0" : "non-zero") + ", verify " + std::to_string(v1.size()) +
               " bytes " + (v1 == v2 ? "identical" : "DIFFER") + ", figures " + std::to_string(f1.size()) + " bytes " +
               (f1 == f2 ? "identical" : "DIFFER");
    fs::remove_all(dir);
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        const char* title;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"operator identities", operator_identities},
        {"associated-operator commutators", commutator_table},
        {"isotropic packet closed forms", packet_closed_forms},
        {"figure 1/2 reproduction", figures},
        {"polarization bases",
         [] {
             return single_suite("polarization", {"xi^dagger xi' = delta", "p.Sigma = |p| sigma_3", "p.Omega = 0",
                                                  "Omega anti-hermitian", "pole error"});
         }},
        {"mode spinors", [] { return single_suite("mode_spinors", {"(gamma p - m) u = 0", "sum u u^dagger = Pi+", "n(0) = 1"}); }},
        {"oscillating kernels",
         [] {
             return single_suite("kernels", {"= offdiag(parent)", "dK/dt = 2iE K", "A(+-)^dagger",
                                             "pseudoscalar parent has no diagonal part"});
         }},
        {"wigner little group", [] { return single_suite("wigner", {"D unitary", "independent of p", "on the grid"}); }},
        {"cli determinism", cli_determinism},
    };
    int failures = 0;
    int index = 1;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.ok) ++failures;
        std::cout << (o.ok ? "PASS" : "FAIL") << " [" << index++ << "] " << c.title << ": " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
