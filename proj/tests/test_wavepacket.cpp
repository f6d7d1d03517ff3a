// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "dirac/wavepacket.hpp"
#include "support.hpp"

using namespace dirac;

TEST(GaussLegendre, NodesAreLegendreRoots)
{
    for (int n : {1, 2, 5, 16, 40}) {
        Rule1D r = gauss_legendre(n, -1.0, 1.0);
        double wsum = 0.0;
        for (int k = 0; k < n; ++k) {
            EXPECT_NEAR(std::legendre(n, r.nodes[k]), 0.0, 1e-12) << n;
            if (k > 0) {
                EXPECT_LT(r.nodes[k - 1], r.nodes[k]);
            }
            wsum += r.weights[k];
        }
        EXPECT_NEAR(wsum, 2.0, 1e-14);
    }
    EXPECT_THROW(gauss_legendre(0, 0.0, 1.0), std::invalid_argument);
}

TEST(GaussLegendre, ExactForPolynomials)
{
    Rule1D r = gauss_legendre(8, 0.0, 3.0);
    for (int deg = 0; deg <= 15; ++deg) {
        std::vector<double> t;
        for (std::size_t k = 0; k < r.nodes.size(); ++k) t.push_back(r.weights[k] * std::pow(r.nodes[k], deg));
        double exact = std::pow(3.0, deg + 1) / (deg + 1);
        EXPECT_NEAR(pairwise_sum(t) / exact, 1.0, 1e-13) << deg;
    }
}

TEST(GIntegral, GammaFunctionReductions)
{
    for (double nu : {0.75, 1.5, 2.25, 4.0}) {
        for (double mu : {0.5, 2.0, 6.0}) {
            double one = std::tgamma(2 * nu) / std::pow(mu, 2 * nu);
            EXPECT_NEAR(g_integral(nu, 1.0, mu, 1.3) / one, 1.0, 1e-12);
            double m = 0.7;
            double two = std::tgamma(2 * nu + 2) / std::pow(mu, 2 * nu + 2) + m * m * one;
            EXPECT_NEAR(g_integral(nu, 2.0, mu, m) / two, 1.0, 1e-12);
            double massless = std::tgamma(2 * nu + 2 * 0.5 - 2) / std::pow(mu, 2 * nu + 2 * 0.5 - 2);
            if (2 * nu + 2 * 0.5 - 2 > 0) {
                EXPECT_NEAR(g_integral(nu, 0.5, mu, 1e-300) / massless, 1.0, 1e-10);
            }
        }
    }
    EXPECT_THROW(g_integral(1.0, 1.0, 0.0, 1.0), DomainError);
    EXPECT_THROW(g_integral(0.0, 1.0, 1.0, 1.0), DomainError);
}

TEST(IsotropicProfile, Validation)
{
    EXPECT_THROW(IsotropicProfile(1.0, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(IsotropicProfile(0.0, 2.0, 1.0), std::invalid_argument);
    EXPECT_THROW(IsotropicProfile(1.0, 2.0, 0.0), MassError);
    IsotropicProfile iso(1.0, 2.0, 1.0);
    EXPECT_THROW(PacketProfile::isotropic(iso, -0.1), std::invalid_argument);
    EXPECT_THROW(PacketProfile::isotropic(iso, 4.0), std::invalid_argument);
}

TEST(IsotropicProfile, MeanEnergyAgainstHighPrecisionReference)
{
    // 30-digit values of (2g)^{2q}/Gamma(2q) int p^{2q-1} e^{-2gp} sqrt(p^2+m^2) dp
    struct Case {
        double gamma, pbar, m, mean_energy;
    };
    for (const Case& c : {Case{1.0, 2.0, 1.0, 2.2811549755046532757}, Case{1.0, 4.0, 1.0, 4.1386408751064761492},
                          Case{0.5, 5.0, 1.0, 5.1210047244427312626}, Case{2.0, 1.0, 1.5, 1.8458269955031637666}}) {
        IsotropicProfile iso(c.gamma, c.pbar, c.m);
        EXPECT_NEAR(iso.mean_energy() / c.mean_energy, 1.0, 1e-13);
    }
}

TEST(Packet, ClosedFormsAtDefaultGrid)
{
    IsotropicProfile iso(1.0, 2.0, 1.0);
    PacketProfile prof = PacketProfile::isotropic(iso, 0.0, Vec3(0.5, -1.0, 2.0));
    StatisticsReport rep = expectation_and_dispersion(prof, {"P", "H", "X1", "X3", "S3", "P2"});
    EXPECT_NEAR(rep.at("P").expectation, 2.0, 1e-8);
    EXPECT_NEAR(rep.at("P").dispersion, 1.0, 1e-8);
    EXPECT_NEAR(rep.at("H").second_moment, 6.0, 6e-8);
    EXPECT_NEAR(rep.at("X1").expectation, 0.5, 1e-8);
    EXPECT_NEAR(rep.at("X3").expectation, 2.0, 1e-8);
    EXPECT_NEAR(rep.at("X1").dispersion, 1.0 / 6.0, 1e-6 / 6.0);
    EXPECT_NEAR(rep.at("S3").expectation, 0.5, 1e-10);
    EXPECT_NEAR(rep.at("S3").dispersion, 0.0, 1e-14);
    EXPECT_NEAR(rep.at("P2").second_moment, 5.0 / 3.0, 1e-6 * 5.0 / 3.0);
    EXPECT_THROW(rep.at("Q"), std::out_of_range);
}

TEST(Packet, UnnormalizedProfileIsRejected)
{
    IsotropicProfile iso(1.0, 2.0, 1.0);
    PacketProfile prof = PacketProfile::isotropic(iso);
    auto base = prof.phi;
    prof.phi = [base](const Vec3& p) { return 2.0 * base(p); };
    EXPECT_THROW(expectation_and_dispersion(prof, {"P"}), DomainError);
}

TEST(Packet, SpreadingIsQuadraticInTime)
{
    IsotropicProfile iso(1.0, 2.0, 1.0);
    PacketProfile prof = PacketProfile::isotropic(iso);
    GridSizes coarse{80, 16, 32};
    Vec3 d0 = position_dispersion_at_time(prof, 0.0, coarse);
    Vec3 d1 = position_dispersion_at_time(prof, 1.0, coarse);
    Vec3 d2 = position_dispersion_at_time(prof, 2.0, coarse);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(d2[i] - d0[i], 4.0 * (d1[i] - d0[i]), 1e-10);
    EXPECT_THROW(position_dispersion_at_time(prof, -1.0), std::invalid_argument);
}

TEST(ConeFilter, IsotropicRadialStatisticsMatchClosedForms)
{
    IsotropicProfile iso(1.5, 3.0, 1.0);
    PacketProfile prof = PacketProfile::isotropic(iso);
    ConeFilterResult r = cone_filter(prof, Vec3(0, 0.6, 0.8), 1e-3);
    double four_pi = 4.0 * std::numbers::pi;
    EXPECT_NEAR(r.kappa * four_pi, 1.0, 1e-10);
    EXPECT_NEAR(r.stats.mean_momentum, iso.mean_momentum(), 1e-10);
    EXPECT_NEAR(r.stats.momentum_dispersion, iso.momentum_dispersion(), 1e-10);
    EXPECT_NEAR(r.stats.mean_energy, iso.mean_energy(), 1e-10);
    EXPECT_NEAR(r.stats.energy_dispersion, iso.mean_energy_squared() - std::pow(iso.mean_energy(), 2), 1e-10);
    EXPECT_NEAR(r.stats.mean_velocity, iso.mean_velocity(), 1e-10);
    EXPECT_NEAR(r.probability, std::pow(1e-3 * r.kappa, 2), 1e-20);
    EXPECT_THROW(cone_filter(prof, Vec3(0, 0, 2), 1e-3), DomainError);
    EXPECT_THROW(cone_filter(prof, Vec3(0, 0, 1), 0.0), std::invalid_argument);
}

TEST(Figures, SamplingAndValidation)
{
    auto rows = figure_data(1, 1.0, 7.0, 60);
    ASSERT_EQ(rows.size(), 60u);
    EXPECT_DOUBLE_EQ(rows.front().q, 1.1);
    EXPECT_DOUBLE_EQ(rows.back().q, 7.0);
    EXPECT_THROW(figure_data(3, 1.0, 7.0, 60), std::invalid_argument);
    EXPECT_THROW(figure_data(1, 0.5, 7.0, 60), std::invalid_argument);
    EXPECT_THROW(figure_data(1, 7.0, 7.0, 60), std::invalid_argument);
    EXPECT_THROW(figure_data(1, 1.0, 7.0, 0), std::invalid_argument);
}

TEST(Figures, EnergyRatioAgainstDirectRadialIntegral)
{
    // <H> from one-dimensional Gauss-Legendre on the radial density, independent of G
    for (double q : {1.5, 3.0, 6.0}) {
        IsotropicProfile iso(1.0, q, 1.0);
        Rule1D r = gauss_legendre(400, 0.0, q + 60.0);
        std::vector<double> n, h;
        for (std::size_t k = 0; k < r.nodes.size(); ++k) {
            double p = r.nodes[k];
            double d = r.weights[k] * 4.0 * std::numbers::pi * p * p * std::pow(iso.radial(p), 2);
            n.push_back(d);
            h.push_back(d * std::sqrt(p * p + 1.0));
        }
        EXPECT_NEAR(pairwise_sum(n), 1.0, 1e-7);
        EXPECT_NEAR(pairwise_sum(h), iso.mean_energy(), 1e-7 * iso.mean_energy());
    }
}
