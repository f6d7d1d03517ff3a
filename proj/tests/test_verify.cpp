// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "dirac/verify.hpp"
#include "support.hpp"

using namespace dirac;

TEST(Format, SeventeenSignificantDigits)
{
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(2.0), "2");
    EXPECT_EQ(format_number(1e-30), "1.0000000000000001e-30");
}

TEST(Random, SplitMixReferenceSequence)
{
    // first outputs of SplitMix64 seeded with 0
    SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
    EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(Random, MomentaWithinRange)
{
    SplitMix64 rng(3);
    for (int k = 0; k < 1000; ++k) {
        Momentum q = random_momentum(rng, 2.0);
        EXPECT_GE(q.norm(), 0.02 * (1 - 1e-12));
        EXPECT_LE(q.norm(), 20.0 * (1 + 1e-12));
    }
}

TEST(ProbeSpinor, GradientMatchesDifferences)
{
    SplitMix64 rng(5);
    WaveSpinor w = probe_spinor(rng, Vec3(0.3, -0.2, 0.1), 1.0);
    WaveSpinor bare{w.value, {}};
    Vec3 p(0.5, 0.1, -0.4);
    auto exact = w.gradient(p);
    auto fd = gradient_of(bare, p, 1.0);
    for (int i = 0; i < 3; ++i) EXPECT_LT(testing_support::gap(exact[i], fd[i]), 1e-9);
}

TEST(Suites, KnownNamesAndUnknownRejected)
{
    EXPECT_EQ(suite_names().size(), 12u);
    EXPECT_THROW(run_suite("nope", VerifyOptions{}), std::invalid_argument);
}

TEST(Suites, ForcedFailureWithUnreachableTolerance)
{
    VerifyOptions opt;
    opt.samples = 5;
    opt.tolerance = 1e-30;
    auto checks = run_suite("boosts", opt);
    EXPECT_TRUE(std::any_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return !c.passed(); }));
}

TEST(Suites, ReportIsDeterministic)
{
    VerifyOptions opt;
    opt.samples = 10;
    std::ostringstream a, b;
    write_report(a, run_suite("spin_types", opt));
    write_report(b, run_suite("spin_types", opt));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().rfind("suite,identity,value,tolerance,bound,status\n", 0), 0u);
}

TEST(Suites, LowerBoundChecks)
{
    IdentityCheck c{"s", "n", 0.5, 1e-6, false};
    EXPECT_TRUE(c.passed());
    c.value = 1e-9;
    EXPECT_FALSE(c.passed());
}
