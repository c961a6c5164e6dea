#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fuzzylip/errors.hpp"
#include "fuzzylip/fuzzy_metric.hpp"
#include "support/oracles.hpp"

namespace {

using namespace fuzzylip;
using fuzzylip::testing::random_metric;

MetricMatrix three_apart() {
  // d(1,2) = 3 with 0-based indices 0 and 1.
  return MetricMatrix::from_rows({{0, 3, 1}, {3, 0, 2.5}, {1, 2.5, 0}});
}

EuclideanFuzzyMetric efm(MonotoneFunction phi, double g) {
  return EuclideanFuzzyMetric(std::move(phi), TimeScaling::constant(g), TNorm::lukasiewicz());
}

TEST(MetricMatrix, RejectsInvalidInput) {
  EXPECT_THROW(MetricMatrix::from_rows({}), ConstructionError);
  EXPECT_THROW(MetricMatrix::from_rows({{0, 1}, {1}}), ConstructionError);
  EXPECT_THROW(MetricMatrix::from_rows({{0, 1}, {2, 0}}), ConstructionError);
  EXPECT_THROW(MetricMatrix::from_rows({{1, 1}, {1, 0}}), ConstructionError);
  EXPECT_THROW(MetricMatrix::from_rows({{0, -1}, {-1, 0}}), ConstructionError);
  EXPECT_THROW(MetricMatrix::from_rows({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), ConstructionError);
  EXPECT_NO_THROW(MetricMatrix::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
}

TEST(EuclideanFuzzyMetric, StandardExamples) {
  const auto n = EuclideanFuzzyMetric::standard();
  EXPECT_DOUBLE_EQ(efm_eval(n, 0.0, 0.4, 1.0), 0.8);
  EXPECT_EQ(efm_eval(n, 0.0, 7.0, 3.0), 0.5);
  for (double x : {-3.0, 0.0, 2.5}) EXPECT_EQ(efm_eval(n, x, x, 0.7), 1.0);
  EXPECT_THROW(efm_eval(n, 0.0, 1.0, 0.0), DomainError);
}

TEST(EuclideanFuzzyMetric, NegativeMembershipIsAnError) {
  const auto bad = efm(MonotoneFunction::clamp(1, 1), 2.0);
  try {
    bad.membership(0.0, 0.9, 1.0);
    FAIL() << "expected InvalidMetricError";
  } catch (const InvalidMetricError& e) {
    EXPECT_EQ(e.x(), 0.0);
    EXPECT_EQ(e.y(), 0.9);
    EXPECT_EQ(e.t(), 1.0);
  }
}

TEST(EuclideanFuzzyMetric, SymmetricAndTranslationInvariant) {
  const auto n = EuclideanFuzzyMetric::standard();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    // Dyadic values keep x + c exact.
    const double x = std::ldexp(std::round(std::ldexp(u(rng), 10)), -10);
    const double y = std::ldexp(std::round(std::ldexp(u(rng), 10)), -10);
    const double c = std::ldexp(std::round(std::ldexp(u(rng), 10)), -10);
    EXPECT_EQ(efm_eval(n, x, y, 1.0), efm_eval(n, y, x, 1.0));
    EXPECT_EQ(efm_eval(n, x + c, y + c, 1.0), efm_eval(n, x, y, 1.0));
    const double m = efm_eval(n, x, y, 1.0);
    EXPECT_GT(m, 0.0);
    EXPECT_LE(m, 1.0);
  }
}

TEST(CodomainConditions, StandardPasses) {
  const auto report = validate_codomain_conditions(EuclideanFuzzyMetric::standard(), log_grid(1e-3, 1e3, 50),
                                       default_t_grid());
  EXPECT_TRUE(report.passed());
}

TEST(CodomainConditions, GTooLargeFailsItemThree) {
  const auto report =
      validate_codomain_conditions(efm(MonotoneFunction::clamp(1, 1), 2.0), log_grid(1e-3, 1e3, 50), default_t_grid());
  EXPECT_TRUE(report.zero_only_at_origin.passed);
  EXPECT_TRUE(report.phi_bounded.passed);
  ASSERT_FALSE(report.g_bounded.passed);
  ASSERT_TRUE(report.g_bounded.witness.has_value());
  EXPECT_EQ(report.g_bounded.witness_value, 2.0);
}

TEST(CodomainConditions, PositiveAtZeroFailsItemOne) {
  const auto phi = MonotoneFunction::piecewise_linear({{0, 0.1}, {1, 0.5}});
  const auto report = validate_codomain_conditions(efm(phi, 1.0), log_grid(1e-3, 1e3, 50), default_t_grid());
  ASSERT_FALSE(report.zero_only_at_origin.passed);
  EXPECT_EQ(report.zero_only_at_origin.witness, 0.0);
}

TEST(CodomainConditions, FlatStartFailsItemOne) {
  const auto phi = MonotoneFunction::piecewise_linear({{0, 0}, {1, 0}, {2, 0.5}});
  const auto report = validate_codomain_conditions(efm(phi, 1.0), log_grid(1e-3, 1e3, 50), default_t_grid());
  ASSERT_FALSE(report.zero_only_at_origin.passed);
  ASSERT_TRUE(report.zero_only_at_origin.witness.has_value());
  EXPECT_GT(*report.zero_only_at_origin.witness, 0.0);
}

TEST(CodomainConditions, UnboundedPhiFailsItemTwo) {
  const auto report =
      validate_codomain_conditions(efm(MonotoneFunction::linear(1.0), 1.0), log_grid(1e-3, 1e3, 50), default_t_grid());
  EXPECT_FALSE(report.phi_bounded.passed);
  EXPECT_FALSE(report.passed());
}

TEST(CodomainConditions, ReciprocalGrowth) {
  // g = 1/(1 + t) <= 1 and sup phi = 1/2.
  const EuclideanFuzzyMetric m(MonotoneFunction::clamp(2, 1), TimeScaling::reciprocal(AffineGrowth{1, 1}),
                               TNorm::lukasiewicz());
  EXPECT_TRUE(validate_codomain_conditions(m, log_grid(1e-3, 1e3, 30), default_t_grid()).passed());
  const EuclideanFuzzyMetric tight(MonotoneFunction::clamp(1, 1), TimeScaling::reciprocal(AffineGrowth{0.5, 1}),
                                   TNorm::lukasiewicz());
  EXPECT_FALSE(validate_codomain_conditions(tight, log_grid(1e-3, 1e3, 30), default_t_grid()).g_bounded.passed);
}

TEST(MkSpace, Examples) {
  const auto space = make_mk_space(three_apart(), 1.0, AffineGrowth{2.0, 1.0});
  EXPECT_NEAR(space.membership(0, 1, 1.0), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(space.membership(0, 0, 1.0), 1.0);
  EXPECT_THROW(space.membership(0, 1, 0.0), DomainError);
  EXPECT_EQ(space.tnorm(), TNorm::lukasiewicz());
  EXPECT_FALSE(space.is_stationary());
}

TEST(MkSpace, GrowthMustExceedK) {
  EXPECT_THROW(make_mk_space(three_apart(), 2.0, AffineGrowth{1.0, 1.0}), ConstructionError);
  EXPECT_THROW(make_mk_space(three_apart(), 1.0, AffineGrowth{1.0, 0.0}), ConstructionError);
  EXPECT_NO_THROW(make_mk_space(three_apart(), 2.0, ExponentialGrowth{1.0}));
}

TEST(ExpSpace, Examples) {
  const auto d = MetricMatrix::from_rows({{0, std::log(2.0)}, {std::log(2.0), 0}});
  const auto space = make_exp_space(d);
  for (double t : {0.01, 1.0, 100.0}) EXPECT_DOUBLE_EQ(space.membership(0, 1, t), 0.5);
  EXPECT_EQ(space.membership(1, 1, 3.0), 1.0);
  EXPECT_EQ(space.tnorm(), TNorm::product());
  EXPECT_TRUE(space.is_stationary());
  EXPECT_DOUBLE_EQ(exp_derived_metric(space)(0, 1), 0.5);
}

TEST(ExpSpace, StationaryExactly) {
  std::mt19937_64 rng(5);
  const auto space = make_exp_space(random_metric(rng, 6));
  const auto grid = default_t_grid();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      for (double t : grid) EXPECT_EQ(space.membership(i, j, t), space.membership(i, j, grid.front()));
}

TEST(ExpSpace, DerivedMapIsAMetric) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto space = make_exp_space(random_metric(rng, n));
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(space.gap(i, i, 1.0), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_EQ(space.gap(i, j, 1.0), space.gap(j, i, 1.0));
        if (i != j) EXPECT_GT(space.gap(i, j, 1.0), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
          EXPECT_LE(space.gap(i, k, 1.0), space.gap(i, j, 1.0) + space.gap(j, k, 1.0) + 1e-15);
        }
      }
    }
  }
}

TEST(Validator, PresetSpacesPass) {
  std::mt19937_64 rng(23);
  const auto t_grid = log_grid(1e-2, 1e2, 10);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto d = random_metric(rng, n);
    const auto mk = make_mk_space(d, 1.0, AffineGrowth{1.0, 1.0});
    const auto ex = make_exp_space(d);
    const auto eu = make_euclidean_space(EuclideanFuzzyMetric::standard(), {0.0, 0.3, 1.7, 2.0, 5.0});
    EXPECT_TRUE(validate_fuzzy_metric(mk, t_grid, t_grid).passed()) << trial;
    EXPECT_TRUE(validate_fuzzy_metric(ex, t_grid, t_grid).passed()) << trial;
    EXPECT_TRUE(validate_fuzzy_metric(eu, t_grid, t_grid).passed()) << trial;
  }
}

TEST(Validator, ExponentialGrowthPasses) {
  std::mt19937_64 rng(29);
  const auto space = make_mk_space(random_metric(rng, 5), 1.5, ExponentialGrowth{1.0});
  // e^t overflows past t ~ 709, where M_k is 1 to double precision.
  const auto grid = log_grid(1e-3, 1e2, 20);
  EXPECT_TRUE(validate_fuzzy_metric(space, grid, grid).passed());
}

TEST(Validator, NeedsTwoPoints) {
  const auto one = make_exp_space(MetricMatrix::from_rows({{0}}));
  EXPECT_THROW(validate_fuzzy_metric(one, default_t_grid(), default_t_grid()), DomainError);
}

struct Violation {
  const char* name;
  std::vector<MembershipTable> tables;
  AxiomVerdict FuzzyMetricReport::*axiom;
};

TEST(Validator, EachAxiomIsRefutedWithAWitness) {
  const std::vector<std::vector<double>> good{{1, 0.8, 0.7}, {0.8, 1, 0.9}, {0.7, 0.9, 1}};
  const std::vector<Violation> cases{
      {"positivity", {{0, {{1, 0, 0.7}, {0, 1, 0.9}, {0.7, 0.9, 1}}}}, &FuzzyMetricReport::positivity},
      {"identity", {{0, {{1, 1, 0.7}, {1, 1, 0.7}, {0.7, 0.7, 1}}}}, &FuzzyMetricReport::identity},
      {"symmetry", {{0, {{1, 0.8, 0.7}, {0.6, 1, 0.9}, {0.7, 0.9, 1}}}}, &FuzzyMetricReport::symmetry},
      {"triangle", {{0, {{1, 0.9, 0.1}, {0.9, 1, 0.9}, {0.1, 0.9, 1}}}}, &FuzzyMetricReport::triangle},
      {"monotone", {{0, good}, {2, {{1, 0.5, 0.7}, {0.5, 1, 0.9}, {0.7, 0.9, 1}}}}, &FuzzyMetricReport::monotone_in_t},
  };
  const auto grid = log_grid(1e-2, 1e2, 10);
  for (const auto& c : cases) {
    const auto space = make_table_space(c.tables, TNorm::lukasiewicz());
    const FuzzyMetricReport report = validate_fuzzy_metric(space, grid, grid);
    const AxiomVerdict& verdict = report.*(c.axiom);
    EXPECT_FALSE(verdict.passed) << c.name;
    EXPECT_TRUE(verdict.witness.has_value()) << c.name;
    EXPECT_FALSE(report.passed()) << c.name;
  }
  const auto baseline = make_table_space({{0, good}}, TNorm::lukasiewicz());
  EXPECT_TRUE(validate_fuzzy_metric(baseline, grid, grid).passed());
}

TEST(Validator, SymmetryWitnessNamesThePair) {
  const auto space =
      make_table_space({{0, {{1, 0.8, 0.7}, {0.6, 1, 0.9}, {0.7, 0.9, 1}}}}, TNorm::lukasiewicz());
  const auto grid = log_grid(1e-2, 1e2, 4);
  const auto report = validate_fuzzy_metric(space, grid, grid);
  ASSERT_TRUE(report.symmetry.witness.has_value());
  const auto& w = *report.symmetry.witness;
  EXPECT_TRUE((w.i == 0 && w.j == 1) || (w.i == 1 && w.j == 0));
}

TEST(Space, TableSelectsLatestStart) {
  const auto space = make_table_space({{0, {{1, 0.5}, {0.5, 1}}}, {2, {{1, 0.7}, {0.7, 1}}}}, TNorm::product());
  EXPECT_EQ(space.membership(0, 1, 1.0), 0.5);
  EXPECT_EQ(space.membership(0, 1, 2.0), 0.7);
  EXPECT_EQ(space.membership(0, 1, 50.0), 0.7);
}

}  // namespace
