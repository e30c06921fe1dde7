#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "betaflow/errors.hpp"
#include "betaflow/initial_measure.hpp"

using namespace betaflow;

namespace {

std::vector<double> roots_of(const std::string& text, std::size_t n) {
  const auto r = make_initial(InitialMeasureSpec::parse(text, n));
  return {r.roots().begin(), r.roots().end()};
}

}  // namespace

TEST(MakeInitial, UniformMidpoints) {
  EXPECT_EQ(roots_of("uniform:-1,1", 2), (std::vector<double>{-0.5, 0.5}));
  const auto r = roots_of("uniform:0,4", 4);
  EXPECT_EQ(r, (std::vector<double>{0.5, 1.5, 2.5, 3.5}));
}

TEST(MakeInitial, TwoAtoms) {
  EXPECT_EQ(roots_of("atoms:-1:0.5,1:0.5", 4), (std::vector<double>{-1, -1, 1, 1}));
  EXPECT_EQ(roots_of("atoms:2:3,-1:1", 4), (std::vector<double>{-1, 2, 2, 2}));
}

TEST(MakeInitial, SemicircleQuantiles) {
  const auto r = roots_of("semicircle:1", 4);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_NEAR(r[0], -r[3], 1e-12);
  EXPECT_NEAR(r[1], -r[2], 1e-12);
  const double levels[] = {0.125, 0.375, 0.625, 0.875};
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(semicircle_cdf(r[j], 1.0), levels[j], 1e-10);
    // independent check: F(x) = 1/2 + (x sqrt(4 - x^2))/(4 pi) + asin(x/2)/pi for radius 2
    const double x = r[j];
    EXPECT_NEAR(0.5 + x * std::sqrt(4 - x * x) / (4 * M_PI) + std::asin(x / 2) / M_PI, levels[j], 1e-10);
  }
}

TEST(SemicircleCdf, EndpointsAndScaling) {
  EXPECT_EQ(semicircle_cdf(-2.0, 1.0), 0.0);
  EXPECT_EQ(semicircle_cdf(2.0, 1.0), 1.0);
  EXPECT_NEAR(semicircle_cdf(0.0, 4.0), 0.5, 1e-15);
  EXPECT_NEAR(semicircle_cdf(1.0, 4.0), semicircle_cdf(0.5, 1.0), 1e-15);
  EXPECT_NEAR(semicircle_quantile(semicircle_cdf(0.7, 2.0), 2.0), 0.7, 1e-11);
}

TEST(InitialMeasureSpec, SupportBound) {
  EXPECT_EQ(InitialMeasureSpec::parse("uniform:-1,1", 4).support_bound(), 1.0);
  EXPECT_EQ(InitialMeasureSpec::parse("uniform:-3,0.5", 4).support_bound(), 3.0);
  EXPECT_NEAR(InitialMeasureSpec::parse("semicircle:4", 4).support_bound(), 4.0, 1e-15);
  EXPECT_EQ(InitialMeasureSpec::parse("atoms:-1:1,2:1", 4).support_bound(), 2.0);
}

TEST(InitialMeasureSpec, RoundTripText) {
  for (const char* text : {"uniform:-1,1", "semicircle:2.5", "atoms:-1:0.5,1:0.5"}) {
    const auto spec = InitialMeasureSpec::parse(text, 6);
    const auto again = InitialMeasureSpec::parse(spec.to_string(), 6);
    EXPECT_EQ(make_initial(spec), make_initial(again)) << text;
  }
}

TEST(InitialMeasureSpec, ExplicitFile) {
  const auto path = std::filesystem::temp_directory_path() / "betaflow_roots_test.txt";
  {
    std::ofstream out(path);
    out << "0.5\n-1.25\n\n3\n";
  }
  const auto spec = InitialMeasureSpec::parse("file:" + path.string(), 3);
  EXPECT_EQ(spec.support_bound(), 3.0);
  const auto r = make_initial(spec);
  EXPECT_EQ(std::vector<double>(r.roots().begin(), r.roots().end()), (std::vector<double>{-1.25, 0.5, 3}));
  EXPECT_THROW(make_initial(InitialMeasureSpec::parse("file:" + path.string(), 5)), InvalidParameter);
  std::filesystem::remove(path);
  EXPECT_THROW(InitialMeasureSpec::parse("file:" + path.string(), 3), IoError);
}

TEST(InitialMeasureSpec, RejectsBadSpecs) {
  EXPECT_THROW(InitialMeasureSpec::parse("gaussian:1", 4), InvalidParameter);
  EXPECT_THROW(InitialMeasureSpec::parse("uniform:1,-1", 4), InvalidParameter);
  EXPECT_THROW(InitialMeasureSpec::parse("uniform:1", 4), InvalidParameter);
  EXPECT_THROW(InitialMeasureSpec::parse("semicircle:-1", 4), InvalidParameter);
  EXPECT_THROW(InitialMeasureSpec::parse("atoms:1:0", 4), InvalidParameter);
  EXPECT_THROW(InitialMeasureSpec::parse("atoms:x:1", 4), InvalidParameter);
  EXPECT_THROW(InitialMeasureSpec::parse("uniform", 4), InvalidParameter);
  EXPECT_THROW(make_initial(InitialMeasureSpec::parse("uniform:-1,1", 1)), InvalidParameter);
}
