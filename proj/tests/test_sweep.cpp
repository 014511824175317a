#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "gbec/sweep.hpp"

using namespace gbec;
using sweep::Grid;
using sweep::SweepTable;

TEST(Grid, Parse) {
  const auto g = Grid::parse("0.05:0.95:19");
  EXPECT_EQ(g.min, 0.05);
  EXPECT_EQ(g.max, 0.95);
  EXPECT_EQ(g.steps, 19);
  EXPECT_EQ(g.points().size(), 19u);
  EXPECT_NEAR(g.points()[1], 0.1, 1e-15);
  EXPECT_EQ(Grid::parse(g.str()).str(), g.str());
  EXPECT_THROW(Grid::parse("0.1:0.9"), DomainError);
  EXPECT_THROW(Grid::parse("0.9:0.1:5"), DomainError);
  EXPECT_THROW(Grid::parse("0.1:0.9:1"), DomainError);
  EXPECT_THROW(Grid::parse("0.1:0.9:2.5"), DomainError);
  EXPECT_THROW(Grid::parse("a:b:c"), DomainError);
}

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(sweep::format_number(0.1), "0.1");
  EXPECT_EQ(sweep::format_number(1e-20), "1e-20");
  EXPECT_EQ(sweep::format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(sweep::format_number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_THROW(sweep::parse_number("1.5x"), std::invalid_argument);
}

TEST(Csv, RoundTripPreservesTable) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> mantissa(-10.0, 10.0);
  std::uniform_int_distribution<int> exponent(-30, 30);
  for (int trial = 0; trial < 50; ++trial) {
    SweepTable table;
    table.header = {"t", "a", "b"};
    for (int r = 0; r < 20; ++r) {
      std::vector<double> row;
      for (int c = 0; c < 3; ++c) {
        // Values already at 12 significant digits survive exactly.
        const double v = std::stod(sweep::format_number(mantissa(rng) * std::pow(10.0, exponent(rng))));
        row.push_back(v);
      }
      if (r == 7) row[2] = std::numeric_limits<double>::quiet_NaN();
      table.rows.push_back(row);
    }
    const std::string text = sweep::to_csv(table);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    const auto back = sweep::parse_csv(text);
    EXPECT_TRUE(sweep::same_table(table, back));
    EXPECT_EQ(sweep::to_csv(back), text);
  }
}

TEST(Csv, RejectsMalformedInput) {
  EXPECT_THROW(sweep::parse_csv(""), DomainError);
  EXPECT_THROW(sweep::parse_csv("t,a\n1,2,3\n"), DomainError);
  EXPECT_THROW(sweep::parse_csv("t,a\n1,x\n"), DomainError);
}

TEST(Json, RowsAndNulls) {
  SweepTable table;
  table.header = {"t", "v"};
  table.rows = {{0.1, 2.0}, {0.2, std::numeric_limits<double>::quiet_NaN()}};
  table.failures = {{0.2, "boom"}};
  const auto j = sweep::to_json(table, {{"geometry", "iso"}});
  EXPECT_EQ(j["meta"]["geometry"], "iso");
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][0]["v"], 2.0);
  EXPECT_TRUE(j["rows"][1]["v"].is_null());
  EXPECT_EQ(j["failures"][0]["error"], "boom");
}

TEST(RunRows, ParallelMatchesSerialAndKeepsOrder) {
  std::vector<double> keys;
  for (int i = 0; i < 97; ++i) keys.push_back(i * 0.01);
  auto fn = [](double x) { return std::vector<double>{std::sin(x), x * x}; };
  const auto serial = sweep::run_rows({"x", "s", "q"}, keys, fn, 1);
  const auto parallel = sweep::run_rows({"x", "s", "q"}, keys, fn, 4);
  EXPECT_TRUE(sweep::same_table(serial, parallel));
  for (std::size_t i = 0; i < keys.size(); ++i) EXPECT_EQ(parallel.rows[i][0], keys[i]);
  EXPECT_TRUE(parallel.ok());
}

TEST(RunRows, FailedRowsAreRecorded) {
  std::vector<double> keys{0.1, 0.5, 0.9};
  auto fn = [](double x) -> std::vector<double> {
    if (x > 0.4 && x < 0.6) throw NoSolution("no root");
    return {x};
  };
  const auto table = sweep::run_rows({"x", "y"}, keys, fn, 2);
  ASSERT_EQ(table.failures.size(), 1u);
  EXPECT_EQ(table.failures[0].key, 0.5);
  EXPECT_EQ(table.failures[0].error, "no solution: no root");
  EXPECT_EQ(table.rows[1][0], 0.5);
  EXPECT_TRUE(std::isnan(table.rows[1][1]));
  EXPECT_EQ(table.rows[2][1], 0.9);
}

TEST(RunRows, WrongWidthIsAFailure) {
  const auto table = sweep::run_rows({"x", "y"}, {1.0}, [](double) { return std::vector<double>{1, 2}; });
  EXPECT_FALSE(table.ok());
}
