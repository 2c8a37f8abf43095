#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ioopt/svg.hpp"
#include "ioopt/table_io.hpp"
#include "support.hpp"

using namespace ioopt;
using namespace ioopt::testing;
namespace fs = std::filesystem;

namespace {

ParseError parse_failure(const std::string& text) {
  try {
    parse_table_text(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return ParseError("none", 0);
}

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("ioopt_table_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(ParseTable, TwoSectorFile) {
  auto a = parse_table(fs::path(IOOPT_TEST_DATA) / "two_sector.csv");
  EXPECT_EQ(a.labels(), (std::vector<std::string>{"Agriculture", "Manufacturing"}));
  EXPECT_EQ(a.exact(), two_sector().exact());
  EXPECT_EQ(a.values()(0, 1), 0.14);
}

TEST(ParseTable, WhitespaceCrlfAndFractions) {
  auto a = parse_table_text("product, x , y\r\n\r\nx, 1/3 ,0\r\ny,2e-1,  0.5\r\n");
  EXPECT_EQ(a.labels(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(a.exact()(0, 0), Rational(1, 3));
  EXPECT_EQ(a.exact()(1, 0), Rational(1, 5));
  EXPECT_EQ(a.exact()(1, 1), Rational(1, 2));
}

TEST(ParseTable, ErrorsCarryLocation) {
  auto e = parse_failure("");
  EXPECT_EQ(e.row(), 0u);

  e = parse_failure("sector,a\na,1\n");
  EXPECT_EQ(e.row(), 1u);
  EXPECT_EQ(e.column(), 1u);

  e = parse_failure("product,a,a\na,1,1\na,1,1\n");
  EXPECT_EQ(e.row(), 1u);
  EXPECT_EQ(e.column(), 3u);

  e = parse_failure("product,a,b\na,0.1,0.2\nb,0.3,zz\n");
  EXPECT_EQ(e.row(), 3u);
  EXPECT_EQ(e.column(), 3u);

  e = parse_failure("product,a,b\na,0.1,-0.2\nb,0.3,0.1\n");
  EXPECT_EQ(e.row(), 2u);
  EXPECT_EQ(e.column(), 3u);

  e = parse_failure("product,a,b\na,0.1\nb,0.3,0.1\n");
  EXPECT_EQ(e.row(), 2u);

  e = parse_failure("product,a,b\nb,0.1,0.2\na,0.3,0.1\n");
  EXPECT_EQ(e.row(), 2u);

  parse_failure("product,a,b\na,0.1,0.2\n");
  parse_failure("product,a\na,0.1\nb,0.2\n");
  parse_failure("product,a,\na,1,1\n,1,1\n");
}

TEST(ParseTable, MissingFileIsIoError) {
  EXPECT_THROW(parse_table("/nonexistent/ioopt/table.csv"), IoError);
}

TEST(SerializeTable, RoundTripsExactly) {
  auto a = two_sector();
  auto text = serialize_table(a);
  EXPECT_EQ(text, "product,Agriculture,Manufacturing\nAgriculture,0.25,0.14\nManufacturing,0.4,0.12\n");
  auto b = parse_table_text(text);
  EXPECT_EQ(b.exact(), a.exact());

  Matrix<Rational> m{{Rational(1, 3), Rational(0)}, {Rational(2, 7), Rational(5)}};
  auto c = StructureMatrix::from_exact(m, {"p", "q"});
  EXPECT_EQ(parse_table_text(serialize_table(c)).exact(), m);
}

TEST(Lists, ParseExactAndDouble) {
  auto x = parse_exact_list("44.34397483, 20");
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x[0], Rational(mpz_class("4434397483"), mpz_class("100000000")));
  EXPECT_EQ(x[1], Rational(20));
  EXPECT_EQ(parse_double_list("0.5,1/4"), (std::vector<double>{0.5, 0.25}));
  try {
    parse_exact_list("1,,2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 2u);
  }
}

TEST(TrajectoryCsv, Layout) {
  auto a = two_sector();
  auto t = iterate(a.exact(), std::vector<Rational>{Rational(5543, 125), Rational(20)}, 1000);
  auto csv = trajectory_csv(t, a.labels());
  EXPECT_EQ(csv.rfind("step,Agriculture,Manufacturing\n0,44.344,20\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(t.size()) + 1);
}

TEST(WriteFileAtomic, WritesAndReplaces) {
  auto dir = scratch_dir("atomic");
  auto path = dir / "out.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string s((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(s, "second");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1u);
  EXPECT_THROW(write_file_atomic(dir / "missing" / "x.txt", "x"), IoError);
}

TEST(Svg, ChartsAreSelfContained) {
  auto a = two_sector();
  auto t = iterate(a.exact(), std::vector<Rational>{Rational(5543, 125), Rational(20)}, 1000);
  auto report = collapse_report(t, {two_sector_rho()});
  auto svg = trajectory_svg(t, report, a.labels());
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);
  EXPECT_NE(svg.find("Agriculture"), std::string::npos);
  EXPECT_EQ(svg, trajectory_svg(t, report, a.labels()));

  auto c = classify_distribution({0.01, 0.02, 0.97});
  auto cdf = cdf_svg(c, {"a", "b", "c"});
  EXPECT_EQ(cdf.rfind("<svg", 0), 0u);
  EXPECT_EQ(cdf.find("href"), std::string::npos);
}
