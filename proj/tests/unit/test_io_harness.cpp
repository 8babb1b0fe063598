#include <gtest/gtest.h>

#include "qexp/harness.hpp"
#include "qexp/io.hpp"

using namespace qexp;

TEST(Io, Rationals) {
  EXPECT_EQ(rational_to_json(Rational(-3, 4)), Json("-3/4"));
  EXPECT_EQ(rational_from_json(Json("6/8")), Rational(3, 4));
  EXPECT_EQ(rational_from_json(Json(5)), 5);
  EXPECT_THROW(rational_from_json(Json("one half")), ParseError);
  EXPECT_THROW(rational_from_json(Json(0.5)), ParseError);
}

TEST(Io, FunctionRepresentations) {
  const auto sym = function_from_json(Json::parse(R"({"n":4,"repr":"symmetric","data":[1,0,1,4,9]})"));
  EXPECT_EQ(sym, library::shifted_weight_square(4));

  const auto tt = function_from_json(Json::parse(R"({"n":2,"repr":"truth_table","data":[0,1,1,"1"]})"));
  EXPECT_EQ(tt, library::or_function(2));

  const auto mono = function_from_json(
      Json::parse(R"({"n":2,"repr":"monomials","data":[{"S":[1],"coeff":1},{"S":[2],"coeff":1},{"S":[1,2],"coeff":-1}]})"));
  EXPECT_EQ(mono, library::or_function(2));

  EXPECT_EQ(function_from_json(function_to_json(sym)), sym);
  EXPECT_THROW(function_from_json(Json::parse(R"({"n":2,"repr":"truth_table","data":[0,1]})")), std::invalid_argument);
  EXPECT_THROW(function_from_json(Json::parse(R"({"n":2,"repr":"wavelet","data":[]})")), ParseError);
}

TEST(Io, Subsets) {
  EXPECT_EQ(subset_to_json(0b101, 3), Json::parse("[1,3]"));
  EXPECT_EQ(subset_from_json(Json::parse("[1,3]"), 3), Subset{0b101});
  EXPECT_THROW(subset_from_json(Json::parse("[4]"), 3), ParseError);
}

TEST(Io, NnlCertificatesSurviveReload) {
  const auto f = library::shifted_weight_square(3);
  const auto r = nnl_degree(f);
  const auto rep = literal_rep_from_json(Json::parse(to_json(r.rep).dump()));
  EXPECT_TRUE(verify_representation(rep, f));
  for (int d = 0; d < r.degree; ++d) {
    const auto cert = farkas_from_json(Json::parse(to_json(r.lower_certificates[d]).dump()));
    EXPECT_TRUE(verify_nnl_certificate(f, d, cert));
  }
}

TEST(Io, SosCertificatesSurviveReload) {
  const auto f = library::weight_quadratic(3, 1, 2);
  const auto r = sos_degree(f);
  const auto dec = decomposition_from_json(Json::parse(to_json(r.decomposition).dump()));
  EXPECT_TRUE(verify_decomposition(dec, f));
  for (const auto& w : r.witnesses) {
    EXPECT_TRUE(verify_sos_witness(sos_witness_from_json(Json::parse(to_json(w).dump())), f));
  }
}

TEST(Io, MatrixCsvRoundTrip) {
  const auto m = matching_slack(6).matrix;
  const auto back = matrix_from_csv(matrix_to_csv(m));
  EXPECT_EQ(back.row_labels, m.row_labels);
  EXPECT_EQ(back.col_labels, m.col_labels);
  EXPECT_EQ(back.entries, m.entries);
  EXPECT_THROW(matrix_from_csv("1,2\n"), ParseError);
}

TEST(Harness, RunReportRoundTrip) {
  RunReport r;
  r.command = "degree";
  r.parameters = {{"kind", "sos"}};
  r.results = {{"degree", 1}};
  r.certificates.push_back(to_json(FarkasCertificate{{1, Rational(-1, 2)}}));
  r.seed = 17;
  r.wall_time_ms = 3.5;
  const auto back = RunReport::from_json(Json::parse(r.to_json().dump()));
  EXPECT_EQ(back.payload(), r.payload());
  EXPECT_EQ(back.seed, 17u);
  EXPECT_FALSE(r.payload().contains("wall_time_ms"));
}

TEST(Harness, SuiteNamesAndUnknown) {
  const auto& names = suite_names();
  ASSERT_EQ(names.size(), 8u);
  EXPECT_EQ(names.front(), "gap");
  EXPECT_EQ(names.back(), "hierarchy");
  EXPECT_THROW(run_suite("nope"), std::invalid_argument);
}

TEST(Harness, FastChecksPass) {
  SuiteOptions opt;
  EXPECT_TRUE(check_matching(opt).passed);
  EXPECT_TRUE(check_hierarchy(opt).passed);
  EXPECT_TRUE(check_approx_function(opt).passed);
}

TEST(Harness, RandomFunctionsReproducible) {
  CounterRng a(5), b(5);
  EXPECT_EQ(random_function(3, a), random_function(3, b));
  CounterRng c(6);
  const auto g = random_boolean_function(3, c);
  for (Point x = 0; x < 8; ++x) EXPECT_TRUE(g(x) == 0 || g(x) == 1);
}
