#include <gtest/gtest.h>

#include "mrc/io.hpp"
#include "support/random_instances.hpp"

using namespace mrc;
using namespace mrc::testing;

namespace {

const FieldSpec kQ = FieldSpec::rational();
const FieldSpec kGF3 = FieldSpec::prime_field(3);

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "<no error>";
}

Json diagonal_doc() {
  return Json::parse(R"j({"field": "GF(2)", "n": 2, "row_sizes": [1, 1], "col_sizes": [1, 1],
                         "blocks": {"1,1": [["1"]], "2,2": [["1"]]}})j");
}

}  // namespace

TEST(MatrixJson, Literals) {
  const auto m = matrix_from_json<Rational>(Json::parse(R"([["1/2", "-3"], [4, "6/8"]])"), kQ, "M");
  EXPECT_EQ(m, (Matrix<Rational>{{Rational(1, 2), Rational(-3)}, {Rational(4), Rational(3, 4)}}));
  EXPECT_EQ(matrix_to_json(m, kQ).dump(), R"([["1/2","-3"],["4","3/4"]])");

  const auto g = matrix_from_json<Residue>(Json::parse(R"([["4", "-1"]])"), kGF3, "M");
  EXPECT_EQ(matrix_to_json(g, kGF3).dump(), R"([["1","2"]])");
}

TEST(MatrixJson, ZeroDimensionMatrices) {
  const auto m = matrix_from_json<Rational>(Json::parse(R"({"rows": 2, "cols": 0, "entries": []})"), kQ, "M");
  EXPECT_EQ(m.rows(), 2);
  EXPECT_EQ(m.cols(), 0);
  EXPECT_EQ(matrix_to_json(m, kQ).dump(), R"({"rows":2,"cols":0,"entries":[]})");
  EXPECT_EQ(matrix_to_json(Matrix<Rational>(0, 3), kQ).dump(), R"({"rows":0,"cols":3,"entries":[]})");
}

TEST(MatrixJson, ErrorsNameTheLocation) {
  EXPECT_NE(error_of([] { matrix_from_json<Rational>(Json::parse(R"([["1"], ["1", "2"]])"), kQ, "M"); }).find("M[1]"),
            std::string::npos);
  EXPECT_NE(error_of([] { matrix_from_json<Rational>(Json::parse(R"([["1/0"]])"), kQ, "M"); }).find("M[0][0]"),
            std::string::npos);
  EXPECT_NE(error_of([] { matrix_from_json<Rational>(Json::parse(R"([[true]])"), kQ, "M"); }).find("M[0][0]"),
            std::string::npos);
  EXPECT_NE(error_of([] { matrix_from_json<Rational>(Json::parse(R"([[]])"), kQ, "M"); }), "<no error>");
  EXPECT_NE(error_of([] { matrix_from_json<Rational>(Json::parse(R"({"rows": 1, "cols": 1, "entries": []})"), kQ, "M"); }),
            "<no error>");
  EXPECT_NE(error_of([] { matrix_from_json<Rational>(Json::parse(R"({"rows": 1})"), kQ, "M"); }).find("\"cols\""),
            std::string::npos);
}

TEST(ProblemJson, RoundTrip) {
  Rng rng(61);
  for (int t = 0; t < 30; ++t) {
    const auto p = random_problem<Rational>(rng, kQ, static_cast<int>(uniform(rng, 2, 4)), 0, 3);
    const Json doc = problem_to_json(p);
    const auto back = problem_from_json<Rational>(doc);
    EXPECT_EQ(back.blocks(), p.blocks());
    EXPECT_EQ(back.row_sizes(), p.row_sizes());
    EXPECT_EQ(back.col_sizes(), p.col_sizes());
    EXPECT_EQ(problem_to_json(back).dump(), doc.dump());
  }
  const auto g = problem_from_json<Residue>(diagonal_doc());
  EXPECT_EQ(problem_to_json(g).dump(), diagonal_doc().dump());
}

TEST(ProblemJson, MissingBlockIsNamed) {
  Json doc = diagonal_doc();
  doc["blocks"].erase("2,2");
  EXPECT_NE(error_of([&] { problem_from_json<Residue>(doc); }).find("\"2,2\""), std::string::npos);
}

TEST(ProblemJson, Inconsistencies) {
  Json doc = diagonal_doc();
  doc["n"] = 3;
  EXPECT_NE(error_of([&] { problem_from_json<Residue>(doc); }).find("row_sizes"), std::string::npos);
  doc = diagonal_doc();
  doc["n"] = 1;
  EXPECT_NE(error_of([&] { problem_from_json<Residue>(doc); }), "<no error>");
  doc = diagonal_doc();
  doc["blocks"]["2,1"] = Json::parse(R"([["1"]])");
  EXPECT_NE(error_of([&] { problem_from_json<Residue>(doc); }).find("\"2,1\""), std::string::npos);
  doc = diagonal_doc();
  doc["blocks"]["x"] = Json::parse(R"([["1"]])");
  EXPECT_NE(error_of([&] { problem_from_json<Residue>(doc); }).find("\"x\""), std::string::npos);
  doc = diagonal_doc();
  doc["blocks"]["1,1"] = Json::parse(R"([["1", "0"]])");
  EXPECT_NE(error_of([&] { problem_from_json<Residue>(doc); }).find("\"1,1\""), std::string::npos);
  doc = diagonal_doc();
  doc.erase("field");
  EXPECT_NE(error_of([&] { problem_from_json<Residue>(doc); }).find("\"field\""), std::string::npos);
  doc = diagonal_doc();
  doc["field"] = "GF(4)";
  EXPECT_NE(error_of([&] { field_from_json(doc); }).find("\"field\""), std::string::npos);
  doc = diagonal_doc();
  doc["row_sizes"] = Json::parse("[1, -1]");
  EXPECT_NE(error_of([&] { problem_from_json<Residue>(doc); }).find("\"row_sizes\"[1]"), std::string::npos);
}

TEST(FreeChoiceJson, OverlapAndTwoByTwo) {
  const auto p = problem_from_json<Residue>(diagonal_doc());
  const auto f = free_choice_from_json<Residue>(Json::parse(R"({"blocks": {"1,2": [["1"]]}})"), p.field());
  ASSERT_EQ(f.blocks.size(), 1u);
  EXPECT_EQ(f.blocks.at({1, 2}), from_ints<Residue>(p.field(), {{1}}));

  const TwoByTwoProblem<Rational> q{from_ints<Rational>(kQ, {{1}, {0}}), from_ints<Rational>(kQ, {{0}, {1}}),
                                    from_ints<Rational>(kQ, {{1}})};
  const auto s = analyze(q);
  const auto g = free_choice_2x2_from_json<Rational>(Json::parse(R"({"X_Iprime_J": [["5"]]})"), kQ, s);
  EXPECT_EQ(complete(q, s, g), from_ints<Rational>(kQ, {{5}}));
  EXPECT_NE(error_of([&] { free_choice_2x2_from_json<Rational>(Json::parse(R"({"X_Iprime_J": [["5", "1"]]})"), kQ, s); })
                .find("X_Iprime_J"),
            std::string::npos);
}

TEST(CornerJson, BareOrWrapped) {
  EXPECT_EQ(corner_from_json<Rational>(Json::parse(R"([["2"]])"), kQ), from_ints<Rational>(kQ, {{2}}));
  EXPECT_EQ(corner_from_json<Rational>(Json::parse(R"({"X": [["2"]]})"), kQ), from_ints<Rational>(kQ, {{2}}));
}

TEST(SolutionJson, ReparseableAndDeterministic) {
  const auto p = problem_from_json<Residue>(diagonal_doc());
  const auto s = analyze_overlap(p);
  const Json a = solution_to_json(p, s), b = solution_to_json(p, analyze_overlap(p));
  EXPECT_EQ(a.dump(2), b.dump(2));
  EXPECT_EQ(a["dimension"], 1);
  EXPECT_EQ(a["block_opt_ranks"], Json::parse("[1, 1]"));
  const auto base = matrix_from_json<Residue>(a["base_solution"], p.field(), "base_solution");
  EXPECT_EQ(hankel_ranks(p, base), s.block_opt_ranks);
  EXPECT_EQ(a["partition"]["I"], Json::parse("[[0], []]"));
  EXPECT_EQ(a["partition"]["J"], Json::parse("[[], [0]]"));
}
