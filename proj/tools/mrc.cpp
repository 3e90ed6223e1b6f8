// mrc: command-line front end for the overlapping-block completion solver.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "mrc/io.hpp"
#include "mrc/oracle.hpp"

namespace {

using namespace mrc;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct Options {
  std::string problem;
  std::string free;
  std::string corner;
  bool enumerate = false;
  std::uint64_t budget = kDefaultOracleBudget;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void require_finite(const FieldSpec& field, const char* what) {
  if (field.is_rational()) throw InputError(std::string(what) + " needs a prime field GF(p)");
}

template <class S>
int run_solve(const Json& doc, const Options& o) {
  const BlockProblem<S> p = problem_from_json<S>(doc);
  const OverlapSolutionSet<S> s = analyze_overlap(p);
  std::optional<Matrix<S>> chosen;
  if (!o.free.empty()) {
    chosen = complete_overlap(p, s.chains, free_choice_from_json<S>(read_json_file(o.free), p.field()));
  }
  if constexpr (std::is_same_v<S, Residue>) {
    if (o.enumerate) {
      const auto all = enumerate_solutions(p, s.chains, s.dimension, o.budget);
      emit(solution_to_json(p, s, chosen, &all));
      return kOk;
    }
  }
  emit(solution_to_json(p, s, chosen));
  return kOk;
}

template <class S>
int run_dimension(const Json& doc) {
  const BlockProblem<S> p = problem_from_json<S>(doc);
  emit(Json(dimension_and_ranks(p, build_chains(p)).dimension));
  return kOk;
}

template <class S>
int run_ranks(const Json& doc, const Options& o) {
  const BlockProblem<S> p = problem_from_json<S>(doc);
  const Matrix<S> x = corner_from_json<S>(read_json_file(o.corner), p.field());
  if (x.rows() != p.x_rows() || x.cols() != p.x_cols()) {
    throw InputError("X: expected " + std::to_string(p.x_rows()) + "x" + std::to_string(p.x_cols()) + ", got " +
                     std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
  const OverlapSolutionSet<S> s = dimension_and_ranks(p, build_chains(p));
  const std::vector<Index> ranks = hankel_ranks(p, x);
  Json out = Json::object();
  out["ranks"] = ranks;
  out["block_opt_ranks"] = s.block_opt_ranks;
  out["minimal"] = ranks == s.block_opt_ranks;
  emit(out);
  return kOk;
}

int run_verify(const Json& doc, const Options& o) {
  const BlockProblem<Residue> p = problem_from_json<Residue>(doc);
  const CertifyResult r = certify(p, o.budget);
  Json out = Json::object();
  out["certified"] = r.certified;
  out["dimension"] = r.dimension;
  out["construction_count"] = r.construction_count;
  out["minimizer_count"] = r.minimizer_count;
  if (!r.certified) out["diagnostic"] = r.diagnostic;
  emit(out);
  return r.certified ? kOk : kVerifyFailed;
}

template <class S>
int run_solve2x2(const Json& doc, const FieldSpec& field, const Options& o) {
  const TwoByTwoProblem<S> p = two_by_two_from_json<S>(doc, field);
  const TwoByTwoSolutionSet<S> s = analyze(p);
  std::optional<Matrix<S>> chosen;
  if (!o.free.empty()) chosen = complete(p, s, free_choice_2x2_from_json<S>(read_json_file(o.free), field, s));
  if constexpr (std::is_same_v<S, Residue>) {
    if (o.enumerate) {
      const auto all = enumerate_two_by_two(p, s, field.characteristic(), o.budget);
      emit(two_by_two_solution_to_json(field, s, chosen, &all));
      return kOk;
    }
  }
  emit(two_by_two_solution_to_json(field, s, chosen));
  return kOk;
}

template <class F>
int dispatch(const std::string& command, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    std::cerr << "mrc " << command << ": " << e.what() << '\n';
    return kInputError;
  } catch (const InvariantViolation& e) {
    std::cerr << "mrc " << command << ": internal invariant violated: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "mrc " << command << ": " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal rank completion of overlapping Hankel blocks"};
  app.require_subcommand(1);
  Options o;

  auto add_problem = [&](CLI::App* sub) { sub->add_option("problem", o.problem, "problem JSON file")->required(); };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", o.budget, "maximum number of enumerated candidates")->check(CLI::PositiveNumber);
  };

  CLI::App* solve = app.add_subcommand("solve", "complete the corner block X");
  add_problem(solve);
  solve->add_option("--free", o.free, "free-choice JSON file (default: all zero)");
  solve->add_flag("--enumerate", o.enumerate, "list every solution (GF(p) only)");
  add_budget(solve);

  CLI::App* dimension = app.add_subcommand("dimension", "print the dimension of the solution set");
  add_problem(dimension);

  CLI::App* ranks = app.add_subcommand("ranks", "ranks of every Hankel block for a given X");
  add_problem(ranks);
  ranks->add_option("x", o.corner, "JSON file holding X")->required();

  CLI::App* verify = app.add_subcommand("verify", "check the construction against exhaustive search");
  add_problem(verify);
  add_budget(verify);

  CLI::App* solve2x2 = app.add_subcommand("solve2x2", "solve a single block 2x2 completion problem");
  add_problem(solve2x2);
  solve2x2->add_option("--free", o.free, "free-choice JSON file (default: all zero)");
  solve2x2->add_flag("--enumerate", o.enumerate, "list every solution (GF(p) only)");
  add_budget(solve2x2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return dispatch(command, [&]() -> int {
    const Json doc = read_json_file(o.problem);
    const FieldSpec field = field_from_json(doc);
    if (o.enumerate) require_finite(field, "--enumerate");
    const bool q = field.is_rational();
    if (command == "solve") return q ? run_solve<Rational>(doc, o) : run_solve<Residue>(doc, o);
    if (command == "dimension") return q ? run_dimension<Rational>(doc) : run_dimension<Residue>(doc);
    if (command == "ranks") return q ? run_ranks<Rational>(doc, o) : run_ranks<Residue>(doc, o);
    if (command == "verify") {
      require_finite(field, "verify");
      return run_verify(doc, o);
    }
    return q ? run_solve2x2<Rational>(doc, field, o) : run_solve2x2<Residue>(doc, field, o);
  });
}
