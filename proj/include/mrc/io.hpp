#pragma once

// JSON encodings for problems, free choices and solutions.
//
// Matrix literal: an array of rows, each an array of field-element strings
// ("a/b" or "a" over Q, decimal residues over GF(p)). A matrix with zero rows
// or columns is written {"rows": r, "cols": c, "entries": []}.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "mrc/block2x2.hpp"
#include "mrc/overlap.hpp"

namespace mrc {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input; the message names the offending key.
class InputError : public UsageError {
 public:
  using UsageError::UsageError;
};

Json read_json_file(const std::string& path);

FieldSpec field_from_json(const Json& doc);

template <class S>
Matrix<S> matrix_from_json(const Json& j, const FieldSpec& field, const std::string& where);
template <class S>
Json matrix_to_json(const Matrix<S>& m, const FieldSpec& field);

template <class S>
BlockProblem<S> problem_from_json(const Json& doc);
template <class S>
Json problem_to_json(const BlockProblem<S>& p);

template <class S>
FreeChoiceOverlap<S> free_choice_from_json(const Json& doc, const FieldSpec& field);

template <class S>
TwoByTwoProblem<S> two_by_two_from_json(const Json& doc, const FieldSpec& field);
template <class S>
FreeChoice2x2<S> free_choice_2x2_from_json(const Json& doc, const FieldSpec& field, const TwoByTwoSolutionSet<S>& s);

/// Accepts a bare matrix literal or an object {"X": literal}.
template <class S>
Matrix<S> corner_from_json(const Json& doc, const FieldSpec& field);

Json index_set_to_json(const IndexSet& s);

template <class S>
Json solution_to_json(const BlockProblem<S>& p, const OverlapSolutionSet<S>& s,
                      const std::optional<Matrix<S>>& chosen = std::nullopt,
                      const std::vector<Matrix<S>>* enumerated = nullptr);

template <class S>
Json two_by_two_solution_to_json(const FieldSpec& field, const TwoByTwoSolutionSet<S>& s,
                                 const std::optional<Matrix<S>>& chosen = std::nullopt,
                                 const std::vector<Matrix<S>>* enumerated = nullptr);

}  // namespace mrc
