#include "mrc/io.hpp"

#include <fstream>
#include <sstream>

namespace mrc {

namespace {

std::string quoted(const std::string& key) { return "\"" + key + "\""; }

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing key " + quoted(key));
  return *it;
}

Index require_size(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(where + ": expected a nonnegative integer");
  return static_cast<Index>(j.get<long long>());
}

std::vector<Index> size_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of sizes");
  std::vector<Index> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(require_size(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

template <class S>
S scalar_from_json(const Json& j, const FieldSpec& field, const std::string& where) {
  try {
    if (j.is_string()) return FieldTraits<S>::parse(field, j.get<std::string>());
    if (j.is_number_integer()) return FieldTraits<S>::parse(field, std::to_string(j.get<long long>()));
  } catch (const UsageError& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected a field element string");
}

BlockKey parse_block_key(const std::string& key, const std::string& where) {
  int i = 0, j = 0;
  char comma = 0;
  std::istringstream is(key);
  if (!(is >> i >> comma >> j) || comma != ',' || !is.eof()) {
    throw InputError(where + ": block key " + quoted(key) + " is not of the form \"i,j\"");
  }
  return {i, j};
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

FieldSpec field_from_json(const Json& doc) {
  const Json& f = require(doc, "field", "problem");
  if (!f.is_string()) throw InputError("\"field\": expected \"Q\" or \"GF(p)\"");
  try {
    return FieldSpec::parse(f.get<std::string>());
  } catch (const UsageError& e) {
    throw InputError(std::string("\"field\": ") + e.what());
  }
}

template <class S>
Matrix<S> matrix_from_json(const Json& j, const FieldSpec& field, const std::string& where) {
  if (j.is_object()) {
    const Index rows = require_size(require(j, "rows", where), where + ".rows");
    const Index cols = require_size(require(j, "cols", where), where + ".cols");
    const Json& entries = require(j, "entries", where);
    if (rows == 0 || cols == 0) {
      if (!entries.is_array() || !entries.empty()) throw InputError(where + ": zero-size matrix must have empty entries");
      return Matrix<S>(rows, cols);
    }
    Matrix<S> m = matrix_from_json<S>(entries, field, where + ".entries");
    if (m.rows() != rows || m.cols() != cols) throw InputError(where + ": entries disagree with rows/cols");
    return m;
  }
  if (!j.is_array()) throw InputError(where + ": expected a matrix literal");
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) return Matrix<S>(0, 0);
  if (!j[0].is_array()) throw InputError(where + "[0]: expected a row array");
  const Index cols = static_cast<Index>(j[0].size());
  if (cols == 0) throw InputError(where + ": use {\"rows\", \"cols\", \"entries\": []} for zero-width matrices");
  Matrix<S> m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    const std::string at = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw InputError(at + ": ragged row");
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = scalar_from_json<S>(row[static_cast<std::size_t>(c)], field, at + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

template <class S>
Json matrix_to_json(const Matrix<S>& m, const FieldSpec& field) {
  if (m.rows() == 0 || m.cols() == 0) {
    Json out = Json::object();
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["entries"] = Json::array();
    return out;
  }
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(FieldTraits<S>::format(field, m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class S>
BlockProblem<S> problem_from_json(const Json& doc) {
  const FieldSpec field = field_from_json(doc);
  const Index n = require_size(require(doc, "n", "problem"), "\"n\"");
  std::vector<Index> row_sizes = size_list(require(doc, "row_sizes", "problem"), "\"row_sizes\"");
  std::vector<Index> col_sizes = size_list(require(doc, "col_sizes", "problem"), "\"col_sizes\"");
  if (n < 2) throw InputError("\"n\": must be at least 2");
  if (static_cast<Index>(row_sizes.size()) != n) throw InputError("\"row_sizes\": expected n entries");
  if (static_cast<Index>(col_sizes.size()) != n) throw InputError("\"col_sizes\": expected n entries");

  const Json& blocks = require(doc, "blocks", "problem");
  if (!blocks.is_object()) throw InputError("\"blocks\": expected an object keyed \"i,j\"");
  std::map<BlockKey, Matrix<S>> parsed;
  for (auto it = blocks.begin(); it != blocks.end(); ++it) {
    const BlockKey key = parse_block_key(it.key(), "\"blocks\"");
    parsed[key] = matrix_from_json<S>(it.value(), field, "blocks." + quoted(it.key()));
  }
  try {
    return BlockProblem<S>(field, std::move(row_sizes), std::move(col_sizes), std::move(parsed));
  } catch (const InputError&) {
    throw;
  } catch (const UsageError& e) {
    throw InputError(e.what());
  }
}

template <class S>
Json problem_to_json(const BlockProblem<S>& p) {
  Json out = Json::object();
  out["field"] = p.field().name();
  out["n"] = p.n();
  out["row_sizes"] = p.row_sizes();
  out["col_sizes"] = p.col_sizes();
  Json blocks = Json::object();
  for (const auto& [key, m] : p.blocks()) blocks[block_key_string(key)] = matrix_to_json(m, p.field());
  out["blocks"] = std::move(blocks);
  return out;
}

template <class S>
FreeChoiceOverlap<S> free_choice_from_json(const Json& doc, const FieldSpec& field) {
  const Json& blocks = require(doc, "blocks", "free choice");
  if (!blocks.is_object()) throw InputError("free choice \"blocks\": expected an object keyed \"i,j\"");
  FreeChoiceOverlap<S> f;
  for (auto it = blocks.begin(); it != blocks.end(); ++it) {
    const BlockKey key = parse_block_key(it.key(), "free choice");
    f.blocks[key] = matrix_from_json<S>(it.value(), field, "free." + quoted(it.key()));
  }
  return f;
}

template <class S>
TwoByTwoProblem<S> two_by_two_from_json(const Json& doc, const FieldSpec& field) {
  TwoByTwoProblem<S> p{matrix_from_json<S>(require(doc, "B", "problem"), field, "B"),
                       matrix_from_json<S>(require(doc, "C", "problem"), field, "C"),
                       matrix_from_json<S>(require(doc, "D", "problem"), field, "D")};
  try {
    p.validate();
  } catch (const UsageError& e) {
    throw InputError(e.what());
  }
  return p;
}

template <class S>
FreeChoice2x2<S> free_choice_2x2_from_json(const Json& doc, const FieldSpec& field, const TwoByTwoSolutionSet<S>& s) {
  FreeChoice2x2<S> f = FreeChoice2x2<S>::zero(s);
  if (!doc.is_object()) throw InputError("free choice: expected a JSON object");
  const std::pair<const char*, Matrix<S>*> slots[] = {
      {"X_I_Jprime", &f.core_ext}, {"X_I_J", &f.core_core}, {"X_Iprime_J", &f.ext_core},
      {"X_I_Jbar", &f.core_rest},  {"X_Ibar_J", &f.rest_core}};
  for (const auto& [key, slot] : slots) {
    auto it = doc.find(key);
    if (it == doc.end()) continue;
    Matrix<S> m = matrix_from_json<S>(*it, field, key);
    if (m.rows() != slot->rows() || m.cols() != slot->cols()) {
      throw InputError(std::string(key) + ": expected " + std::to_string(slot->rows()) + "x" +
                       std::to_string(slot->cols()));
    }
    *slot = std::move(m);
  }
  return f;
}

template <class S>
Matrix<S> corner_from_json(const Json& doc, const FieldSpec& field) {
  if (doc.is_object() && doc.contains("X")) return matrix_from_json<S>(doc["X"], field, "X");
  return matrix_from_json<S>(doc, field, "X");
}

Json index_set_to_json(const IndexSet& s) { return Json(s.indices()); }

template <class S>
Json solution_to_json(const BlockProblem<S>& p, const OverlapSolutionSet<S>& s, const std::optional<Matrix<S>>& chosen,
                      const std::vector<Matrix<S>>* enumerated) {
  Json out = Json::object();
  out["field"] = p.field().name();
  out["n"] = p.n();
  out["dimension"] = s.dimension;
  out["alphas"] = s.alphas;
  out["betas"] = std::vector<Index>(s.betas.begin() + 1, s.betas.end());
  out["block_opt_ranks"] = s.block_opt_ranks;
  Json rows = Json::array(), cols = Json::array();
  for (int i = 1; i <= p.n(); ++i) {
    rows.push_back(index_set_to_json(s.chains.row_part(i)));
    cols.push_back(index_set_to_json(s.chains.col_part(i)));
  }
  out["partition"] = Json{{"I", std::move(rows)}, {"J", std::move(cols)}};
  out["base_solution"] = matrix_to_json(s.base_solution, p.field());
  if (chosen) out["solution"] = matrix_to_json(*chosen, p.field());
  if (enumerated) {
    Json all = Json::array();
    for (const auto& x : *enumerated) all.push_back(matrix_to_json(x, p.field()));
    out["solutions"] = std::move(all);
  }
  return out;
}

template <class S>
Json two_by_two_solution_to_json(const FieldSpec& field, const TwoByTwoSolutionSet<S>& s,
                                 const std::optional<Matrix<S>>& chosen, const std::vector<Matrix<S>>* enumerated) {
  Json out = Json::object();
  out["field"] = field.name();
  out["r_opt"] = s.r_opt;
  out["dimension"] = s.dimension;
  out["partition"] = Json{{"J_bar", index_set_to_json(s.cols.rest)},
                          {"J_prime", index_set_to_json(s.cols.extension)},
                          {"J", index_set_to_json(s.cols.core)},
                          {"I", index_set_to_json(s.rows.core)},
                          {"I_prime", index_set_to_json(s.rows.extension)},
                          {"I_bar", index_set_to_json(s.rows.rest)}};
  out["Q"] = matrix_to_json(s.q, field);
  out["R"] = matrix_to_json(s.r, field);
  out["base_solution"] = matrix_to_json(s.base_solution, field);
  if (chosen) out["solution"] = matrix_to_json(*chosen, field);
  if (enumerated) {
    Json all = Json::array();
    for (const auto& x : *enumerated) all.push_back(matrix_to_json(x, field));
    out["solutions"] = std::move(all);
  }
  return out;
}

#define MRC_INSTANTIATE_IO(S)                                                                                      \
  template Matrix<S> matrix_from_json<S>(const Json&, const FieldSpec&, const std::string&);                       \
  template Json matrix_to_json<S>(const Matrix<S>&, const FieldSpec&);                                             \
  template BlockProblem<S> problem_from_json<S>(const Json&);                                                      \
  template Json problem_to_json<S>(const BlockProblem<S>&);                                                        \
  template FreeChoiceOverlap<S> free_choice_from_json<S>(const Json&, const FieldSpec&);                           \
  template TwoByTwoProblem<S> two_by_two_from_json<S>(const Json&, const FieldSpec&);                              \
  template FreeChoice2x2<S> free_choice_2x2_from_json<S>(const Json&, const FieldSpec&,                            \
                                                         const TwoByTwoSolutionSet<S>&);                           \
  template Matrix<S> corner_from_json<S>(const Json&, const FieldSpec&);                                           \
  template Json solution_to_json<S>(const BlockProblem<S>&, const OverlapSolutionSet<S>&,                          \
                                    const std::optional<Matrix<S>>&, const std::vector<Matrix<S>>*);               \
  template Json two_by_two_solution_to_json<S>(const FieldSpec&, const TwoByTwoSolutionSet<S>&,                    \
                                               const std::optional<Matrix<S>>&, const std::vector<Matrix<S>>*);

MRC_INSTANTIATE_IO(Rational)
MRC_INSTANTIATE_IO(Residue)

#undef MRC_INSTANTIATE_IO

}  // namespace mrc
