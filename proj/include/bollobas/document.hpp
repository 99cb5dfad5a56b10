#pragma once

// System documents (JSON) and report serialization.
//
//   {"kind": "set", "n": 3, "d": 2,
//    "tuples": [[[1], [2, 3]], ...], "partition": [[1], [2, 3]]}
//   {"kind": "subspace", "n": 2, "d": 2, "field": "rationals" | "GF(p)",
//    "tuples": [[[["1", "0"]], []], ...], "decomposition": [[["1","0"]], [["0","1"]]]}
//
// Subsets are sorted lists of 1-based elements; subspaces are lists of rows
// of scalar strings (integers are accepted on input). Serialization emits
// the canonical form: RREF rows, exact strings, keys in a fixed order.
// Reports use 1-based tuple and block indices and exact rational strings.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "bollobas/errors.hpp"
#include "bollobas/exact_arith.hpp"
#include "bollobas/saturation.hpp"
#include "bollobas/search.hpp"
#include "bollobas/subspace.hpp"
#include "bollobas/systems.hpp"
#include "bollobas/verifiers.hpp"
#include "bollobas/weights.hpp"

namespace bollobas {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string pointer_join(const std::string& base, std::size_t index) {
  return base + "/" + std::to_string(index);
}
inline std::string pointer_join(const std::string& base, const std::string& key) { return base + "/" + key; }

[[noreturn]] inline void fail_at(const std::string& where, const std::string& what) { throw ParseError(what, where); }

inline const Json& member(const Json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_at(where, "missing key '" + key + "'");
  return *it;
}

inline std::size_t natural(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail_at(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

inline const Json& array(const Json& v, const std::string& where) {
  if (!v.is_array()) fail_at(where, "expected an array");
  return v;
}

inline Subset parse_subset(const Json& v, std::size_t n, const std::string& where) {
  Subset s;
  for (std::size_t i = 0; i < array(v, where).size(); ++i) {
    const std::string at = pointer_join(where, i);
    std::size_t e = natural(v[i], at);
    if (e < 1 || e > n) fail_at(at, "element " + std::to_string(e) + " is outside [1, " + std::to_string(n) + "]");
    if (s.contains(e)) fail_at(at, "element " + std::to_string(e) + " is repeated");
    s = s.with(e);
  }
  return s;
}

template <ExactScalar S>
S parse_scalar(const Json& v, const FieldTag& field, const std::string& where) {
  std::string text;
  if (v.is_string()) text = v.get<std::string>();
  else if (v.is_number_integer()) text = v.dump();
  else fail_at(where, "expected a scalar string");
  try {
    return ScalarTraits<S>::parse(field, text);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail_at(where, e.what());
  }
}

template <ExactScalar S>
Subspace<S> parse_subspace(const Json& v, std::size_t n, const FieldTag& field, const std::string& where) {
  Matrix<S> rows;
  for (std::size_t r = 0; r < array(v, where).size(); ++r) {
    const std::string at = pointer_join(where, r);
    const Json& row = array(v[r], at);
    if (row.size() != n)
      fail_at(at, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
    Vector<S> vec;
    for (std::size_t c = 0; c < n; ++c) vec.push_back(parse_scalar<S>(row[c], field, pointer_join(at, c)));
    rows.push_back(std::move(vec));
  }
  return Subspace<S>::span(n, field, std::move(rows));
}

/// Run `build`, reporting semantic failures at `where`.
template <class F>
auto semantic(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail_at(where, e.what());
  }
}

inline SetSystem parse_set_document(const Json& doc, std::size_t n, std::size_t d) {
  if (n > kMaxGroundSize) fail_at("/n", "set systems support n <= " + std::to_string(kMaxGroundSize));
  std::vector<SetTuple> tuples;
  const Json& ts = array(member(doc, "tuples", ""), "/tuples");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string at = pointer_join("/tuples", i);
    const Json& t = array(ts[i], at);
    if (t.size() != d) fail_at(at, "tuple has " + std::to_string(t.size()) + " components, expected " + std::to_string(d));
    SetTuple tuple;
    for (std::size_t l = 0; l < d; ++l) tuple.push_back(parse_subset(t[l], n, pointer_join(at, l)));
    tuples.push_back(tuple);
  }
  std::optional<std::vector<Subset>> partition;
  if (doc.contains("partition")) {
    partition.emplace();
    const Json& p = array(doc["partition"], "/partition");
    for (std::size_t k = 0; k < p.size(); ++k) partition->push_back(parse_subset(p[k], n, pointer_join("/partition", k)));
  }
  const std::string where = partition ? "/partition" : "/tuples";
  return semantic(where, [&] { return SetSystem(n, d, std::move(tuples), std::move(partition)); });
}

template <ExactScalar S>
SubspaceSystem<S> parse_subspace_document(const Json& doc, std::size_t n, std::size_t d, const FieldTag& field) {
  std::vector<SubspaceTuple<S>> tuples;
  const Json& ts = array(member(doc, "tuples", ""), "/tuples");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string at = pointer_join("/tuples", i);
    const Json& t = array(ts[i], at);
    if (t.size() != d) fail_at(at, "tuple has " + std::to_string(t.size()) + " components, expected " + std::to_string(d));
    SubspaceTuple<S> tuple;
    for (std::size_t l = 0; l < d; ++l) tuple.push_back(parse_subspace<S>(t[l], n, field, pointer_join(at, l)));
    tuples.push_back(std::move(tuple));
  }
  std::optional<Decomposition<S>> decomposition;
  if (doc.contains("decomposition")) {
    std::vector<Subspace<S>> blocks;
    const Json& b = array(doc["decomposition"], "/decomposition");
    for (std::size_t k = 0; k < b.size(); ++k)
      blocks.push_back(parse_subspace<S>(b[k], n, field, pointer_join("/decomposition", k)));
    decomposition = semantic("/decomposition", [&] { return Decomposition<S>(n, field, std::move(blocks)); });
  }
  return semantic("/tuples", [&] { return SubspaceSystem<S>(n, field, d, std::move(tuples), std::move(decomposition)); });
}

}  // namespace detail

/// Parse a system document. Syntax errors carry the byte offset in
/// ParseError::where(); structural and semantic errors carry a JSON pointer.
inline AnySystem parse_system(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    if (auto colon = msg.find("syntax error"); colon != std::string::npos) msg = msg.substr(colon);
    throw ParseError(msg, "byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) detail::fail_at("", "document must be an object");
  const Json& kind = detail::member(doc, "kind", "");
  if (!kind.is_string()) detail::fail_at("/kind", "expected \"set\" or \"subspace\"");
  const std::size_t n = detail::natural(detail::member(doc, "n", ""), "/n");
  const std::size_t d = detail::natural(detail::member(doc, "d", ""), "/d");
  if (d == 0) detail::fail_at("/d", "arity must be at least 1");
  const std::string k = kind.get<std::string>();
  if (k == "set") {
    if (doc.contains("field") || doc.contains("decomposition"))
      detail::fail_at("", "set documents take no field or decomposition");
    return detail::parse_set_document(doc, n, d);
  }
  if (k != "subspace") detail::fail_at("/kind", "expected \"set\" or \"subspace\", got \"" + k + "\"");
  if (doc.contains("partition")) detail::fail_at("/partition", "subspace documents use \"decomposition\"");
  const Json& f = detail::member(doc, "field", "");
  if (!f.is_string()) detail::fail_at("/field", "expected \"rationals\" or \"GF(p)\"");
  FieldTag field = detail::semantic("/field", [&] { return parse_field(f.get<std::string>()); });
  if (field.is_rational()) return detail::parse_subspace_document<BigRational>(doc, n, d, field);
  return detail::parse_subspace_document<PrimeFieldScalar>(doc, n, d, field);
}

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(Subset s) { return Json(s.elements()); }

template <ExactScalar S>
std::string document_scalar(const S& s) {
  if constexpr (std::is_same_v<S, PrimeFieldScalar>) return std::to_string(s.residue());
  else return ScalarTraits<S>::format(s);
}

template <ExactScalar S>
Json to_json(const Vector<S>& v) {
  Json row = Json::array();
  for (const auto& x : v) row.push_back(document_scalar(x));
  return row;
}

template <ExactScalar S>
Json to_json(const Subspace<S>& u) {
  Json rows = Json::array();
  for (const auto& r : u.rows()) rows.push_back(to_json(r));
  return rows;
}

inline Json tuple_json(const SetTuple& t) {
  Json j = Json::array();
  for (auto s : t) j.push_back(to_json(s));
  return j;
}

template <ExactScalar S>
Json tuple_json(const SubspaceTuple<S>& t) {
  Json j = Json::array();
  for (const auto& u : t) j.push_back(to_json(u));
  return j;
}

inline Json to_json(const SetSystem& s) {
  Json j;
  j["kind"] = "set";
  j["n"] = s.ground_size();
  j["d"] = s.arity();
  j["tuples"] = Json::array();
  for (const auto& t : s.tuples()) j["tuples"].push_back(tuple_json(t));
  if (s.partition()) {
    j["partition"] = Json::array();
    for (auto b : *s.partition()) j["partition"].push_back(to_json(b));
  }
  return j;
}

template <ExactScalar S>
Json to_json(const SubspaceSystem<S>& s) {
  Json j;
  j["kind"] = "subspace";
  j["n"] = s.ambient_dim();
  j["d"] = s.arity();
  j["field"] = to_string(s.field());
  j["tuples"] = Json::array();
  for (const auto& t : s.tuples()) j["tuples"].push_back(tuple_json(t));
  if (s.decomposition()) {
    j["decomposition"] = Json::array();
    for (const auto& b : s.decomposition()->blocks()) j["decomposition"].push_back(to_json(b));
  }
  return j;
}

inline Json to_json(const AnySystem& s) {
  return std::visit([](const auto& sys) { return to_json(sys); }, s);
}

/// Canonical document text; parse_system(serialize_system(s)) == s.
inline std::string serialize_system(const AnySystem& s) { return to_json(s).dump(2) + "\n"; }

inline std::string rational_text(const BigRational& q) { return to_string(q); }
inline std::string integer_text(const BigInt& z) { return z.get_str(); }

inline Json to_json(const ConditionKind& k) {
  Json j;
  j["condition"] = to_string(k.condition);
  j["arity"] = k.arity;
  j["monotone"] = k.monotone;
  return j;
}

inline Json to_json(const VerificationReport& r) {
  Json j;
  j["verdict"] = r.verdict;
  j["condition"] = to_json(r.condition);
  j["domain"] = to_string(r.domain);
  if (r.first_violation) {
    j["witness"] = {{"i", r.first_violation->i + 1},
                    {"j", r.first_violation->j + 1},
                    {"clause", to_string(r.first_violation->clause)}};
  } else {
    j["witness"] = nullptr;
  }
  j["has_duplicates"] = r.has_duplicates;
  j["field_caveat"] = r.field_caveat;
  return j;
}

inline Json to_json(const BoundCheck& c) {
  return {{"label", c.label},
          {"value", rational_text(c.value)},
          {"bound", rational_text(c.bound)},
          {"holds", c.holds},
          {"tight", c.tight}};
}

inline Json to_json(const Certificate& c) {
  Json j;
  j["statement"] = c.statement;
  j["holds"] = c.holds;
  j["field_caveat"] = c.field_caveat;
  j["checks"] = Json::array();
  for (const auto& ch : c.checks) j["checks"].push_back(to_json(ch));
  return j;
}

inline Json to_json(const FunctionalKind& k) {
  Json j;
  j["functional"] = to_string(k.functional);
  if (k.p) {
    j["p"] = Json::array();
    for (const auto& x : k.p->entries()) j["p"].push_back(rational_text(x));
  }
  return j;
}

inline Json to_json(const InequalityVerdict& v) {
  return {{"licensed", true},
          {"value", rational_text(v.value)},
          {"bound", rational_text(v.bound)},
          {"holds", v.holds},
          {"tight", v.tight},
          {"licensing", to_json(v.licensing)},
          {"field_caveat", v.field_caveat}};
}

inline Json element_json(std::size_t x) { return Json(x); }
template <ExactScalar S>
Json element_json(const Vector<S>& v) {
  return to_json(v);
}

inline Json rationals_json(const std::vector<BigRational>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(rational_text(x));
  return j;
}

template <class System>
Json to_json(const FillUpStep<System>& s) {
  Json j;
  j["index"] = s.index + 1;
  j["block"] = s.block ? Json(*s.block + 1) : Json(nullptr);
  j["x"] = element_json(s.x);
  j["replacements"] = Json::array();
  for (const auto& t : s.replacements) j["replacements"].push_back(tuple_json(t));
  j["omega_before"] = rationals_json(s.omega_before);
  j["omega_after"] = rationals_json(s.omega_after);
  j["phi_before"] = integer_text(s.phi_before);
  j["phi_after"] = integer_text(s.phi_after);
  return j;
}

/// Steps are included only when `with_steps` is set.
template <class System>
Json to_json(const SaturationTrace<System>& t, bool with_steps) {
  Json j;
  j["flavor"] = to_string(t.flavor);
  j["tracked"] = Json::array();
  for (const auto& k : t.tracked) j["tracked"].push_back(to_json(k));
  j["step_count"] = t.steps.size();
  j["omega"] = rationals_json(t.omega_initial);
  j["phi_initial"] = integer_text(t.phi_initial);
  j["phi_final"] = integer_text(t.steps.empty() ? t.phi_initial : t.steps.back().phi_after);
  j["phi_bound"] = integer_text(t.phi_bound);
  if (with_steps) {
    j["steps"] = Json::array();
    for (const auto& s : t.steps) j["steps"].push_back(to_json(s));
  }
  j["final_system"] = to_json(t.final_system);
  return j;
}

inline Json to_json(const FullSystemCertificate& c) {
  Json j;
  j["flavor"] = to_string(c.flavor);
  j["functional"] = to_json(c.functional);
  j["classes"] = Json::array();
  for (const auto& tc : c.classes) {
    Json members = Json::array();
    for (auto m : tc.members) members.push_back(m + 1);
    j["classes"].push_back({{"type", tc.type},
                            {"count", tc.members.size()},
                            {"bound", integer_text(tc.bound)},
                            {"term", rational_text(tc.term)},
                            {"holds", tc.holds},
                            {"members", members}});
  }
  j["classes_hold"] = c.classes_hold;
  j["omega"] = rational_text(c.omega);
  j["class_bound_sum"] = rational_text(c.class_bound_sum);
  j["bound"] = rational_text(c.bound);
  j["holds"] = c.holds;
  j["field_caveat"] = c.field_caveat;
  return j;
}

inline Json to_json(const SearchResult& r) {
  Json j;
  j["best_value"] = rational_text(r.best_value);
  j["exhaustive"] = r.exhaustive;
  j["nodes"] = r.nodes;
  j["bound"] = r.bound ? Json(rational_text(*r.bound)) : Json(nullptr);
  j["exceeds_bound"] = r.exceeds_bound;
  j["weight_pruned"] = r.weight_pruned;
  j["field_caveat"] = r.field_caveat;
  j["witness"] = to_json(r.witness);
  return j;
}

}  // namespace bollobas
