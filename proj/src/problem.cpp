#include "fixprov/problem.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fixprov {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& pointer, const std::string& msg) {
  throw Error(ErrorCode::SchemaError, (pointer.empty() ? "/" : pointer) + ": " + msg);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what());
  }
}

std::string value_text(const json& v, const std::string& pointer) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  schema(pointer, "value must be a string, an integer or a Boolean");
}

template <class F>
auto at_pointer(const std::string& pointer, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    schema(pointer, e.what());
  }
}

struct Annotation {
  GroundLiteral literal;
  std::string text;
  std::string pointer;
};

}  // namespace

Problem parse_problem(std::string_view json_text, std::optional<std::string> carrier_override) {
  json doc = parse_json(json_text);
  if (!doc.is_object()) schema("", "problem must be a JSON object");
  static const std::set<std::string> known{"universe", "relations", "carrier", "tokens", "most_general",
                                           "annotations", "default_pos", "default_neg", "formula"};
  for (const auto& [key, v] : doc.items()) {
    if (!known.count(key)) schema("/" + key, "unknown member");
  }

  if (!doc.contains("universe") || !doc["universe"].is_array()) schema("/universe", "array of element names required");
  std::vector<std::string> elems;
  for (std::size_t i = 0; i < doc["universe"].size(); ++i) {
    const auto& e = doc["universe"][i];
    if (!e.is_string()) schema("/universe/" + std::to_string(i), "element name must be a string");
    elems.push_back(e.get<std::string>());
  }
  Universe universe = at_pointer("/universe", [&] { return Universe(elems); });

  if (!doc.contains("relations") || !doc["relations"].is_object()) schema("/relations", "object name -> arity required");
  Vocabulary vocab;
  for (const auto& [name, a] : doc["relations"].items()) {
    if (!a.is_number_integer() || a.get<int>() < 1) schema("/relations/" + name, "arity must be a positive integer");
    vocab.add(name, a.get<int>());
  }

  std::string carrier;
  if (carrier_override) {
    carrier = *carrier_override;
  } else {
    if (!doc.contains("carrier") || !doc["carrier"].is_string()) schema("/carrier", "carrier name required");
    carrier = doc["carrier"].get<std::string>();
  }

  std::vector<std::string> tokens;
  if (doc.contains("tokens")) {
    if (!doc["tokens"].is_array()) schema("/tokens", "array of token names required");
    for (std::size_t i = 0; i < doc["tokens"].size(); ++i) {
      const auto& t = doc["tokens"][i];
      if (!t.is_string()) schema("/tokens/" + std::to_string(i), "token name must be a string");
      tokens.push_back(t.get<std::string>());
    }
  }

  bool most_general = false;
  if (doc.contains("most_general")) {
    if (!doc["most_general"].is_boolean()) schema("/most_general", "Boolean required");
    most_general = doc["most_general"].get<bool>();
  }

  std::vector<Annotation> annotations;
  std::set<GroundLiteral> seen;
  if (doc.contains("annotations")) {
    const auto& arr = doc["annotations"];
    if (!arr.is_array()) schema("/annotations", "array of [literal, value] pairs required");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string ptr = "/annotations/" + std::to_string(i);
      const auto& entry = arr[i];
      json lit_j, val_j;
      if (entry.is_array() && entry.size() == 2) {
        lit_j = entry[0];
        val_j = entry[1];
      } else if (entry.is_object() && entry.contains("literal") && entry.contains("value") && entry.size() == 2) {
        lit_j = entry["literal"];
        val_j = entry["value"];
      } else {
        schema(ptr, "expected [literal, value] or {\"literal\": ..., \"value\": ...}");
      }
      if (!lit_j.is_string()) schema(ptr + "/0", "literal must be a string");
      GroundLiteral lit = at_pointer(ptr + "/0", [&] { return parse_literal(lit_j.get<std::string>(), vocab, universe); });
      if (!seen.insert(lit).second) schema(ptr, "duplicate annotation for " + to_string(lit, universe));
      annotations.push_back({lit, value_text(val_j, ptr + "/1"), ptr + "/1"});
    }
  }

  // fresh token pairs for atoms nobody annotated
  std::vector<GroundAtom> fresh;
  if (most_general) {
    if (carrier != "sorpdual") schema("/most_general", "most general interpretations live in sorpdual");
    std::set<GroundAtom> touched;
    for (const auto& a : annotations) touched.insert(a.literal.atom);
    for (const auto& atom : ground_atoms(vocab, universe)) {
      if (!touched.count(atom)) {
        fresh.push_back(atom);
        tokens.push_back(literal_token_name(atom, universe));
      }
    }
  }

  std::shared_ptr<const TokenSet> token_set;
  if (carrier == "sorpdual") {
    token_set = at_pointer("/tokens", [&] { return std::make_shared<const TokenSet>(TokenSet::dual(tokens)); });
  } else {
    token_set = at_pointer("/tokens", [&] { return std::make_shared<const TokenSet>(TokenSet(tokens)); });
  }
  Semiring k = at_pointer("/carrier", [&] { return Semiring::from_name(carrier, token_set); });

  auto parse_value = [&](const std::string& text, const std::string& ptr) {
    return at_pointer(ptr, [&] { return k.parse(text); });
  };
  std::optional<Value> dpos, dneg;
  if (doc.contains("default_pos")) dpos = parse_value(value_text(doc["default_pos"], "/default_pos"), "/default_pos");
  if (doc.contains("default_neg")) dneg = parse_value(value_text(doc["default_neg"], "/default_neg"), "/default_neg");

  Interpretation pi(k, universe, vocab, dpos.value_or(k.zero()), dneg.value_or(k.zero()));
  std::set<GroundLiteral> covered;
  for (const auto& a : annotations) {
    pi.set(a.literal, parse_value(a.text, a.pointer));
    covered.insert(a.literal);
  }

  if (most_general) {
    for (const auto& atom : fresh) {
      TokenId x = token_set->id(literal_token_name(atom, universe));
      pi.set({atom, true}, k.from_token(x));
      pi.set({atom, false}, k.from_token(*token_set->partner(x)));
      covered.insert({atom, true});
      covered.insert({atom, false});
    }
    for (const auto& a : annotations) {
      GroundLiteral other{a.literal.atom, !a.literal.positive};
      if (covered.count(other)) continue;
      const auto& p = pi.value(a.literal).as<SorpPoly>();
      Value complement = k.zero();
      if (p.is_zero()) {
        complement = k.one();
      } else if (p.is_one()) {
        complement = k.zero();
      } else if (p.monomials().size() == 1 && p.monomials()[0].size() == 1 &&
                 p.monomials()[0].entries()[0].second == Exponent(1)) {
        complement = k.from_token(*token_set->partner(p.monomials()[0].entries()[0].first));
      } else {
        schema(a.pointer, "cannot derive the value of " + to_string(other, universe) + " from '" + a.text + "'");
      }
      pi.set(other, complement);
      covered.insert(other);
    }
  }

  for (const auto& atom : ground_atoms(vocab, universe)) {
    for (bool pos : {true, false}) {
      GroundLiteral lit{atom, pos};
      if (covered.count(lit)) continue;
      if ((pos && !dpos) || (!pos && !dneg)) {
        schema("/annotations", "no value for " + to_string(lit, universe) + " and no " +
                                   (pos ? "default_pos" : "default_neg"));
      }
    }
  }

  std::optional<std::string> formula;
  if (doc.contains("formula")) {
    if (!doc["formula"].is_string()) schema("/formula", "formula must be a string");
    formula = doc["formula"].get<std::string>();
  }
  return Problem{std::move(pi), std::move(formula)};
}

Problem load_problem(const std::string& path, std::optional<std::string> carrier_override) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), std::move(carrier_override));
}

Semiring specialization_target(std::string_view name, const Semiring& source) {
  static const std::set<std::string_view> token_carriers{"posbool", "why", "natpoly", "sorp", "sorpdual"};
  if (token_carriers.count(name)) return Semiring::from_name(name, source.tokens());
  return Semiring::from_name(name);
}

TokenAssignment parse_assignment(std::string_view json_text, const Semiring& source, const Semiring& target) {
  json doc = parse_json(json_text);
  if (!doc.is_object()) schema("", "assignment must be an object token -> value");
  const TokenSet& ts = source.token_set();
  for (const auto& [key, v] : doc.items()) {
    if (key != "*" && !ts.find(key)) schema("/" + key, "unknown token");
  }
  TokenAssignment h;
  for (TokenId t = 0; t < ts.size(); ++t) {
    const std::string& name = ts.name(t);
    std::string key = doc.contains(name) ? name : "*";
    if (!doc.contains(key)) schema("/" + name, "no value for token " + name);
    h.push_back(at_pointer("/" + key, [&] { return target.parse(value_text(doc[key], "/" + key)); }));
  }
  return h;
}

}  // namespace fixprov
