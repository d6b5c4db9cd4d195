// JSON forms of formulas, models, derivations and problem bundles.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "lambek/derivation.hpp"
#include "lambek/semantics.hpp"
#include "lambek/syntax.hpp"

namespace lambek {

using Json = nlohmann::json;

struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Formula ASTs: {"k": tag, "l": .., "r": ..} / {"k": tag, "a": ..} / {"k":"atom","name":..}
// ---------------------------------------------------------------------------

inline Json to_json(const ModalFormula& f) {
  switch (f.kind()) {
    case MKind::Atom: return {{"k", "atom"}, {"name", f.name()}};
    case MKind::Bottom: return {{"k", "bot"}};
    case MKind::And: return {{"k", "and"}, {"l", to_json(f.left())}, {"r", to_json(f.right())}};
    case MKind::Or: return {{"k", "or"}, {"l", to_json(f.left())}, {"r", to_json(f.right())}};
    case MKind::Implies: return {{"k", "imp"}, {"l", to_json(f.left())}, {"r", to_json(f.right())}};
    case MKind::Not: return {{"k", "not"}, {"a", to_json(f.child())}};
    case MKind::Diamond: return {{"k", "dia"}, {"a", to_json(f.child())}};
  }
  return nullptr;
}

inline Json to_json(const LFormula& f) {
  auto bin = [&](const char* k) { return Json{{"k", k}, {"l", to_json(f.left())}, {"r", to_json(f.right())}}; };
  auto un = [&](const char* k) { return Json{{"k", k}, {"a", to_json(f.child())}}; };
  switch (f.conn()) {
    case Conn::Atom: return {{"k", "atom"}, {"name", f.name()}};
    case Conn::Fresh:
      if (f.tag() == FreshTag::BotMark) return {{"k", "p_bot"}};
      if (f.tag() == FreshTag::TopMark) return {{"k", "p_top"}};
      return {{"k", "fresh"}, {"a", to_json(f.payload())}};
    case Conn::Bottom: return {{"k", "bot"}};
    case Conn::Top: return {{"k", "top"}};
    case Conn::Unit: return {{"k", "one"}};
    case Conn::And: return bin("and");
    case Conn::Or: return bin("or");
    case Conn::Prod: return bin("prod");
    case Conn::Under: return bin("under");
    case Conn::Over: return bin("over");
    case Conn::Not: return un("not");
    case Conn::Dia: return un("dia");
    case Conn::BoxDown: return un("boxdown");
  }
  return nullptr;
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string tag_of(const Json& j) {
  const auto& k = field(j, "k");
  if (!k.is_string()) throw JsonError("field 'k' must be a string");
  return k.get<std::string>();
}

}  // namespace detail

inline ModalFormula modal_from_json(const Json& j) {
  const auto k = detail::tag_of(j);
  auto sub = [&](const char* key) { return modal_from_json(detail::field(j, key)); };
  if (k == "atom") return ModalFormula::atom(detail::field(j, "name").get<std::string>());
  if (k == "bot") return ModalFormula::bottom();
  if (k == "and") return ModalFormula::conj(sub("l"), sub("r"));
  if (k == "or") return ModalFormula::disj(sub("l"), sub("r"));
  if (k == "imp") return ModalFormula::implies(sub("l"), sub("r"));
  if (k == "not") return ModalFormula::neg(sub("a"));
  if (k == "dia") return ModalFormula::diamond(sub("a"));
  if (k == "box") return ModalFormula::box(sub("a"));
  throw JsonError("unknown modal node '" + k + "'");
}

inline LFormula lambek_from_json(const Json& j) {
  const auto k = detail::tag_of(j);
  auto sub = [&](const char* key) { return lambek_from_json(detail::field(j, key)); };
  if (k == "atom") return LFormula::atom(detail::field(j, "name").get<std::string>());
  if (k == "fresh") return LFormula::fresh_neg(sub("a"));
  if (k == "p_bot") return LFormula::p_bot();
  if (k == "p_top") return LFormula::p_top();
  if (k == "bot") return LFormula::bottom();
  if (k == "top") return LFormula::top();
  if (k == "one") return LFormula::unit();
  if (k == "and") return LFormula::conj(sub("l"), sub("r"));
  if (k == "or") return LFormula::disj(sub("l"), sub("r"));
  if (k == "prod") return LFormula::prod(sub("l"), sub("r"));
  if (k == "under") return LFormula::under(sub("l"), sub("r"));
  if (k == "over") return LFormula::over(sub("l"), sub("r"));
  if (k == "not") return LFormula::neg(sub("a"));
  if (k == "dia") return LFormula::dia(sub("a"));
  if (k == "boxdown") return LFormula::boxdown(sub("a"));
  throw JsonError("unknown formula node '" + k + "'");
}

// ---------------------------------------------------------------------------
// Models: {"states":[..], "rel":[[u,v]..] | [[u,v,w]..], "val":{"p":[..]}, "unit":"e"?}
// Ternary models that interpret modalities carry the binary relation as "rel2".
// ---------------------------------------------------------------------------

namespace detail {

inline Json named_pairs(const std::vector<std::string>& st, const std::vector<std::pair<int, int>>& rel) {
  Json out = Json::array();
  for (auto [a, b] : rel) out.push_back({st[static_cast<std::size_t>(a)], st[static_cast<std::size_t>(b)]});
  return out;
}

inline Json named_val(const std::vector<std::string>& st, const std::map<std::string, std::vector<int>>& val) {
  Json out = Json::object();
  for (const auto& [p, ws] : val) {
    Json a = Json::array();
    for (int w : ws) a.push_back(st[static_cast<std::size_t>(w)]);
    out[p] = a;
  }
  return out;
}

inline std::vector<std::string> read_states(const Json& j) {
  const auto& s = field(j, "states");
  if (!s.is_array()) throw JsonError("'states' must be an array");
  std::vector<std::string> out;
  for (const auto& x : s) {
    if (!x.is_string()) throw JsonError("state names must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline int state_index(const std::vector<std::string>& st, const Json& x) {
  if (!x.is_string()) throw JsonError("state references must be strings");
  const auto name = x.get<std::string>();
  for (std::size_t i = 0; i < st.size(); ++i)
    if (st[i] == name) return static_cast<int>(i);
  throw JsonError("dangling state '" + name + "'");
}

inline std::vector<std::vector<int>> read_tuples(const std::vector<std::string>& st, const Json& rel, std::size_t arity) {
  if (!rel.is_array()) throw JsonError("relation must be an array");
  std::vector<std::vector<int>> out;
  for (const auto& t : rel) {
    if (!t.is_array() || t.size() != arity)
      throw JsonError("relation entries must have " + std::to_string(arity) + " states");
    std::vector<int> row;
    for (const auto& x : t) row.push_back(state_index(st, x));
    out.push_back(std::move(row));
  }
  return out;
}

inline std::map<std::string, std::vector<int>> read_val(const std::vector<std::string>& st, const Json& j) {
  std::map<std::string, std::vector<int>> out;
  if (!j.contains("val")) return out;
  const auto& v = j.at("val");
  if (!v.is_object()) throw JsonError("'val' must be an object");
  for (const auto& [p, ws] : v.items()) {
    if (!ws.is_array()) throw JsonError("valuation of '" + p + "' must be an array");
    auto& dst = out[p];
    for (const auto& x : ws) dst.push_back(state_index(st, x));
  }
  return out;
}

}  // namespace detail

inline Json to_json(const KripkeModel& m) {
  return {{"states", m.states}, {"rel", detail::named_pairs(m.states, m.rel)}, {"val", detail::named_val(m.states, m.val)}};
}

inline Json to_json(const TernaryModel& m) {
  Json rel = Json::array();
  for (const auto& t : m.rel3)
    rel.push_back({m.states[static_cast<std::size_t>(t[0])], m.states[static_cast<std::size_t>(t[1])],
                   m.states[static_cast<std::size_t>(t[2])]});
  Json out{{"states", m.states}, {"rel", rel}, {"val", detail::named_val(m.states, m.val)}};
  if (m.unit) out["unit"] = m.states[static_cast<std::size_t>(*m.unit)];
  if (m.rel2) out["rel2"] = detail::named_pairs(m.states, *m.rel2);
  return out;
}

inline KripkeModel kripke_from_json(const Json& j) {
  KripkeModel m;
  m.states = detail::read_states(j);
  for (const auto& t : detail::read_tuples(m.states, detail::field(j, "rel"), 2)) m.rel.emplace_back(t[0], t[1]);
  m.val = detail::read_val(m.states, j);
  m.validate();
  return m;
}

inline TernaryModel ternary_from_json(const Json& j) {
  TernaryModel m;
  m.states = detail::read_states(j);
  for (const auto& t : detail::read_tuples(m.states, detail::field(j, "rel"), 3)) m.rel3.push_back({t[0], t[1], t[2]});
  m.val = detail::read_val(m.states, j);
  if (j.contains("unit")) m.unit = detail::state_index(m.states, j.at("unit"));
  if (j.contains("rel2")) {
    std::vector<std::pair<int, int>> r;
    for (const auto& t : detail::read_tuples(m.states, j.at("rel2"), 2)) r.emplace_back(t[0], t[1]);
    m.rel2 = std::move(r);
  }
  m.validate();
  return m;
}

/// True when the "rel" entries are triples; an empty relation counts as binary.
inline bool is_ternary_json(const Json& j) {
  const auto& rel = detail::field(j, "rel");
  return rel.is_array() && !rel.empty() && rel.front().is_array() && rel.front().size() == 3;
}

// ---------------------------------------------------------------------------
// Derivations: {"seq": "...", "rule": "...", "premises": [...], "inst": {...}}
// ---------------------------------------------------------------------------

inline Json to_json(const Instantiation& i) {
  Json out = Json::object();
  if (i.path) {
    Json p = Json::array();
    for (auto b : *i.path) p.push_back(static_cast<int>(b));
    out["path"] = p;
  }
  if (i.formula) out["formula"] = render(*i.formula);
  if (i.choice != 0) out["choice"] = i.choice;
  return out;
}

inline Json to_json(const Derivation& d) {
  Json prem = Json::array();
  for (const auto& p : d->premises) prem.push_back(to_json(p));
  return {{"seq", render(d->conclusion)}, {"rule", rule_name(d->rule)}, {"premises", prem}, {"inst", to_json(d->inst)}};
}

inline Instantiation instantiation_from_json(const Json& j) {
  Instantiation i;
  if (j.is_null()) return i;
  if (!j.is_object()) throw JsonError("'inst' must be an object");
  if (j.contains("path")) {
    Path p;
    for (const auto& b : j.at("path")) {
      const int v = b.get<int>();
      if (v != 0 && v != 1) throw JsonError("path steps are 0 or 1");
      p.push_back(static_cast<std::uint8_t>(v));
    }
    i.path = std::move(p);
  }
  if (j.contains("formula")) i.formula = parse_lambek(j.at("formula").get<std::string>());
  if (j.contains("choice")) i.choice = j.at("choice").get<int>();
  return i;
}

inline Derivation derivation_from_json(const Json& j) {
  const auto seq = parse_sequent(detail::field(j, "seq").get<std::string>());
  Rule rule;
  try {
    rule = rule_from_name(detail::field(j, "rule").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw JsonError(e.what());
  }
  std::vector<Derivation> prem;
  if (j.contains("premises"))
    for (const auto& p : j.at("premises")) prem.push_back(derivation_from_json(p));
  return make_node(seq, rule, std::move(prem), instantiation_from_json(j.contains("inst") ? j.at("inst") : Json()));
}

// ---------------------------------------------------------------------------
// Problem bundles
// ---------------------------------------------------------------------------

struct ProblemBundle {
  std::string system;
  Sequent goal;
  std::vector<Sequent> assumptions;
  std::vector<std::string> provenance;  // translations applied, in order
};

inline Json to_json(const ProblemBundle& b) {
  Json as = Json::array();
  for (const auto& s : b.assumptions) as.push_back(render(s));
  return {{"system", b.system}, {"goal", render(b.goal)}, {"assumptions", as}, {"provenance", b.provenance}};
}

inline ProblemBundle bundle_from_json(const Json& j) {
  ProblemBundle b;
  b.system = detail::field(j, "system").get<std::string>();
  b.goal = parse_sequent(detail::field(j, "goal").get<std::string>());
  if (j.contains("assumptions"))
    for (const auto& s : j.at("assumptions")) b.assumptions.push_back(parse_sequent(s.get<std::string>()));
  if (j.contains("provenance")) b.provenance = j.at("provenance").get<std::vector<std::string>>();
  return b;
}

}  // namespace lambek
