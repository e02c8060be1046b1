#include "leff/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace leff {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw validation_error("SchemaError", what);
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) schema_error(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) schema_error(std::string(what) + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

int label_index(const std::vector<std::string>& labels, const std::string& name,
                const char* what) {
  auto it = std::find(labels.begin(), labels.end(), name);
  if (it == labels.end())
    schema_error(std::string(what) + ": unknown element \"" + name + "\"");
  return static_cast<int>(it - labels.begin());
}

}  // namespace

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw validation_error("ParseError", "input is not valid JSON");
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("ParseError", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

Json poset_to_json(const FinitePreorder& p) {
  if (p.is_powerset()) return Json{{"powerset", p.ground()}};
  Json out;
  out["elements"] = p.all_labels();
  Json pairs = Json::array();
  if (p.is_antisymmetric()) {
    for (auto [x, y] : hasse_cover(FinitePoset::require(p)))
      pairs.push_back(Json::array({p.label(x), p.label(y)}));
  } else {
    for (int x = 0; x < p.size(); ++x)
      for (int y = 0; y < p.size(); ++y)
        if (x != y && p.leq(x, y)) pairs.push_back(Json::array({p.label(x), p.label(y)}));
  }
  out["leq"] = std::move(pairs);
  return out;
}

PreorderPtr preorder_from_json(const Json& j) {
  if (!j.is_object()) schema_error("a poset must be a JSON object");
  if (j.contains("powerset"))
    return std::make_shared<FinitePoset>(
        FinitePoset::powerset(string_list(j.at("powerset"), "powerset ground")));
  if (j.contains("dual"))
    return std::make_shared<FinitePoset>(FinitePoset::dual_of(*preorder_from_json(j.at("dual"))));
  if (!j.contains("elements") || !j.contains("leq"))
    schema_error("a poset needs \"elements\" and \"leq\" (or \"powerset\"/\"dual\")");
  auto labels = string_list(j.at("elements"), "elements");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& pair : j.at("leq")) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
      schema_error("\"leq\" must hold [from, to] label pairs");
    pairs.emplace_back(label_index(labels, pair[0].get<std::string>(), "leq"),
                       label_index(labels, pair[1].get<std::string>(), "leq"));
  }
  return std::make_shared<FinitePreorder>(
      FinitePreorder::from_generators(std::move(labels), pairs));
}

PosetPtr poset_from_json(const Json& j) {
  PreorderPtr p = preorder_from_json(j);
  return std::make_shared<FinitePoset>(FinitePoset::require(*p));
}

Mask mask_from_json(const Json& j, const std::vector<std::string>& ground) {
  if (j.is_string()) {
    // Rendered subset labels: "∅" or "{A,B}".
    const std::string s = j.get<std::string>();
    if (s == "∅" || s == "{}") return 0;
    if (s.size() >= 2 && s.front() == '{' && s.back() == '}') {
      Mask m = 0;
      std::string body = s.substr(1, s.size() - 2);
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ','))
        m |= Mask{1} << label_index(ground, item, "subset");
      return m;
    }
    return Mask{1} << label_index(ground, s, "subset");
  }
  if (!j.is_array()) schema_error("a subset must be an array of node labels");
  Mask m = 0;
  for (const auto& item : j) {
    if (!item.is_string()) schema_error("a subset must contain only node labels");
    m |= Mask{1} << label_index(ground, item.get<std::string>(), "subset");
  }
  return m;
}

Json mask_to_json(Mask m, const std::vector<std::string>& ground) {
  Json out = Json::array();
  for (std::size_t i = 0; i < ground.size(); ++i)
    if (m >> i & 1u) out.push_back(ground[i]);
  return out;
}

Json element_to_json(const FinitePreorder& p, int x) {
  if (p.is_powerset()) return mask_to_json(static_cast<Mask>(x), p.ground());
  return Json(p.label(x));
}

int element_from_json(const FinitePreorder& p, const Json& j) {
  if (p.is_powerset()) return static_cast<int>(mask_from_json(j, p.ground()));
  if (!j.is_string()) schema_error("an element reference must be a label string");
  const std::string name = j.get<std::string>();
  for (int x = 0; x < p.size(); ++x)
    if (p.label(x) == name) return x;
  schema_error("unknown element \"" + name + "\"");
}

MonotoneMap map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("codomain") || !j.contains("map"))
    schema_error("a map needs \"domain\", \"codomain\" and \"map\"");
  PreorderPtr dom = preorder_from_json(j.at("domain"));
  PreorderPtr cod = preorder_from_json(j.at("codomain"));
  std::vector<int> table(dom->size(), -1);
  for (const auto& pair : j.at("map")) {
    if (!pair.is_array() || pair.size() != 2) schema_error("\"map\" must hold [from, to] pairs");
    const int from = element_from_json(*dom, pair[0]);
    const int to = element_from_json(*cod, pair[1]);
    if (table[from] >= 0 && table[from] != to)
      schema_error("\"map\" assigns " + dom->label(from) + " twice");
    table[from] = to;
  }
  for (int x = 0; x < dom->size(); ++x)
    if (table[x] < 0) schema_error("\"map\" misses element " + dom->label(x));
  return MonotoneMap::validate(std::move(dom), std::move(cod), std::move(table));
}

namespace {

std::pair<PosetPtr, std::vector<int>> self_map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("carrier") || !j.contains("map"))
    schema_error("an operator needs \"carrier\" and \"map\"");
  PosetPtr carrier = poset_from_json(j.at("carrier"));
  std::vector<int> table(carrier->size(), -1);
  for (const auto& pair : j.at("map")) {
    if (!pair.is_array() || pair.size() != 2) schema_error("\"map\" must hold [from, to] pairs");
    const int from = element_from_json(*carrier, pair[0]);
    const int to = element_from_json(*carrier, pair[1]);
    if (table[from] >= 0 && table[from] != to)
      schema_error("\"map\" assigns " + carrier->label(from) + " twice");
    table[from] = to;
  }
  for (int x = 0; x < carrier->size(); ++x)
    if (table[x] < 0) schema_error("\"map\" misses element " + carrier->label(x));
  return {std::move(carrier), std::move(table)};
}

}  // namespace

ClosureOperator closure_from_json(const Json& j) {
  auto [carrier, table] = self_map_from_json(j);
  return ClosureOperator::validate(std::move(carrier), std::move(table));
}

KernelOperator kernel_from_json(const Json& j) {
  auto [carrier, table] = self_map_from_json(j);
  return KernelOperator::validate(std::move(carrier), std::move(table));
}

Json closure_to_json(const ClosureOperator& c) {
  Json pairs = Json::array();
  for (int x = 0; x < c.carrier().size(); ++x)
    pairs.push_back(Json::array({element_to_json(c.carrier(), x),
                                 element_to_json(c.carrier(), c(x))}));
  return Json{{"carrier", poset_to_json(c.carrier())}, {"map", std::move(pairs)}};
}

Description description_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("nodes"))
    schema_error("a description needs \"nodes\"");
  auto nodes = string_list(j.at("nodes"), "nodes");

  if (j.contains("thresholds")) {
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) schema_error("\"edges\" must hold label pairs");
        edges.emplace_back(label_index(nodes, e[0].get<std::string>(), "edges"),
                           label_index(nodes, e[1].get<std::string>(), "edges"));
      }
    std::vector<int> thresholds(nodes.size(), 0);
    for (const auto& [key, value] : j.at("thresholds").items()) {
      if (!value.is_number_integer()) schema_error("thresholds must be integers");
      thresholds[label_index(nodes, key, "thresholds")] = value.get<int>();
    }
    return threshold_description(nodes, edges, thresholds);
  }

  std::vector<std::vector<Mask>> rules(nodes.size());
  if (j.contains("rules"))
    for (const auto& [key, value] : j.at("rules").items()) {
      const int node = label_index(nodes, key, "rules");
      for (const auto& subset : value) rules[node].push_back(mask_from_json(subset, nodes));
    }
  return Description::make(std::move(nodes), std::move(rules));
}

Json description_to_json(const Description& d) {
  Json rules = Json::object();
  for (int i = 0; i < d.width(); ++i) {
    Json per_node = Json::array();
    for (Mask m : d.rules[i]) per_node.push_back(mask_to_json(m, d.ground));
    rules[d.ground[i]] = std::move(per_node);
  }
  return Json{{"nodes", d.ground}, {"rules", std::move(rules)}};
}

TimedDescription timed_description_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("nodes"))
    schema_error("a timed description needs \"nodes\"");
  auto nodes = string_list(j.at("nodes"), "nodes");
  std::vector<std::vector<TimedRule>> rules(nodes.size());
  if (j.contains("rules"))
    for (const auto& [key, value] : j.at("rules").items()) {
      const int node = label_index(nodes, key, "rules");
      for (const auto& rule : value) {
        if (!rule.is_object() || !rule.contains("set") || !rule.contains("delay"))
          schema_error("timed rules need \"set\" and \"delay\"");
        rules[node].push_back(TimedRule{mask_from_json(rule.at("set"), nodes),
                                        rule.at("delay").get<int>()});
      }
    }
  return TimedDescription::make(std::move(nodes), std::move(rules));
}

Json timed_description_to_json(const TimedDescription& td) {
  Json rules = Json::object();
  for (int i = 0; i < td.width(); ++i) {
    Json per_node = Json::array();
    for (const TimedRule& r : td.rules[i])
      per_node.push_back(Json{{"set", mask_to_json(r.set, td.ground)}, {"delay", r.delay}});
    rules[td.ground[i]] = std::move(per_node);
  }
  return Json{{"nodes", td.ground}, {"rules", std::move(rules)}};
}

Veil veil_from_json(const Json& j) {
  if (!j.is_object()) schema_error("a veil must be a JSON object");
  if (!j.contains("type")) return Veil::validate(map_from_json(j));

  const std::string type = j.at("type").get<std::string>();
  if (type == "map") return Veil::validate(map_from_json(j));
  if (type == "contagion") return phenome_veil(string_list(j.at("nodes"), "nodes"));
  if (type == "forall_relation")
    return forall_relation_veil(string_list(j.at("a"), "a"), string_list(j.at("b"), "b"));
  if (type == "exists_relation")
    return exists_relation_veil(string_list(j.at("a"), "a"), string_list(j.at("b"), "b"));
  if (type == "behavior_projection")
    return behavior_projection_veil(string_list(j.at("s"), "s"),
                                    string_list(j.at("s_prime"), "s_prime"));
  if (type == "interdependence")
    return interdependence_veil(string_list(j.at("s"), "s"),
                                string_list(j.at("s_prime"), "s_prime"));
  if (type == "transitive_closure")
    return transitive_closure_veil(string_list(j.at("nodes"), "nodes"));
  if (type == "zoom_in") {
    if (j.contains("operator")) return zoom_in_veil(closure_from_json(j.at("operator")));
    if (!j.contains("description"))
      schema_error("zoom_in veils need a \"description\" or an \"operator\"");
    return zoom_in_veil(interpret(description_from_json(j.at("description"))));
  }
  schema_error("unknown veil type \"" + type + "\"");
}

Json witness_to_json(const Veil& v, const EffectWitness& w) {
  return Json{{"s", element_to_json(v.system(), w.s)},
              {"s_prime", element_to_json(v.system(), w.s_prime)},
              {"lhs", element_to_json(v.phenome(), w.lhs)},
              {"rhs", element_to_json(v.phenome(), w.rhs)}};
}

Json error_to_json(const validation_error& e) {
  Json violations = Json::array();
  for (const Violation& v : e.violations())
    violations.push_back(Json{{"kind", v.kind}, {"where", v.where}, {"detail", v.detail}});
  return Json{{"error", Json{{"kind", e.kind()},
                             {"message", e.what()},
                             {"violations", std::move(violations)}}}};
}

}  // namespace leff
