#include "atrig/ged.h"

#include <algorithm>
#include <array>
#include <optional>
#include <tuple>
#include <vector>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "atrig/error.h"

namespace atrig {

namespace {

constexpr std::array<const char*, 17> kUniversalTags = {
    "ADJ", "ADP", "ADV",  "AUX",   "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

int tag_class(const std::string& tag) {
  if (tag == "NOUN" || tag == "PROPN" || tag == "PRON") return 0;
  if (tag == "VERB" || tag == "AUX") return 1;
  if (tag == "ADJ" || tag == "ADV") return 2;
  return -1;
}

}  // namespace

PosCostTable::PosCostTable(double default_cost) : default_cost_(default_cost) {
  if (!(default_cost >= 0.0 && default_cost <= 1.0))
    throw ConfigError(fmt::format("default POS cost {} outside [0,1]", default_cost));
}

PosCostTable PosCostTable::defaults() {
  PosCostTable table(1.0);
  for (const char* a : kUniversalTags) {
    for (const char* b : kUniversalTags) {
      const std::string sa = a, sb = b;
      if (sa == sb) {
        table.set(sa, sb, 0.3);
      } else if (tag_class(sa) >= 0 && tag_class(sa) == tag_class(sb)) {
        table.set(sa, sb, 0.5);
      }
    }
  }
  return table;
}

PosCostTable PosCostTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::optional<double> fallback;
  std::vector<std::tuple<std::string, std::string, double, std::size_t>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto cols = split_tsv_line(line);
    if (cols.size() == 1 && cols[0].empty()) continue;
    auto parse_cost = [&](const std::string& s) {
      std::istringstream ss(s);
      double v = 0;
      ss >> v;
      if (ss.fail() || !ss.eof())
        throw IngestError(fmt::format("{}:{}: bad cost '{}'", path.string(), line_no, s));
      return v;
    };
    if (cols.size() == 2 && cols[0] == "DEFAULT") {
      fallback = parse_cost(cols[1]);
    } else if (cols.size() == 3) {
      rows.emplace_back(cols[0], cols[1], parse_cost(cols[2]), line_no);
    } else {
      throw IngestError(fmt::format("{}:{}: expected 'A<TAB>B<TAB>cost' or 'DEFAULT<TAB>cost'",
                                    path.string(), line_no));
    }
  }
  if (!fallback) throw IngestError(fmt::format("{}: missing DEFAULT line", path.string()));
  PosCostTable table(*fallback);
  for (const auto& [a, b, cost, at] : rows) {
    auto existing = table.entries_.find({a, b});
    if (existing != table.entries_.end() && existing->second != cost) {
      throw ConfigError(fmt::format("{}:{}: cost for {}/{} contradicts an earlier line",
                                    path.string(), at, a, b));
    }
    table.set(a, b, cost);
  }
  table.validate();
  return table;
}

void PosCostTable::set(const std::string& a, const std::string& b, double cost) {
  if (!(cost >= 0.0 && cost <= 1.0))
    throw ConfigError(fmt::format("POS cost {} for {}/{} outside [0,1]", cost, a, b));
  entries_[{a, b}] = cost;
  entries_[{b, a}] = cost;
}

double PosCostTable::cost(const std::string& a, const std::string& b) const {
  auto it = entries_.find({a, b});
  return it == entries_.end() ? default_cost_ : it->second;
}

void PosCostTable::validate() const {
  for (const auto& [key, value] : entries_) {
    const auto& [a, b] = key;
    if (a == b) continue;
    if (cost(a, a) > value || cost(b, b) > value) {
      throw ConfigError(fmt::format("POS cost table: keeping {} or {} costs more than swapping them", a, b));
    }
  }
}

double node_cost(const Token& u, const Token& v, const PosCostTable& table) {
  if (to_lower(u.lemma) == to_lower(v.lemma)) return 0.0;
  return table.cost(u.upos, v.upos);
}

double incident_edge_cost(const std::map<std::string, std::size_t>& u_relations,
                          const std::map<std::string, std::size_t>& v_relations,
                          double edge_weight) {
  std::size_t diff = 0;
  auto a = u_relations.begin();
  auto b = v_relations.begin();
  while (a != u_relations.end() || b != v_relations.end()) {
    if (b == v_relations.end() || (a != u_relations.end() && a->first < b->first)) {
      diff += a->second;
      ++a;
    } else if (a == u_relations.end() || b->first < a->first) {
      diff += b->second;
      ++b;
    } else {
      diff += a->second > b->second ? a->second - b->second : b->second - a->second;
      ++a;
      ++b;
    }
  }
  return edge_weight * static_cast<double>(diff) / 2.0;
}

namespace {

struct EditCosts {
  CostMatrix matrix;
  double denominator = 0.0;  // delete every question node + insert every answer node
};

EditCosts edit_costs(const DependencyGraph& q, const DependencyGraph& a, const GedConfig& cfg) {
  if (cfg.edge_weight < 0 || cfg.deletion_cost < 0)
    throw ConfigError("edit costs must be non-negative");
  const std::size_t n = q.size(), m = a.size();
  EditCosts out{CostMatrix(n + m, CostMatrix::kForbidden), 0.0};
  auto& c = out.matrix;

  std::vector<std::map<std::string, std::size_t>> q_rel(n), a_rel(m);
  for (std::size_t i = 0; i < n; ++i) q_rel[i] = incident_relations(q, i);
  for (std::size_t j = 0; j < m; ++j) a_rel[j] = incident_relations(a, j);
  const auto q_deg = degrees(q);
  const auto a_deg = degrees(a);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      c(i, j) = node_cost(q.nodes[i], a.nodes[j], cfg.pos_costs) +
                incident_edge_cost(q_rel[i], a_rel[j], cfg.edge_weight);
  for (std::size_t i = 0; i < n; ++i) {
    const double del = cfg.deletion_cost + cfg.edge_weight * static_cast<double>(q_deg[i]);
    c(i, m + i) = del;
    out.denominator += del;
  }
  for (std::size_t j = 0; j < m; ++j) {
    const double ins = cfg.deletion_cost + cfg.edge_weight * static_cast<double>(a_deg[j]);
    c(n + j, j) = ins;
    out.denominator += ins;
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) c(n + j, m + i) = 0.0;
  return out;
}

}  // namespace

CostMatrix build_cost_matrix(const DependencyGraph& question, const DependencyGraph& answer,
                             const GedConfig& cfg) {
  return edit_costs(question, answer, cfg).matrix;
}

double graph_edit_distance(const DependencyGraph& question, const DependencyGraph& answer,
                           const GedConfig& cfg) {
  auto costs = edit_costs(question, answer, cfg);
  if (costs.matrix.size() == 0 || costs.denominator <= 0.0) return 0.0;
  const double total = solve_assignment(costs.matrix).total_cost;
  return std::clamp(total / costs.denominator, 0.0, 1.0);
}

}  // namespace atrig
