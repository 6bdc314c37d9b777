#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>

#include "atrig/assignment.h"
#include "atrig/depgraph.h"

namespace atrig {

// Substitution weight between two universal POS tags.
class PosCostTable {
 public:
  explicit PosCostTable(double default_cost = 1.0);

  // Equal tags 0.3; both in one of {NOUN,PROPN,PRON}, {VERB,AUX}, {ADJ,ADV}
  // 0.5; anything else 1.0.
  static PosCostTable defaults();

  // `UPOS_A<TAB>UPOS_B<TAB>cost` lines plus one `DEFAULT<TAB>cost` line.
  static PosCostTable load(const std::filesystem::path& path);

  // Stores both orientations. Throws ConfigError on a cost outside [0,1].
  void set(const std::string& a, const std::string& b, double cost);
  double cost(const std::string& a, const std::string& b) const;
  double default_cost() const { return default_cost_; }

  // Throws ConfigError if some tag is cheaper to replace than to keep.
  void validate() const;

 private:
  std::map<std::pair<std::string, std::string>, double> entries_;
  double default_cost_;
};

struct GedConfig {
  PosCostTable pos_costs = PosCostTable::defaults();
  double edge_weight = 0.5;    // per differing incident relation (w_e)
  double deletion_cost = 1.0;  // per deleted or inserted node
};

double node_cost(const Token& u, const Token& v, const PosCostTable& table);

double incident_edge_cost(const std::map<std::string, std::size_t>& u_relations,
                          const std::map<std::string, std::size_t>& v_relations,
                          double edge_weight);

// (n+m) x (n+m) bipartite edit matrix for question (n nodes) vs answer
// (m nodes): substitutions top-left, deletions on the top-right diagonal,
// insertions on the bottom-left diagonal, zeros bottom-right.
CostMatrix build_cost_matrix(const DependencyGraph& question, const DependencyGraph& answer,
                             const GedConfig& cfg);

// Assignment cost normalised by the cost of deleting every question node and
// inserting every answer node; always in [0,1].
double graph_edit_distance(const DependencyGraph& question, const DependencyGraph& answer,
                           const GedConfig& cfg);

}  // namespace atrig
