#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pedcmp {

enum class Gender : uint8_t { Male = 1, Female = 2 };

inline Gender opposite(Gender g) {
  return g == Gender::Male ? Gender::Female : Gender::Male;
}

// One input record: `id father mother sex label`, with "0" meaning
// no parent / no label and sex coded 1 = male, 2 = female.
struct PedRecord {
  std::string id;
  std::string father;  // "0" if founder
  std::string mother;  // "0" if founder
  int sex = 0;
  uint64_t label = 0;  // 0 = unlabeled
};

enum class PedigreeErrorCode {
  BadRecord,
  DuplicateId,
  DanglingEdge,
  BadInDegree,
  SameGenderParents,
  DuplicateLabel,
  CycleDetected,
};

class PedigreeError : public std::runtime_error {
 public:
  PedigreeError(PedigreeErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  PedigreeErrorCode code() const { return code_; }

 private:
  PedigreeErrorCode code_;
};

// A validated pedigree: a gendered DAG in which every individual has either
// zero or two parents, the two parents of an individual have opposite
// genders, and labels (where present) are distinct positive integers.
// Individuals are stored densely; external string ids map to indices.
// Instances are immutable once built and safe to share across threads.
class Pedigree {
 public:
  Pedigree() = default;

  // Checks all structural conditions and throws PedigreeError naming the
  // first violated one. Parent references may point forward in the record
  // list. Father/mother columns may appear in either gender order; they are
  // normalized so father() is always the male parent.
  static Pedigree validate(const std::vector<PedRecord>& records);

  int size() const { return static_cast<int>(ids_.size()); }
  int edge_count() const { return edge_count_; }

  const std::string& id(int v) const { return ids_[v]; }
  Gender gender(int v) const { return genders_[v]; }
  uint64_t label(int v) const { return labels_[v]; }
  int father(int v) const { return fathers_[v]; }  // -1 for founders
  int mother(int v) const { return mothers_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  int out_degree(int v) const { return out_degree_[v]; }

  bool is_founder(int v) const { return fathers_[v] < 0; }
  bool is_leaf(int v) const { return out_degree_[v] == 0; }

  std::optional<int> index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Edges as (parent, child) pairs; per child the father edge precedes the
  // mother edge, children in index order.
  std::vector<std::pair<int, int>> edges() const;

  // Indices of labeled individuals, ascending.
  std::vector<int> labeled_individuals() const;

  std::optional<int> individual_with_label(uint64_t label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<PedRecord> to_records() const;

 private:
  std::vector<std::string> ids_;
  std::vector<Gender> genders_;
  std::vector<uint64_t> labels_;
  std::vector<int> fathers_;
  std::vector<int> mothers_;
  std::vector<int> out_degree_;
  std::vector<std::vector<int>> children_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<uint64_t, int> by_label_;
  int edge_count_ = 0;
};

// Generation numbers per individual, 1-based. Disconnected pedigrees are
// numbered per weakly connected component, each starting at 1.
struct GenerationMap {
  std::vector<int> generation;
  int max_generation = 0;
};

// The unique generation assignment if the pedigree is generational
// (every edge spans consecutive generations), nullopt otherwise.
std::optional<GenerationMap> generation_map(const Pedigree& p);

// True iff no individual has more than one mate (co-parent).
bool is_monogamous(const Pedigree& p);

// Out-degree-zero individuals, ascending index order.
std::vector<int> leaf_individuals(const Pedigree& p);

// True iff the labeled set of p equals its leaf set, exactly.
bool is_leaf_labeled(const Pedigree& p);

// True iff both pedigrees are leaf-labeled, their label sets coincide, and
// equally labeled leaves have equal genders.
bool compatibly_leaf_labeled(const Pedigree& p, const Pedigree& q);

// Weaker condition used by the distance algorithms: labels shared between
// the two pedigrees must sit on individuals of equal gender. Shared labels
// force matching pairs; without this no matching exists at all.
bool labels_compatible(const Pedigree& p, const Pedigree& q);

// Sub-pedigree induced by the ancestors of labeled individuals (reverse DFS
// along child->parent edges). Idempotent; the empty pedigree if nothing is
// labeled.
Pedigree prune_to_labeled_ancestry(const Pedigree& p);

// Sub-pedigree induced by a vertex subset. Throws PedigreeError
// (BadInDegree) if some kept individual retains exactly one parent.
Pedigree sub_pedigree(const Pedigree& p, const std::vector<int>& individuals);

// Sub-pedigree induced by the endpoints of an edge subset.
Pedigree sub_pedigree_edges(const Pedigree& p,
                            const std::vector<std::pair<int, int>>& edges);

// Strict descendants of every individual (index -> sorted index list).
std::vector<std::vector<int>> descendant_splits(const Pedigree& p);

}  // namespace pedcmp
